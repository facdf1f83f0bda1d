use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::FreeWord;

/// An element of the integral group ring of a free group: a finite integer
/// combination of reduced words. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(FreeWord::identity())
    }

    pub fn from_word(word: FreeWord) -> Self {
        Self::from_term(word, 1)
    }

    pub fn from_term(word: FreeWord, coefficient: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(word, coefficient);
        out
    }

    pub fn add_term(&mut self, word: FreeWord, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coefficient;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coefficient);
            }
        }
    }

    /// Terms in a fixed (word-ordered) sequence.
    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, word: &FreeWord) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The augmentation ε: sum of coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn scale(&self, factor: i64) -> Self {
        let mut out = Self::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), c * factor);
        }
        out
    }

    /// Left multiplication by a single word.
    pub fn left_mul_word(&self, word: &FreeWord) -> Self {
        let mut out = Self::zero();
        for (w, c) in self.terms() {
            out.add_term(word.multiply(w), c);
        }
        out
    }
}

pub fn augmentation(u: &GroupRingElement) -> i64 {
    u.augmentation()
}

impl From<FreeWord> for GroupRingElement {
    fn from(word: FreeWord) -> Self {
        Self::from_word(word)
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;

    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;

    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;

    fn neg(self) -> GroupRingElement {
        self.scale(-1)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;

    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in self.terms() {
            for (v, b) in rhs.terms() {
                out.add_term(u.multiply(v), a * b);
            }
        }
        out
    }
}
