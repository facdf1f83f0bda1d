use std::fmt;

use serde::{Deserialize, Serialize};

/// A freely reduced word in the generators of a free group, stored as
/// run-length syllables `(generator, exponent)`.
///
/// Adjacent syllables always carry distinct generators and no exponent is
/// zero. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeWord {
    syllables: Vec<(usize, i32)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(index: usize) -> Self {
        Self { syllables: vec![(index, 1)] }
    }

    pub fn power_of(index: usize, exponent: i32) -> Self {
        Self::from_syllables([(index, exponent)])
    }

    /// Builds a word from arbitrary syllables, freely reducing the result.
    pub fn from_syllables<I>(syllables: I) -> Self
    where
        I: IntoIterator<Item = (usize, i32)>,
    {
        let mut word = Self::identity();
        for (generator, exponent) in syllables {
            word.push(generator, exponent);
        }
        word
    }

    /// Builds a word from single letters `(generator, ±1)`.
    pub fn from_letters<I>(letters: I) -> Self
    where
        I: IntoIterator<Item = (usize, bool)>,
    {
        Self::from_syllables(
            letters
                .into_iter()
                .map(|(g, inverse)| (g, if inverse { -1 } else { 1 })),
        )
    }

    // Appends x_g^e, cancelling against the tail as needed.
    fn push(&mut self, generator: usize, exponent: i32) {
        if exponent == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((g, e)) if *g == generator => {
                *e += exponent;
                if *e == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((generator, exponent)),
        }
    }

    pub fn syllables(&self) -> &[(usize, i32)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn letter_len(&self) -> usize {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    /// Expands the word into single letters `(generator, inverse?)`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.syllables.iter().flat_map(|&(g, e)| {
            std::iter::repeat_n((g, e < 0), e.unsigned_abs() as usize)
        })
    }

    pub fn multiply(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &(g, e) in &other.syllables {
            out.push(g, e);
        }
        out
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i32) -> FreeWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// Exponent sum of one generator.
    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.syllables
            .iter()
            .filter(|(g, _)| *g == generator)
            .map(|&(_, e)| e as i64)
            .sum()
    }

    /// Sum of exponents weighted by a 0/1 parity vector, reduced mod 2.
    pub fn parity(&self, parity: &[u8]) -> u8 {
        let total: i64 = self
            .syllables
            .iter()
            .map(|&(g, e)| parity.get(g).copied().unwrap_or(0) as i64 * e as i64)
            .sum();
        total.rem_euclid(2) as u8
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|(g, _)| *g).max()
    }

    /// Replaces every generator by a word (a free-group homomorphism).
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = FreeWord::identity();
        for &(g, e) in &self.syllables {
            out = out.multiply(&images[g].pow(e));
        }
        out
    }

    /// Renders the word with the given generator names, `1` for the identity.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names: Some(names) }
    }
}

impl std::ops::Mul for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        self.multiply(rhs)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        WordDisplay { word: self, names: None }.fmt(f)
    }
}

struct WordDisplay<'a> {
    word: &'a FreeWord,
    names: Option<&'a [String]>,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (k, &(g, e)) in self.word.syllables.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match self.names.and_then(|n| n.get(g)) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "x{}", g + 1)?,
            }
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Free-group product `uv`, freely reduced.
pub fn word_multiply(u: &FreeWord, v: &FreeWord) -> FreeWord {
    u.multiply(v)
}

pub fn word_invert(u: &FreeWord) -> FreeWord {
    u.inverse()
}
