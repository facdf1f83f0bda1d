//! Reidemeister–Schreier rewriting for index-2 subgroups given as the kernel
//! of a parity map `xᵢ ↦ pᵢ (mod 2)`.
//!
//! Cosets are `0` (even, representative `e`) and `1` (odd, representative
//! `c`, the first generator of odd parity). The Schreier generator attached
//! to coset `k` and ambient generator `j` is `rep(k)·xⱼ·rep(k·xⱼ)⁻¹`; the one
//! for `(0, c)` is freely trivial and dropped, leaving `2d − 1` generators.

use super::{FreeWord, Presentation, PresentationError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPresentation {
    parity: Vec<u8>,
    odd_representative: usize,
    /// `(coset, ambient generator)` for each Schreier generator.
    labels: Vec<(u8, usize)>,
    schreier_generators: Vec<FreeWord>,
    relators: Vec<FreeWord>,
    /// `table[coset][generator]`: a Schreier word of length ≤ 1.
    rewriting_table: [Vec<FreeWord>; 2],
}

impl SubgroupPresentation {
    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    /// Index of the ambient generator used as the odd coset representative.
    pub fn odd_representative(&self) -> usize {
        self.odd_representative
    }

    /// Schreier generators as words in the ambient generators.
    pub fn schreier_generators(&self) -> &[FreeWord] {
        &self.schreier_generators
    }

    /// `(coset, ambient generator)` label of each Schreier generator.
    pub fn labels(&self) -> &[(u8, usize)] {
        &self.labels
    }

    /// Rewritten relators over the Schreier alphabet, two per ambient relator
    /// (one per coset), in ambient relator order.
    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn table_entry(&self, coset: u8, generator: usize) -> &FreeWord {
        &self.rewriting_table[coset as usize][generator]
    }

    /// Rewrites an ambient word read from coset `start`; returns the Schreier
    /// word and the coset the word ends in.
    pub fn rewrite(&self, word: &FreeWord, start: u8) -> (FreeWord, u8) {
        let mut coset = start;
        let mut out = FreeWord::identity();
        for (g, inverse) in word.letters() {
            if inverse {
                coset ^= self.parity[g];
                out = out.multiply(&self.rewriting_table[coset as usize][g].inverse());
            } else {
                out = out.multiply(&self.rewriting_table[coset as usize][g]);
                coset ^= self.parity[g];
            }
        }
        (out, coset)
    }

    /// Rewrites an element of the subgroup (an even ambient word).
    pub fn rewrite_even(&self, word: &FreeWord) -> Result<FreeWord, PresentationError> {
        if word.parity(&self.parity) != 0 {
            return Err(PresentationError::OddWord);
        }
        Ok(self.rewrite(word, 0).0)
    }

    /// Expands a Schreier word back into ambient letters.
    pub fn expand(&self, schreier_word: &FreeWord) -> FreeWord {
        schreier_word.substitute(&self.schreier_generators)
    }

    /// The subgroup as a standalone presentation on generators `s1, s2, …`.
    pub fn to_presentation(&self) -> Presentation {
        let names = (1..=self.schreier_generators.len()).map(|k| format!("s{k}")).collect();
        Presentation::new(names, self.relators.clone()).expect("rewritten relators use Schreier generators only")
    }
}

/// Reidemeister–Schreier presentation of the kernel of a parity map.
pub fn index2_subgroup(
    presentation: &Presentation,
    parity: &[u8],
) -> Result<SubgroupPresentation, PresentationError> {
    let d = presentation.generator_count();
    if parity.len() != d {
        return Err(PresentationError::ParityLength { expected: d, found: parity.len() });
    }
    if parity.iter().any(|&p| p > 1) {
        return Err(PresentationError::ParityValue);
    }
    let c = parity.iter().position(|&p| p == 1).ok_or(PresentationError::NotProper)?;
    if let Some(index) = presentation.relators().iter().position(|r| r.parity(parity) != 0) {
        return Err(PresentationError::OddRelator { index });
    }

    let rep = |coset: u8| if coset == 0 { FreeWord::identity() } else { FreeWord::generator(c) };
    let mut labels = Vec::with_capacity(2 * d - 1);
    let mut schreier_generators = Vec::with_capacity(2 * d - 1);
    let mut table: [Vec<FreeWord>; 2] = [Vec::with_capacity(d), Vec::with_capacity(d)];
    for coset in 0..2u8 {
        for j in 0..d {
            let target = coset ^ parity[j];
            let word = rep(coset).multiply(&FreeWord::generator(j)).multiply(&rep(target).inverse());
            if word.is_identity() {
                table[coset as usize].push(FreeWord::identity());
            } else {
                table[coset as usize].push(FreeWord::generator(schreier_generators.len()));
                labels.push((coset, j));
                schreier_generators.push(word);
            }
        }
    }
    let mut sub = SubgroupPresentation {
        parity: parity.to_vec(),
        odd_representative: c,
        labels,
        schreier_generators,
        relators: Vec::new(),
        rewriting_table: table,
    };
    let relators = presentation
        .relators()
        .iter()
        .flat_map(|r| [sub.rewrite(r, 0).0, sub.rewrite(r, 1).0])
        .collect();
    sub.relators = relators;
    Ok(sub)
}
