use num_complex::Complex64;

use super::{CMatrix, CVector, RepError, Representation};
use crate::presentation::FreeWord;

/// A 1-cochain given by its values on generators, extended to words by
/// `γ(uv) = γ(u) + Ad_{φ(u)} γ(v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    values: Vec<CVector>,
}

impl Cocycle {
    pub fn new(values: Vec<CVector>) -> Self {
        Self { values }
    }

    pub fn zero(generator_count: usize, lie_dim: usize) -> Self {
        Self { values: vec![CVector::zeros(lie_dim); generator_count] }
    }

    /// Splits a stacked vector of length `d·m` into `d` blocks.
    pub fn from_flat(flat: &CVector, generator_count: usize) -> Result<Self, RepError> {
        if generator_count == 0 {
            return if flat.is_empty() {
                Ok(Self { values: Vec::new() })
            } else {
                Err(RepError::CocycleShape { expected: 0, found: flat.len() })
            };
        }
        if flat.len() % generator_count != 0 {
            return Err(RepError::CocycleShape { expected: generator_count, found: flat.len() });
        }
        let m = flat.len() / generator_count;
        let values = (0..generator_count).map(|i| flat.rows(i * m, m).into_owned()).collect();
        Ok(Self { values })
    }

    pub fn to_flat(&self) -> CVector {
        let total: usize = self.values.iter().map(|v| v.len()).sum();
        let mut out = CVector::zeros(total);
        let mut offset = 0;
        for v in &self.values {
            out.rows_mut(offset, v.len()).copy_from(v);
            offset += v.len();
        }
        out
    }

    pub fn values(&self) -> &[CVector] {
        &self.values
    }

    /// The coboundary `u ↦ ξ − Ad_{φ(u)} ξ`.
    pub fn coboundary(rep: &Representation, xi: &CVector) -> Self {
        let values = rep.generator_adjoints().iter().map(|ad| xi - ad * xi).collect();
        Self { values }
    }

    fn check_shape(&self, rep: &Representation) -> Result<(), RepError> {
        if self.values.len() != rep.generator_count() {
            return Err(RepError::CocycleShape { expected: rep.generator_count(), found: self.values.len() });
        }
        if let Some(bad) = self.values.iter().find(|v| v.len() != rep.lie_dim()) {
            return Err(RepError::CocycleShape { expected: rep.lie_dim(), found: bad.len() });
        }
        Ok(())
    }

    /// Value on a word, by the cocycle rule applied letter by letter.
    pub fn evaluate(&self, rep: &Representation, word: &FreeWord) -> CVector {
        self.evaluate_with_adjoint(rep, word).0
    }

    /// Value on a word together with `Ad_{φ(word)}`.
    pub fn evaluate_with_adjoint(&self, rep: &Representation, word: &FreeWord) -> (CVector, CMatrix) {
        let m = rep.lie_dim();
        let mut value = CVector::zeros(m);
        let mut prefix = CMatrix::identity(m, m);
        for (g, inverse) in word.letters() {
            if inverse {
                // γ(x⁻¹) = −Ad_{x⁻¹} γ(x)
                let ad_inv = &rep.generator_adjoint_inverses()[g];
                value -= &prefix * (ad_inv * &self.values[g]);
                prefix = prefix * ad_inv;
            } else {
                value += &prefix * &self.values[g];
                prefix = prefix * &rep.generator_adjoints()[g];
            }
        }
        (value, prefix)
    }

    /// Norm of `γ̃(r)` for each relator; zero for a cocycle.
    pub fn relator_residuals(&self, rep: &Representation) -> Result<Vec<f64>, RepError> {
        self.check_shape(rep)?;
        Ok(rep
            .presentation()
            .relators()
            .iter()
            .map(|r| self.evaluate(rep, r).norm())
            .collect())
    }

    /// Values on a list of words: the restriction to the subgroup they
    /// generate, as a cochain on those generators.
    pub fn restrict(&self, rep: &Representation, words: &[FreeWord]) -> Result<Cocycle, RepError> {
        self.check_shape(rep)?;
        Ok(Cocycle { values: words.iter().map(|w| self.evaluate(rep, w)).collect() })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { values: self.values.iter().map(|v| v * factor).collect() }
    }

    pub fn add(&self, other: &Cocycle) -> Self {
        Self { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_squared()).sum::<f64>().sqrt()
    }
}
