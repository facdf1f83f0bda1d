//! Complete reducibility of `Ad∘φ` via the trace-form radical of the
//! associative algebra generated by the adjoint images.

use serde::Serialize;

use super::SmoothnessError;
use crate::cohomology::{column_space, numeric_rank, RankDecision, RankPolicy};
use crate::rep::{CMatrix, CVector, Representation};

#[derive(Clone, Debug, Serialize)]
pub struct ReductivityCertificate {
    pub reductive: bool,
    pub algebra_dim: usize,
    pub rounds: usize,
    /// Singular values of the trace-form Gram matrix on the algebra.
    pub gram_spectrum: Vec<f64>,
    pub gram_rank: RankDecision,
}

fn vectorize(a: &CMatrix) -> CVector {
    CVector::from_column_slice(a.as_slice())
}

fn unvectorize(v: &CVector, m: usize) -> CMatrix {
    CMatrix::from_column_slice(m, m, v.as_slice())
}

fn span(vectors: &[CVector], policy: &RankPolicy) -> Vec<CVector> {
    let dim = vectors[0].len();
    let stacked = crate::cohomology::basis_matrix(vectors, dim);
    column_space(&stacked, policy).1
}

pub fn is_reductive(rep: &Representation, policy: &RankPolicy) -> Result<ReductivityCertificate, SmoothnessError> {
    let m = rep.lie_dim();
    let generators: Vec<&CMatrix> = rep.generator_adjoints().iter().chain(rep.generator_adjoint_inverses()).collect();
    let mut basis = span(&[vectorize(&CMatrix::identity(m, m))], policy);
    let mut rounds = 0;
    loop {
        rounds += 1;
        if rounds > m * m + 1 {
            return Err(SmoothnessError::AlgebraDidNotStabilize(m * m + 1));
        }
        let mut candidates = basis.clone();
        for b in &basis {
            let a = unvectorize(b, m);
            for g in &generators {
                candidates.push(vectorize(&(&a * *g)));
            }
        }
        let next = span(&candidates, policy);
        if next.len() == basis.len() {
            basis = next;
            break;
        }
        basis = next;
    }
    let elements: Vec<CMatrix> = basis.iter().map(|v| unvectorize(v, m)).collect();
    let k = elements.len();
    let gram = CMatrix::from_fn(k, k, |i, j| (&elements[i] * &elements[j]).trace());
    let gram_rank = numeric_rank(&gram, policy);
    let mut gram_spectrum: Vec<f64> = if k == 0 { Vec::new() } else { gram.clone().svd(false, false).singular_values.iter().copied().collect() };
    gram_spectrum.sort_by(|a, b| b.total_cmp(a));
    Ok(ReductivityCertificate { reductive: gram_rank.rank == k, algebra_dim: k, rounds, gram_spectrum, gram_rank })
}
