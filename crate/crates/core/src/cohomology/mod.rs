//! The cochain complex `g → g^X → g^R` of a presented group with
//! coefficients in the adjoint representation, and its cohomology.
//!
//! `d1` stacks `Ad_{φ(xᵢ)} − 1` over generators; block `(j, i)` of `d2` is
//! `Ad∘φ` applied to the Fox derivative `∂ᵢrⱼ`. Then
//!
//! * `b0 = m − rank d1`
//! * `dim Z¹ = d·m − rank d2`, `b1 = dim Z¹ − rank d1`
//! * `coker d2` has dimension `q·m − rank d2`; it equals `H²` for a single
//!   relator and bounds it from above otherwise.

mod rank;

use rayon::prelude::*;
use serde::Serialize;

use crate::rep::{CMatrix, CVector, RepError, Representation, DEFAULT_VALIDATION_TOL};
use crate::serde_util::complex_vectors;

pub use rank::{
    basis_matrix, column_space, cokernel, kernel_intersection, normalize_phase, null_space, numeric_rank,
    stack_rows, RankDecision, RankPolicy,
};

/// Tolerances shared by every analysis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnalysisOptions {
    pub rank: RankPolicy,
    /// Maximum relator residual accepted by validation.
    pub validation_tol: f64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { rank: RankPolicy::default(), validation_tol: DEFAULT_VALIDATION_TOL }
    }
}

impl AnalysisOptions {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self { rank: RankPolicy::with_rel_tol(rel_tol), ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum CohomologyError {
    #[error("invalid representation: {0}")]
    Invalid(#[from] RepError),
}

#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub d1: CMatrix,
    pub d2: CMatrix,
    pub lie_dim: usize,
    pub generator_count: usize,
    pub relator_count: usize,
}

impl CochainComplex {
    /// `‖d2·d1‖ / (max(‖d2‖, 1)·max(‖d1‖, 1))`. The floors keep rounding
    /// noise in a numerically zero map from reading as a large ratio.
    pub fn relative_chain_residual(&self) -> f64 {
        let scale = self.d2.norm().max(1.0) * self.d1.norm().max(1.0);
        if self.d2.nrows() == 0 {
            return 0.0;
        }
        (&self.d2 * &self.d1).norm() / scale
    }
}

/// Assembles `d1` and `d2` for a representation that validates.
pub fn build_complex(rep: &Representation, options: &AnalysisOptions) -> Result<CochainComplex, CohomologyError> {
    rep.ensure_valid(options.validation_tol)?;
    Ok(assemble(rep))
}

fn assemble(rep: &Representation) -> CochainComplex {
    let m = rep.lie_dim();
    let d = rep.generator_count();
    let relators = rep.presentation().relators();
    let q = relators.len();
    let identity = CMatrix::identity(m, m);

    let mut d1 = CMatrix::zeros(d * m, m);
    for (i, ad) in rep.generator_adjoints().iter().enumerate() {
        d1.view_mut((i * m, 0), (m, m)).copy_from(&(ad - &identity));
    }

    let blocks: Vec<CMatrix> = (0..q * d)
        .into_par_iter()
        .map(|k| {
            let (j, i) = (k / d, k % d);
            rep.evaluate_group_ring(&relators[j].fox_derivative(i))
        })
        .collect();
    let mut d2 = CMatrix::zeros(q * m, d * m);
    for (k, block) in blocks.iter().enumerate() {
        let (j, i) = (k / d, k % d);
        d2.view_mut((j * m, i * m), (m, m)).copy_from(block);
    }
    CochainComplex { d1, d2, lie_dim: m, generator_count: d, relator_count: q }
}

/// How the reported `b2` relates to `H²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum B2Status {
    /// One relator: `coker d2 ≅ H²`.
    ExactSingleRelator,
    /// Obtained by Poincaré duality on a closed orientable surface group.
    ExactDuality,
    /// Several relators: `H²` is at most the cokernel dimension.
    CokerBound,
    /// No relators: `H² = 0`.
    ExactNoRelators,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub lie_dim: usize,
    pub generator_count: usize,
    pub relator_count: usize,
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
    pub b2_status: B2Status,
    pub dim_z1: usize,
    pub dim_b1: usize,
    pub rank_d1: RankDecision,
    pub rank_d2: RankDecision,
    pub chain_residual: f64,
    /// Orthonormal basis of `H⁰ = g^Π` in Lie-algebra coordinates.
    #[serde(serialize_with = "complex_vectors")]
    pub h0_basis: Vec<CVector>,
    /// Orthonormal basis of `Z¹`, each vector stacking the values on the
    /// generators.
    #[serde(serialize_with = "complex_vectors")]
    pub z1_basis: Vec<CVector>,
    /// Cocycles orthogonal to `B¹` representing a basis of `H¹`.
    #[serde(serialize_with = "complex_vectors")]
    pub h1_basis: Vec<CVector>,
    /// Orthonormal basis of the orthogonal complement of `im d2` in `g^R`.
    #[serde(serialize_with = "complex_vectors")]
    pub h2_basis: Vec<CVector>,
}

impl CohomologyReport {
    /// `b0 − b1 + b2` as a signed integer.
    pub fn euler_characteristic(&self) -> i64 {
        self.b0 as i64 - self.b1 as i64 + self.b2 as i64
    }

    /// `(1 − d + q)·m`, the Euler characteristic forced by the cochain
    /// dimensions; equal to [`euler_characteristic`](Self::euler_characteristic)
    /// whenever `b2` is the cokernel dimension.
    pub fn expected_euler_characteristic(&self) -> i64 {
        (1 - self.generator_count as i64 + self.relator_count as i64) * self.lie_dim as i64
    }

    pub fn decisions(&self) -> [&RankDecision; 2] {
        [&self.rank_d1, &self.rank_d2]
    }

    pub fn has_gap_warning(&self) -> bool {
        self.decisions().iter().any(|d| d.warning)
    }

    pub fn min_gap_ratio(&self) -> f64 {
        self.decisions().iter().map(|d| d.effective_gap()).fold(f64::INFINITY, f64::min)
    }
}

/// Computes all cohomology dimensions and bases for a validated representation.
pub fn cohomology_report(rep: &Representation, options: &AnalysisOptions) -> Result<CohomologyReport, CohomologyError> {
    let complex = build_complex(rep, options)?;
    Ok(report_from_complex(&complex, &options.rank))
}

pub fn report_from_complex(complex: &CochainComplex, policy: &RankPolicy) -> CohomologyReport {
    let m = complex.lie_dim;
    let d = complex.generator_count;
    let q = complex.relator_count;

    let (rank_d1, h0_basis) = null_space(&complex.d1, policy);
    let (_, coboundaries) = column_space(&complex.d1, policy);
    let (rank_d2, z1_basis) = null_space(&complex.d2, policy);
    let (_, h2_basis) = cokernel(&complex.d2, policy);

    let dim_z1 = d * m - rank_d2.rank;
    let b0 = m - rank_d1.rank;
    let b1 = dim_z1.saturating_sub(rank_d1.rank);
    let b2 = q * m - rank_d2.rank;
    let b2_status = match q {
        0 => B2Status::ExactNoRelators,
        1 => B2Status::ExactSingleRelator,
        _ => B2Status::CokerBound,
    };

    let h1_basis = h1_representatives(&z1_basis, &coboundaries, d * m, b1, policy);
    CohomologyReport {
        lie_dim: m,
        generator_count: d,
        relator_count: q,
        b0,
        b1,
        b2,
        b2_status,
        dim_z1,
        dim_b1: rank_d1.rank,
        rank_d1,
        rank_d2,
        chain_residual: complex.relative_chain_residual(),
        h0_basis,
        z1_basis,
        h1_basis,
        h2_basis,
    }
}

/// Projects `Z¹` away from `B¹` and returns `count` orthonormal cocycles
/// spanning the result.
fn h1_representatives(
    cocycles: &[CVector],
    coboundaries: &[CVector],
    dim: usize,
    count: usize,
    policy: &RankPolicy,
) -> Vec<CVector> {
    if count == 0 || cocycles.is_empty() {
        return Vec::new();
    }
    let z = basis_matrix(cocycles, dim);
    let projected = if coboundaries.is_empty() {
        z
    } else {
        let b = basis_matrix(coboundaries, dim);
        &z - &b * (b.adjoint() * &z)
    };
    let (_, basis) = column_space(&projected, policy);
    basis.into_iter().take(count).collect()
}

/// The rank identity relating `rank d2`, `H²`, and `Hom(N̄, g)^Π`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankTheoremNote {
    pub rank_d2: usize,
    pub relator_count: usize,
    pub lie_dim: usize,
    /// `rank d2 + b2` for a single relator, which must equal `m`.
    pub implied_hom_dim: Option<usize>,
    /// `q·m`, an upper bound for `dim Hom(N̄, g)^Π` when `q > 1`.
    pub hom_dim_upper_bound: usize,
    pub consistent: bool,
    pub note: String,
}

pub fn rank_theorem_report(rep: &Representation, options: &AnalysisOptions) -> Result<RankTheoremNote, CohomologyError> {
    let report = cohomology_report(rep, options)?;
    Ok(rank_theorem_from_report(&report))
}

pub fn rank_theorem_from_report(report: &CohomologyReport) -> RankTheoremNote {
    let m = report.lie_dim;
    let q = report.relator_count;
    let rank = report.rank_d2.rank;
    let (implied, consistent, note) = match q {
        0 => (Some(0), rank == 0, "no relators: N is trivial and Hom(N, g) = 0".to_string()),
        1 => {
            let implied = rank + report.b2;
            (
                Some(implied),
                implied == m,
                format!("single relator: dim Hom(N, g)^Pi = rank d2 + b2 = {rank} + {} = {implied}", report.b2),
            )
        }
        _ => (
            None,
            rank <= q * m,
            format!(
                "{q} relators: dim Hom(N, g)^Pi <= {} and b2 <= coker d2 = {}; equality needs ev_R onto g^R (annotation only, not computed)",
                q * m,
                report.b2
            ),
        ),
    };
    RankTheoremNote {
        rank_d2: rank,
        relator_count: q,
        lie_dim: m,
        implied_hom_dim: implied,
        hom_dim_upper_bound: q * m,
        consistent,
        note,
    }
}
