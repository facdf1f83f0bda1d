//! Cup product pairing `H¹ × H¹ → C` evaluated on a bar 2-cycle built from
//! the relator.
//!
//! For `r = y₁⋯y_L` with prefixes `w_k`, the chain
//! `Σ_k [w_{k−1} | y_k] − Σ_{y_k = x⁻¹} ([x | x⁻¹] + [e | e])` is a cycle when
//! every generator has exponent sum zero in `r`. The cochain
//! `(α ⌣ β)(u, v) = B(α(u), Ad_{φ(u)} β(v))` is evaluated on it; the `[e | e]`
//! cells contribute nothing since `α(e) = 0`. The scale of the result is not
//! normalized.

use num_complex::Complex64;
use serde::Serialize;

use super::SurfaceError;
use crate::cohomology::{basis_matrix, build_complex, cohomology_report, numeric_rank, AnalysisOptions, RankDecision};
use crate::rep::{CMatrix, CVector, Cocycle, Representation};
use crate::serde_util::complex_matrix;

/// The pairing as a bilinear form `ω(α, β) = αᵀ Ω β` on stacked cochains.
#[derive(Clone, Debug, Serialize)]
pub struct PairingForm {
    #[serde(skip)]
    pub matrix: CMatrix,
    /// `‖Zᵀ(Ω + Ωᵀ)Z‖ / ‖Ω‖` over an orthonormal basis `Z` of `Z¹`.
    pub antisymmetry_residual: f64,
    /// Largest relative value of `ω` with one argument a coboundary.
    pub descent_residual: f64,
}

impl PairingForm {
    pub fn evaluate(&self, a: &CVector, b: &CVector) -> Complex64 {
        (a.transpose() * &self.matrix * b)[(0, 0)]
    }
}

const SELF_CHECK_TOL: f64 = 1e-8;

/// Builds `Ω` and runs the coboundary self-check.
pub fn pairing_form(rep: &Representation, options: &AnalysisOptions) -> Result<PairingForm, SurfaceError> {
    let [relator] = rep.presentation().relators() else {
        return Err(SurfaceError::Shape("the pairing needs exactly one relator".into()));
    };
    let d = rep.generator_count();
    if (0..d).any(|i| relator.exponent_sum(i) != 0) {
        return Err(SurfaceError::Shape("every generator must have exponent sum zero in the relator".into()));
    }
    let report = cohomology_report(rep, options)?;
    let m = rep.lie_dim();
    let dm = d * m;
    let gram = rep.basis().trace_gram();

    // J_w maps a stacked cochain to its value on w.
    let letter = |g: usize, inverse: bool| -> CMatrix {
        let mut j = CMatrix::zeros(m, dm);
        if inverse {
            j.view_mut((0, g * m), (m, m)).copy_from(&(-&rep.generator_adjoint_inverses()[g]));
        } else {
            j.view_mut((0, g * m), (m, m)).copy_from(&CMatrix::identity(m, m));
        }
        j
    };
    let adjoint = |g: usize, inverse: bool| -> &CMatrix {
        if inverse {
            &rep.generator_adjoint_inverses()[g]
        } else {
            &rep.generator_adjoints()[g]
        }
    };
    // Contribution of the cell [u | v]: J_uᵀ B Ad_u J_v.
    let cell = |ju: &CMatrix, ad_u: &CMatrix, jv: &CMatrix| -> CMatrix { ju.transpose() * gram * ad_u * jv };

    let mut omega = CMatrix::zeros(dm, dm);
    let mut j_prefix = CMatrix::zeros(m, dm);
    let mut ad_prefix = CMatrix::identity(m, m);
    for (g, inverse) in relator.letters() {
        let j_letter = letter(g, inverse);
        omega += cell(&j_prefix, &ad_prefix, &j_letter);
        if inverse {
            omega -= cell(&letter(g, false), adjoint(g, false), &j_letter);
        }
        j_prefix += &ad_prefix * &j_letter;
        ad_prefix = ad_prefix * adjoint(g, inverse);
    }

    let scale = omega.norm().max(f64::MIN_POSITIVE);
    let z = basis_matrix(&report.z1_basis, dm);
    let antisymmetry_residual = (z.transpose() * (&omega + omega.transpose()) * &z).norm() / scale;
    let mut coboundaries = CMatrix::zeros(dm, m);
    for k in 0..m {
        let mut xi = CVector::zeros(m);
        xi[k] = Complex64::new(1.0, 0.0);
        coboundaries.set_column(k, &Cocycle::coboundary(rep, &xi).to_flat());
    }
    let cob_scale = scale * coboundaries.norm().max(f64::MIN_POSITIVE);
    let left = (coboundaries.transpose() * &omega * &z).norm();
    let right = (z.transpose() * &omega * &coboundaries).norm();
    let descent_residual = left.max(right) / cob_scale;
    if descent_residual > SELF_CHECK_TOL {
        return Err(SurfaceError::SelfCheck { residual: descent_residual });
    }
    Ok(PairingForm { matrix: omega, antisymmetry_residual, descent_residual })
}

/// Rounding in `γ(r)` grows with the Fox Jacobian, so the tolerance is
/// scaled by `‖d2‖` as well as `‖γ‖`.
fn check_cocycle(rep: &Representation, gamma: &Cocycle, tol: f64, jacobian_norm: f64) -> Result<(), SurfaceError> {
    let residual = gamma.relator_residuals(rep)?.into_iter().fold(0.0, f64::max);
    let tolerance = tol * gamma.norm().max(1.0) * jacobian_norm.max(1.0);
    if residual > tolerance {
        return Err(SurfaceError::NotCocycle { residual, tolerance });
    }
    Ok(())
}

/// `ω(α, β)` for two cocycles of a one-relator group whose relator has zero
/// exponent sums.
pub fn cup_pairing(
    rep: &Representation,
    alpha: &Cocycle,
    beta: &Cocycle,
    options: &AnalysisOptions,
) -> Result<Complex64, SurfaceError> {
    let jacobian_norm = build_complex(rep, options)?.d2.norm();
    check_cocycle(rep, alpha, options.validation_tol, jacobian_norm)?;
    check_cocycle(rep, beta, options.validation_tol, jacobian_norm)?;
    let form = pairing_form(rep, options)?;
    Ok(form.evaluate(&alpha.to_flat(), &beta.to_flat()))
}

/// Gram matrix of `ω` on an orthonormal set of cocycles representing `H¹`.
#[derive(Clone, Debug, Serialize)]
pub struct PairingGram {
    pub h1_dim: usize,
    pub rank: RankDecision,
    pub nondegenerate: bool,
    pub antisymmetry_residual: f64,
    pub descent_residual: f64,
    #[serde(serialize_with = "complex_matrix")]
    pub gram: CMatrix,
}

pub fn pairing_gram(rep: &Representation, options: &AnalysisOptions) -> Result<PairingGram, SurfaceError> {
    let form = pairing_form(rep, options)?;
    let report = cohomology_report(rep, options)?;
    let h = basis_matrix(&report.h1_basis, rep.generator_count() * rep.lie_dim());
    let gram = h.transpose() * &form.matrix * &h;
    let rank = numeric_rank(&gram, &options.rank);
    Ok(PairingGram {
        h1_dim: report.b1,
        nondegenerate: rank.rank == report.b1,
        rank,
        antisymmetry_residual: form.antisymmetry_residual,
        descent_residual: form.descent_residual,
        gram,
    })
}
