//! Surface groups: canonical presentations, closed forms for `H⁰`/`H²` of
//! non-orientable surface groups, orientation double covers, and the cup
//! product pairing on `H¹` of a one-relator group whose relator has zero
//! exponent sums.

mod pairing;

use std::fmt;

use serde::Serialize;

use crate::cohomology::{cohomology_report, kernel_intersection, AnalysisOptions, CohomologyError, RankDecision, RankPolicy};
use crate::presentation::{FreeWord, Presentation};
use crate::rep::{CMatrix, CVector, Cocycle, RepError, Representation};
use crate::serde_util::complex_vectors;

pub use pairing::{cup_pairing, pairing_form, pairing_gram, PairingForm, PairingGram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceKind {
    Orientable { genus: usize },
    NonOrientable { crosscaps: usize },
}

impl SurfaceKind {
    pub fn euler_characteristic(&self) -> i64 {
        match *self {
            SurfaceKind::Orientable { genus } => 2 - 2 * genus as i64,
            SurfaceKind::NonOrientable { crosscaps } => 2 - crosscaps as i64,
        }
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self, SurfaceKind::Orientable { .. })
    }

    fn check(&self) -> Result<(), SurfaceError> {
        match *self {
            SurfaceKind::Orientable { genus } if genus < 1 => Err(SurfaceError::OutOfRange(format!("genus must be at least 1, got {genus}"))),
            SurfaceKind::NonOrientable { crosscaps } if crosscaps < 2 => {
                Err(SurfaceError::OutOfRange(format!("crosscap number must be at least 2, got {crosscaps}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::Orientable { genus } => write!(f, "orientable genus {genus}"),
            SurfaceKind::NonOrientable { crosscaps } => write!(f, "non-orientable with {crosscaps} crosscaps"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SurfaceError {
    #[error("surface parameter out of range: {0}")]
    OutOfRange(String),
    #[error("presentation is not canonical: {0}")]
    Shape(String),
    #[error("not a cocycle: relator residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotCocycle { residual: f64, tolerance: f64 },
    #[error("pairing self-check failed: value on a coboundary is {residual:.3e} (relative)")]
    SelfCheck { residual: f64 },
    #[error("embedding rejected: {0}")]
    Embedding(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// `⟨a1, b1, … | ∏ aᵢbᵢaᵢ⁻¹bᵢ⁻¹⟩` or `⟨x1, … | ∏ xᵢ²⟩`.
pub fn canonical_presentation(kind: SurfaceKind) -> Result<Presentation, SurfaceError> {
    kind.check()?;
    let (names, relator) = match kind {
        SurfaceKind::Orientable { genus } => {
            let names = (1..=genus).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect();
            (names, orientable_relator(genus))
        }
        SurfaceKind::NonOrientable { crosscaps } => {
            let names = (1..=crosscaps).map(|i| format!("x{i}")).collect();
            (names, squares_relator(crosscaps))
        }
    };
    Ok(Presentation::new(names, vec![relator]).expect("canonical relator uses declared generators"))
}

fn orientable_relator(genus: usize) -> FreeWord {
    FreeWord::from_syllables((0..genus).flat_map(|i| [(2 * i, 1), (2 * i + 1, 1), (2 * i, -1), (2 * i + 1, -1)]))
}

fn squares_relator(crosscaps: usize) -> FreeWord {
    FreeWord::from_syllables((0..crosscaps).map(|i| (i, 2)))
}

/// Recognizes a canonical surface presentation up to generator names.
pub fn recognize_surface(p: &Presentation) -> Option<SurfaceKind> {
    let d = p.generator_count();
    let [relator] = p.relators() else { return None };
    if d >= 2 && *relator == squares_relator(d) {
        return Some(SurfaceKind::NonOrientable { crosscaps: d });
    }
    if d >= 2 && d % 2 == 0 && *relator == orientable_relator(d / 2) {
        return Some(SurfaceKind::Orientable { genus: d / 2 });
    }
    None
}

fn crosscaps_of(rep: &Representation) -> Result<usize, SurfaceError> {
    match recognize_surface(rep.presentation()) {
        Some(SurfaceKind::NonOrientable { crosscaps }) => Ok(crosscaps),
        _ => Err(SurfaceError::Shape("expected a single relator x1^2 x2^2 ... xh^2".into())),
    }
}

/// `H⁰ = ∩ ker(Ad_{φ(xᵢ)} − 1)` and `H² ≅ ∩ ker(Ad_{φ(xᵢ)} + 1)`.
#[derive(Clone, Debug, Serialize)]
pub struct ClosedForm {
    pub h0: usize,
    pub h2: usize,
    #[serde(serialize_with = "complex_vectors")]
    pub h0_basis: Vec<CVector>,
    #[serde(serialize_with = "complex_vectors")]
    pub h2_basis: Vec<CVector>,
    pub h0_decision: RankDecision,
    pub h2_decision: RankDecision,
}

pub fn h0_h2_closed_form(rep: &Representation, options: &AnalysisOptions) -> Result<ClosedForm, SurfaceError> {
    crosscaps_of(rep)?;
    rep.ensure_valid(options.validation_tol)?;
    let m = rep.lie_dim();
    let id = CMatrix::identity(m, m);
    let minus: Vec<CMatrix> = rep.generator_adjoints().iter().map(|a| a - &id).collect();
    let plus: Vec<CMatrix> = rep.generator_adjoints().iter().map(|a| a + &id).collect();
    let (h0_decision, h0_basis) = kernel_intersection(&minus, m, &options.rank);
    let (h2_decision, h2_basis) = kernel_intersection(&plus, m, &options.rank);
    Ok(ClosedForm { h0: h0_basis.len(), h2: h2_basis.len(), h0_basis, h2_basis, h0_decision, h2_decision })
}

/// Cohomology of the orientation double cover, a closed orientable surface
/// of genus `h − 1`.
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub crosscaps: usize,
    pub cover_genus: usize,
    pub lie_dim: usize,
    pub h0_base: usize,
    pub h1_base: usize,
    pub h2_base: usize,
    pub h0_cover: usize,
    /// Equal to `h0_cover` by duality.
    pub h2_cover: usize,
    /// `2·h0_cover − χ(cover)·m`.
    pub h1_cover: usize,
    /// `h0_cover = h0_base + h2_base`.
    pub decomposition_ok: bool,
    /// `H¹` of the cover recomputed from the rewritten subgroup presentation.
    pub h1_cover_rewritten: usize,
    pub h1_consistent: bool,
    pub h0_cover_decision: RankDecision,
}

pub fn orientation_double_cover(rep: &Representation, options: &AnalysisOptions) -> Result<CoverReport, SurfaceError> {
    let h = crosscaps_of(rep)?;
    let base = cohomology_report(rep, options)?;
    let m = rep.lie_dim();
    let id = CMatrix::identity(m, m);

    let mut ops = Vec::with_capacity(h * h);
    for i in 0..h {
        for j in 0..h {
            let word = FreeWord::from_syllables([(i, 1), (j, 1)]);
            ops.push(rep.adjoint_of_word(&word) - &id);
        }
    }
    let (h0_cover_decision, fixed) = kernel_intersection(&ops, m, &options.rank);
    let h0_cover = fixed.len();
    let cover_genus = h - 1;
    let chi_cover = 2 - 2 * cover_genus as i64;
    let h1_cover = (2 * h0_cover as i64 - chi_cover * m as i64) as usize;

    let sub = crate::presentation::index2_subgroup(rep.presentation(), &vec![1u8; h])
        .expect("squares relator has even parity");
    let restricted = rep.restrict(&sub)?;
    let rewritten = cohomology_report(&restricted, options)?;

    Ok(CoverReport {
        crosscaps: h,
        cover_genus,
        lie_dim: m,
        h0_base: base.b0,
        h1_base: base.b1,
        h2_base: base.b2,
        h0_cover,
        h2_cover: h0_cover,
        h1_cover,
        decomposition_ok: h0_cover == base.b0 + base.b2,
        h1_cover_rewritten: rewritten.b1,
        h1_consistent: rewritten.b1 == h1_cover && rewritten.b0 == h0_cover,
        h0_cover_decision,
    })
}

/// Values of `γ` on the subgroup generators `words`, by the cocycle rule.
pub fn restrict_cocycle(rep: &Representation, gamma: &Cocycle, words: &[FreeWord]) -> Result<Cocycle, SurfaceError> {
    Ok(gamma.restrict(rep, words)?)
}

/// Words `(x1 x2, x1²)` generating the orientation cover of the Klein bottle
/// group as a torus group `⟨a1, b1 | [a1, b1]⟩`.
pub fn klein_cover_embedding() -> Vec<FreeWord> {
    vec![FreeWord::from_syllables([(0, 1), (1, 1)]), FreeWord::power_of(0, 2)]
}

#[derive(Clone, Debug, Serialize)]
pub struct LagrangianReport {
    pub h1_base: usize,
    pub h1_cover: usize,
    /// `h1_base = h1_cover / 2`.
    pub dimension_ok: bool,
    /// Largest `|ω̃(res α, res β)|` over a basis of `H¹` of the base, when an
    /// embedding was supplied.
    pub isotropy_residual: Option<f64>,
    /// `max |ω̃|` over the restricted basis paired with a basis of the cover's `H¹`.
    pub isotropy_scale: Option<f64>,
    /// Rank of the restriction map on `H¹`, when an embedding was supplied.
    pub restriction_rank: Option<usize>,
}

/// Dimension check `dim H¹(Π) = ½ dim H¹(Π̃)`, and optionally isotropy of
/// the restricted classes under the cover's pairing. `embedding` lists one
/// word per generator `a1, b1, …, a_{h−1}, b_{h−1}` of the cover.
pub fn lagrangian_check(
    rep: &Representation,
    embedding: Option<&[FreeWord]>,
    options: &AnalysisOptions,
) -> Result<LagrangianReport, SurfaceError> {
    let h = crosscaps_of(rep)?;
    let cover = orientation_double_cover(rep, options)?;
    let mut out = LagrangianReport {
        h1_base: cover.h1_base,
        h1_cover: cover.h1_cover,
        dimension_ok: 2 * cover.h1_base == cover.h1_cover,
        isotropy_residual: None,
        isotropy_scale: None,
        restriction_rank: None,
    };
    let Some(words) = embedding else { return Ok(out) };

    if words.len() != 2 * (h - 1) {
        return Err(SurfaceError::Embedding(format!("expected {} words, got {}", 2 * (h - 1), words.len())));
    }
    let parity = vec![1u8; h];
    if let Some(k) = words.iter().position(|w| w.parity(&parity) != 0) {
        return Err(SurfaceError::Embedding(format!("word {} has odd parity", k + 1)));
    }
    let cover_presentation = canonical_presentation(SurfaceKind::Orientable { genus: h - 1 })?;
    let cover_rep = rep
        .pullback(cover_presentation, words)
        .and_then(|r| r.ensure_valid(options.validation_tol).map(|_| r))
        .map_err(|e| SurfaceError::Embedding(format!("cover relator fails under the embedding: {e}")))?;

    let base = cohomology_report(rep, options)?;
    let restricted: Vec<CVector> = base
        .h1_basis
        .iter()
        .map(|v| {
            let gamma = Cocycle::from_flat(v, rep.generator_count())?;
            Ok(gamma.restrict(rep, words)?.to_flat())
        })
        .collect::<Result<_, SurfaceError>>()?;

    let form = pairing_form(&cover_rep, options)?;
    let cover_h1 = cohomology_report(&cover_rep, options)?.h1_basis;
    let mut residual: f64 = 0.0;
    for a in &restricted {
        for b in &restricted {
            residual = residual.max(form.evaluate(a, b).norm());
        }
    }
    let mut scale: f64 = 0.0;
    for a in &restricted {
        for b in &cover_h1 {
            scale = scale.max(form.evaluate(a, b).norm());
        }
    }
    out.isotropy_residual = Some(residual);
    out.isotropy_scale = Some(scale);
    out.restriction_rank = Some(restriction_rank(&cover_rep, &restricted, &options.rank));
    Ok(out)
}

/// Rank of the restricted cocycles modulo coboundaries of the cover.
fn restriction_rank(cover: &Representation, cocycles: &[CVector], policy: &RankPolicy) -> usize {
    let m = cover.lie_dim();
    let dim = cover.generator_count() * m;
    let basis: Vec<CVector> = (0..m)
        .map(|k| {
            let mut xi = CVector::zeros(m);
            xi[k] = num_complex::Complex64::new(1.0, 0.0);
            Cocycle::coboundary(cover, &xi).to_flat()
        })
        .collect();
    let b1 = crate::cohomology::numeric_rank(&crate::cohomology::basis_matrix(&basis, dim), policy).rank;
    let mut all = basis;
    all.extend(cocycles.iter().cloned());
    crate::cohomology::numeric_rank(&crate::cohomology::basis_matrix(&all, dim), policy).rank - b1
}

#[cfg(test)]
mod tests;
