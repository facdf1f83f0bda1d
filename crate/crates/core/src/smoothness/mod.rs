//! Simple / reductive / good classification, smooth-point verdicts, expected
//! dimensions of surface-group character varieties, and family scans.

mod family;
mod reductive;
mod stabilizer;

use serde::Serialize;

use crate::cohomology::{cohomology_report, AnalysisOptions, CohomologyError, CohomologyReport};
use crate::rep::{GroupSpec, RepError, Representation};
use crate::surfaces::SurfaceKind;

pub use family::{scan_family, Factor, FamilySpec, Jump, MatrixTemplate, ScanReport, ScanRow};
pub use reductive::{is_reductive, ReductivityCertificate};
pub use stabilizer::{projective_stabilizer, Stabilizer, MAX_STABILIZER_GENERATORS};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SmoothnessError {
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("algebra span did not stabilize within {0} rounds")]
    AlgebraDidNotStabilize(usize),
    #[error("{0}")]
    Unsupported(String),
    #[error("stabilizer enumeration is limited to {MAX_STABILIZER_GENERATORS} generators, got {0}")]
    TooManyGenerators(usize),
    #[error("{0}")]
    OutOfRange(String),
    #[error("family sample t = {t} is invalid: {source}")]
    Sample { t: f64, source: RepError },
    #[error("family: {0}")]
    Family(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Good {
    Yes,
    No,
    /// Reductive with stabilizer dimension equal to that of the center; the
    /// component group of the stabilizer was not computed.
    DimOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SmoothVerdict {
    /// A sufficient condition for smoothness holds.
    Smooth,
    /// No sufficient condition applies. This is never a claim of singularity.
    NotDetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub simple: bool,
    pub reductive: bool,
    pub irreducible: bool,
    /// `dim H⁰`, the dimension of the stabilizer.
    pub stabilizer_dim: usize,
    pub projective_stabilizer_order: Option<usize>,
    pub good: Good,
    pub smooth_verdict: SmoothVerdict,
    pub smooth_reason: String,
    /// `H⁰` and `H²` with coefficients in `g' = [g, g]`.
    pub b0_semisimple: usize,
    pub b2_semisimple: usize,
    pub reductivity: ReductivityCertificate,
    pub stabilizer: Option<Stabilizer>,
}

/// `b0 = dim Z(g)`.
pub fn is_simple(rep: &Representation, options: &AnalysisOptions) -> Result<bool, SmoothnessError> {
    let report = cohomology_report(rep, options)?;
    Ok(report.b0 == rep.spec().center_dim())
}

/// Dimension of `H²(Π, Z(g))` for a single relator: the cokernel of
/// `c ↦ Σ ε(∂ᵢr) cᵢ` on each central direction.
fn central_h2(rep: &Representation) -> usize {
    let relators = rep.presentation().relators();
    let [r] = relators else { return 0 };
    let nonzero = (0..rep.generator_count()).any(|i| r.fox_derivative(i).augmentation() != 0);
    rep.spec().center_dim() * usize::from(!nonzero)
}

pub fn classify(rep: &Representation, options: &AnalysisOptions) -> Result<Classification, SmoothnessError> {
    let report = cohomology_report(rep, options)?;
    classify_with_report(rep, &report, options)
}

/// Classification reusing an already computed cohomology report.
pub fn classify_with_report(
    rep: &Representation,
    report: &CohomologyReport,
    options: &AnalysisOptions,
) -> Result<Classification, SmoothnessError> {
    let spec = rep.spec();
    let center_dim = spec.center_dim();
    let simple = report.b0 == center_dim;
    let reductivity = is_reductive(rep, &options.rank)?;
    let reductive = reductivity.reductive;

    let stabilizer = if spec.is_rank_one() && rep.generator_count() <= MAX_STABILIZER_GENERATORS {
        Some(projective_stabilizer(rep, &options.rank)?)
    } else {
        None
    };
    let order = stabilizer.as_ref().and_then(|s| s.order);
    let good = match (&stabilizer, spec.center_order()) {
        _ if !(reductive && simple) => Good::No,
        (Some(_), Some(center)) => {
            if order == Some(center) {
                Good::Yes
            } else {
                Good::No
            }
        }
        _ => Good::DimOnly,
    };

    let b0_semisimple = report.b0.saturating_sub(center_dim);
    let b2_semisimple = report.b2.saturating_sub(central_h2(rep));
    let (smooth_verdict, smooth_reason) = match report.relator_count {
        0 => (SmoothVerdict::Smooth, "free group: the representation variety is a product of copies of G".to_string()),
        1 if b2_semisimple == 0 => (
            SmoothVerdict::Smooth,
            "single relator with H^2(g') = 0: the relator map has maximal rank".to_string(),
        ),
        1 => (
            SmoothVerdict::NotDetermined,
            format!(
                "single relator with dim H^2(g') = {b2_semisimple} > 0: smoothness needs this dimension to be minimal nearby, which only a deformation scan can probe"
            ),
        ),
        q => (
            SmoothVerdict::NotDetermined,
            format!("{q} relators: H^2 is only bounded by coker d2 and the rank criterion cannot be certified"),
        ),
    };

    Ok(Classification {
        simple,
        reductive,
        irreducible: simple && reductive,
        stabilizer_dim: report.b0,
        projective_stabilizer_order: order,
        good,
        smooth_verdict,
        smooth_reason,
        b0_semisimple,
        b2_semisimple,
        reductivity,
        stabilizer,
    })
}

/// `(2g − 2)·dim G + 2·dim Z(g)` for orientable genus `g > 1`,
/// `(h − 2)·dim G + dim Z(g)` for `h > 2` crosscaps.
pub fn expected_dimension(spec: GroupSpec, surface: SurfaceKind) -> Result<i64, SmoothnessError> {
    let dim_g = spec.lie_dim() as i64;
    let dim_z = spec.center_dim() as i64;
    match surface {
        SurfaceKind::Orientable { genus } if genus > 1 => Ok((2 * genus as i64 - 2) * dim_g + 2 * dim_z),
        SurfaceKind::Orientable { genus } => {
            Err(SmoothnessError::OutOfRange(format!("the dimension formula requires genus g > 1, got {genus}")))
        }
        SurfaceKind::NonOrientable { crosscaps } if crosscaps > 2 => Ok((crosscaps as i64 - 2) * dim_g + dim_z),
        SurfaceKind::NonOrientable { crosscaps } => Err(SmoothnessError::OutOfRange(format!(
            "the dimension formula requires a connected sum of h > 2 projective planes, got h = {crosscaps}"
        ))),
    }
}
