//! Complex matrix groups, their Lie algebras, and representations of
//! finitely presented groups.

mod cocycle;
mod lie;
mod literal;
mod random;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::presentation::{FreeWord, GroupRingElement, Presentation, SubgroupPresentation};

pub use cocycle::Cocycle;
pub use lie::{adjoint_operator, lie_basis, pauli, GroupKind, GroupSpec, LieBasis};
pub use literal::{format_complex, format_matrix, parse_complex, parse_matrix};
pub use random::random_surface_representation;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Default tolerance for relator residuals and determinant checks.
pub const DEFAULT_VALIDATION_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum RepError {
    #[error("matrix size must be at least 2, got {0}")]
    MatrixSizeTooSmall(usize),
    #[error("unrecognised group `{0}` (expected GL(n,C), SL(n,C) or PSL(n,C))")]
    BadGroup(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    WrongSize { expected: usize, rows: usize, cols: usize },
    #[error("expected {expected} generator images, got {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("image of generator `{generator}` is singular")]
    SingularImage { generator: String },
    #[error("image of generator `{generator}` has determinant {det}, expected 1")]
    Determinant { generator: String, det: Complex64 },
    #[error("relator {} (`{relator}`) is not satisfied: residual {residual:.3e} exceeds {tolerance:.1e}", index + 1)]
    RelatorNotSatisfied { index: usize, relator: String, residual: f64, tolerance: f64 },
    #[error("only SL(2,C) and GL(2,C) are supported here, got {0}")]
    UnsupportedGroup(GroupSpec),
    #[error("surface parameter out of range: {0}")]
    SurfaceOutOfRange(String),
    #[error("random construction failed after {0} attempts")]
    RetriesExhausted(usize),
    #[error("cocycle has {found} values, expected {expected}")]
    CocycleShape { expected: usize, found: usize },
}

/// A homomorphism from a finitely presented group to a matrix group, given
/// by one matrix per generator.
#[derive(Clone, Debug)]
pub struct Representation {
    presentation: Presentation,
    spec: GroupSpec,
    basis: LieBasis,
    images: Vec<CMatrix>,
    inverses: Vec<CMatrix>,
    adjoints: Vec<CMatrix>,
    adjoint_inverses: Vec<CMatrix>,
}

/// Residual of one relator under a representation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelatorResidual {
    pub index: usize,
    pub relator: String,
    /// Frobenius distance to the identity (GL/SL) or to the nearest `ζI`
    /// with `ζⁿ = 1` (PSL).
    pub residual: f64,
    /// For PSL, the central element the relator lands on.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub central_value: Option<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub residuals: Vec<RelatorResidual>,
    pub tolerance: f64,
    pub accepted: bool,
}

impl ValidationReport {
    pub fn worst(&self) -> Option<&RelatorResidual> {
        self.residuals.iter().max_by(|a, b| a.residual.total_cmp(&b.residual))
    }
}

impl Representation {
    /// Checks sizes, invertibility and (for SL/PSL) unit determinant.
    /// Relators are not checked here; see [`Representation::validate`].
    pub fn new(presentation: Presentation, spec: GroupSpec, images: Vec<CMatrix>) -> Result<Self, RepError> {
        let d = presentation.generator_count();
        if images.len() != d {
            return Err(RepError::ImageCount { expected: d, found: images.len() });
        }
        let basis = LieBasis::new(spec);
        let mut inverses = Vec::with_capacity(d);
        for (name, g) in presentation.generator_names().iter().zip(&images) {
            if g.nrows() != spec.n || g.ncols() != spec.n {
                return Err(RepError::WrongSize { expected: spec.n, rows: g.nrows(), cols: g.ncols() });
            }
            let inv = lie::checked_inverse(g).map_err(|_| RepError::SingularImage { generator: name.clone() })?;
            if spec.kind != GroupKind::GL {
                let det = g.determinant();
                if (det - Complex64::new(1.0, 0.0)).norm() > DEFAULT_VALIDATION_TOL {
                    return Err(RepError::Determinant { generator: name.clone(), det });
                }
            }
            inverses.push(inv);
        }
        let adjoints: Vec<CMatrix> = images
            .iter()
            .zip(&inverses)
            .map(|(g, gi)| basis.adjoint_with_inverse(g, gi))
            .collect();
        let adjoint_inverses = images
            .iter()
            .zip(&inverses)
            .map(|(g, gi)| basis.adjoint_with_inverse(gi, g))
            .collect();
        Ok(Self { presentation, spec, basis, images, inverses, adjoints, adjoint_inverses })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn basis(&self) -> &LieBasis {
        &self.basis
    }

    pub fn lie_dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[CMatrix] {
        &self.images
    }

    /// `Ad_{φ(xᵢ)}` for each generator.
    pub fn generator_adjoints(&self) -> &[CMatrix] {
        &self.adjoints
    }

    /// `Ad_{φ(xᵢ)⁻¹}` for each generator.
    pub fn generator_adjoint_inverses(&self) -> &[CMatrix] {
        &self.adjoint_inverses
    }

    /// `φ(w)`: the product of generator images along the word.
    pub fn evaluate_word(&self, word: &FreeWord) -> CMatrix {
        let n = self.spec.n;
        let mut out = CMatrix::identity(n, n);
        for &(g, e) in word.syllables() {
            let factor = if e > 0 { &self.images[g] } else { &self.inverses[g] };
            for _ in 0..e.unsigned_abs() {
                out = &out * factor;
            }
        }
        out
    }

    /// `Ad_{φ(w)}`, computed from `φ(w)` and `φ(w⁻¹)`.
    pub fn adjoint_of_word(&self, word: &FreeWord) -> CMatrix {
        let g = self.evaluate_word(word);
        let g_inv = self.evaluate_word(&word.inverse());
        self.basis.adjoint_with_inverse(&g, &g_inv)
    }

    /// `Ad∘φ` extended linearly to the group ring.
    pub fn evaluate_group_ring(&self, u: &GroupRingElement) -> CMatrix {
        let m = self.lie_dim();
        let mut out = CMatrix::zeros(m, m);
        for (word, coeff) in u.terms() {
            out += self.adjoint_of_word(word) * Complex64::new(coeff as f64, 0.0);
        }
        out
    }

    /// Residual of every relator; accepted iff all are within `tol`.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let n = self.spec.n;
        let identity = CMatrix::identity(n, n);
        let residuals: Vec<RelatorResidual> = self
            .presentation
            .relators()
            .iter()
            .enumerate()
            .map(|(index, r)| {
                let value = self.evaluate_word(r);
                let relator = self.presentation.format_word(r);
                if self.spec.kind == GroupKind::PSL {
                    let (zeta, residual) = nearest_root_of_unity_scalar(&value);
                    RelatorResidual { index, relator, residual, central_value: Some([zeta.re, zeta.im]) }
                } else {
                    RelatorResidual { index, relator, residual: (value - &identity).norm(), central_value: None }
                }
            })
            .collect();
        let accepted = residuals.iter().all(|r| r.residual <= tol);
        ValidationReport { residuals, tolerance: tol, accepted }
    }

    /// Like [`validate`](Self::validate) but fails on the worst offender.
    pub fn ensure_valid(&self, tol: f64) -> Result<ValidationReport, RepError> {
        let report = self.validate(tol);
        if !report.accepted {
            let worst = report.worst().expect("rejection implies a relator");
            return Err(RepError::RelatorNotSatisfied {
                index: worst.index,
                relator: worst.relator.clone(),
                residual: worst.residual,
                tolerance: tol,
            });
        }
        Ok(report)
    }

    /// The representation `x ↦ g φ(x) g⁻¹`.
    pub fn conjugated(&self, g: &CMatrix) -> Result<Representation, RepError> {
        let g_inv = lie::checked_inverse(g)?;
        let images = self.images.iter().map(|a| g * a * &g_inv).collect();
        Representation::new(self.presentation.clone(), self.spec, images)
    }

    /// Pulls the representation back along words expressing the generators of
    /// another group in terms of this one's generators.
    pub fn pullback(&self, presentation: Presentation, words: &[FreeWord]) -> Result<Representation, RepError> {
        let images = words.iter().map(|w| self.evaluate_word(w)).collect();
        Representation::new(presentation, self.spec, images)
    }

    /// Restriction to an index-2 subgroup given by Reidemeister–Schreier.
    pub fn restrict(&self, sub: &SubgroupPresentation) -> Result<Representation, RepError> {
        self.pullback(sub.to_presentation(), sub.schreier_generators())
    }

    /// Same presentation and group, new images.
    pub fn with_images(&self, images: Vec<CMatrix>) -> Result<Representation, RepError> {
        Representation::new(self.presentation.clone(), self.spec, images)
    }
}

/// Nearest `ζI` with `ζⁿ = 1` to a matrix, with the Frobenius distance.
fn nearest_root_of_unity_scalar(value: &CMatrix) -> (Complex64, f64) {
    let n = value.nrows();
    (0..n)
        .map(|k| {
            let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
            let dist = (value - CMatrix::identity(n, n) * zeta).norm();
            (zeta, dist)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("n >= 2")
}

/// Free function form of [`Representation::evaluate_word`].
pub fn evaluate_word(rep: &Representation, word: &FreeWord) -> CMatrix {
    rep.evaluate_word(word)
}

pub fn evaluate_group_ring(rep: &Representation, u: &GroupRingElement) -> CMatrix {
    rep.evaluate_group_ring(u)
}

pub fn validate_representation(rep: &Representation, tol: f64) -> ValidationReport {
    rep.validate(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn i_pauli(k: usize) -> CMatrix {
        &pauli()[k] * c(0.0, 1.0)
    }

    fn zeta8_diag(inverse: bool) -> CMatrix {
        let z = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let (a, b) = if inverse { (z.inv(), z) } else { (z, z.inv()) };
        CMatrix::from_row_slice(2, 2, &[a, c(0.0, 0.0), c(0.0, 0.0), b])
    }

    fn klein() -> Presentation {
        parse_presentation("gens x1 x2 ; rel x1^2 x2^2").unwrap()
    }

    #[test]
    fn empty_word_is_identity() {
        let rep = Representation::new(klein(), GroupSpec::sl2(), vec![i_pauli(0), i_pauli(1)]).unwrap();
        assert_eq!(rep.evaluate_word(&FreeWord::identity()), CMatrix::identity(2, 2));
    }

    #[test]
    fn pauli_klein_relator_is_identity() {
        let rep = Representation::new(klein(), GroupSpec::sl2(), vec![i_pauli(0), i_pauli(1)]).unwrap();
        let r = rep.evaluate_word(&rep.presentation().relators()[0]);
        assert!((r - CMatrix::identity(2, 2)).norm() < 1e-15);
        let report = rep.validate(1e-12);
        assert!(report.accepted);
        assert_eq!(report.residuals[0].residual, 0.0);
    }

    #[test]
    fn invalid_assignment_rejected_with_residual() {
        let rep = Representation::new(klein(), GroupSpec::sl2(), vec![CMatrix::identity(2, 2), i_pauli(0)]).unwrap();
        let report = rep.validate(DEFAULT_VALIDATION_TOL);
        assert!(!report.accepted);
        assert!((report.residuals[0].residual - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!(matches!(rep.ensure_valid(DEFAULT_VALIDATION_TOL), Err(RepError::RelatorNotSatisfied { index: 0, .. })));
    }

    #[test]
    fn psl_relator_lands_in_center() {
        let p = parse_presentation("gens x1 x2 x3 ; rel x1^2 x2^2 x3^2").unwrap();
        let z = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let x3 = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), -z, z.inv(), c(0.0, 0.0)]);
        let images = vec![zeta8_diag(false), zeta8_diag(true), x3];
        let rep = Representation::new(p.clone(), GroupSpec::psl2(), images.clone()).unwrap();
        let value = rep.evaluate_word(&p.relators()[0]);
        assert!((value + CMatrix::identity(2, 2)).norm() < 1e-14);
        let report = rep.validate(DEFAULT_VALIDATION_TOL);
        assert!(report.accepted);
        assert!((report.residuals[0].central_value.unwrap()[0] + 1.0).abs() < 1e-12);
        // As SL(2) the same data is rejected.
        let sl = Representation::new(p, GroupSpec::sl2(), images).unwrap();
        assert!(!sl.validate(DEFAULT_VALIDATION_TOL).accepted);
    }

    #[test]
    fn constructor_checks() {
        let p = klein();
        assert!(matches!(
            Representation::new(p.clone(), GroupSpec::sl2(), vec![i_pauli(0)]),
            Err(RepError::ImageCount { .. })
        ));
        let two = CMatrix::identity(2, 2) * c(2.0, 0.0);
        assert!(matches!(
            Representation::new(p.clone(), GroupSpec::sl2(), vec![two.clone(), i_pauli(0)]),
            Err(RepError::Determinant { .. })
        ));
        assert!(Representation::new(p.clone(), GroupSpec::gl(2), vec![two, i_pauli(0)]).is_ok());
        let singular = CMatrix::zeros(2, 2);
        assert!(matches!(
            Representation::new(p.clone(), GroupSpec::gl(2), vec![singular, i_pauli(0)]),
            Err(RepError::SingularImage { .. })
        ));
        assert!(matches!(
            Representation::new(p, GroupSpec::gl(2), vec![CMatrix::identity(3, 3), i_pauli(0)]),
            Err(RepError::WrongSize { .. })
        ));
    }

    #[test]
    fn group_ring_evaluation() {
        let rep = Representation::new(klein(), GroupSpec::sl2(), vec![i_pauli(0), i_pauli(1)]).unwrap();
        let id = CMatrix::identity(3, 3);
        assert!((rep.evaluate_group_ring(&GroupRingElement::one()) - &id).norm() < 1e-15);
        let x1 = GroupRingElement::from_word(FreeWord::generator(0));
        let u = &x1 - &GroupRingElement::one();
        assert!((rep.evaluate_group_ring(&u) - (&rep.generator_adjoints()[0] - &id)).norm() < 1e-14);
    }

    #[test]
    fn fundamental_identity_transports() {
        let rep = Representation::new(klein(), GroupSpec::sl2(), vec![i_pauli(0), i_pauli(1)]).unwrap();
        let r = &rep.presentation().relators()[0];
        let id = CMatrix::identity(3, 3);
        let lhs = rep.adjoint_of_word(r) - &id;
        let mut rhs = CMatrix::zeros(3, 3);
        for i in 0..2 {
            rhs += rep.evaluate_group_ring(&r.fox_derivative(i)) * (&rep.generator_adjoints()[i] - &id);
        }
        assert!((lhs - rhs).norm() < 1e-13);
    }
}
