//! Worked representations of surface groups used throughout the tests, the
//! CLI fixtures and the documentation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::presentation::{parse_presentation, Presentation};
use crate::rep::{pauli, CMatrix, GroupSpec, Representation};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `i·σₖ` for `k ∈ {1, 2, 3}`.
pub fn i_sigma(k: usize) -> CMatrix {
    &pauli()[k - 1] * c(0.0, 1.0)
}

/// `ζ₈ = e^{πi/4}`.
pub fn zeta8() -> Complex64 {
    Complex64::from_polar(1.0, PI / 4.0)
}

fn diag(a: Complex64, b: Complex64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[a, c(0.0, 0.0), c(0.0, 0.0), b])
}

/// `exp(θ·i·σₖ) = cos θ·I + i sin θ·σₖ`.
pub fn exp_i_sigma(k: usize, theta: f64) -> CMatrix {
    CMatrix::identity(2, 2) * c(theta.cos(), 0.0) + i_sigma(k) * c(theta.sin(), 0.0)
}

fn presentation(src: &str) -> Presentation {
    parse_presentation(src).expect("catalog presentations are well formed")
}

/// Klein bottle group `⟨x1, x2 | x1² x2²⟩`.
pub fn klein_bottle() -> Presentation {
    presentation("gens x1 x2 ; rel x1^2 x2^2")
}

/// Klein bottle group into `SL(2)`: `x1 ↦ iσ₁`, `x2 ↦ iσ₂`.
pub fn klein_pauli() -> Representation {
    Representation::new(klein_bottle(), GroupSpec::sl2(), vec![i_sigma(1), i_sigma(2)]).expect("valid images")
}

/// Klein bottle group into `SL(2)`: `x1 ↦ diag(ζ₈, ζ₈⁻¹)`, `x2 ↦ diag(ζ₈⁻¹, ζ₈)`.
pub fn klein_zeta8() -> Representation {
    let z = zeta8();
    Representation::new(klein_bottle(), GroupSpec::sl2(), vec![diag(z, z.inv()), diag(z.inv(), z)]).expect("valid images")
}

/// Klein bottle group with the invalid assignment `x1 ↦ I`, `x2 ↦ iσ₁`.
pub fn klein_invalid() -> Representation {
    Representation::new(klein_bottle(), GroupSpec::sl2(), vec![CMatrix::identity(2, 2), i_sigma(1)]).expect("invertible images")
}

/// Trivial representation of the Klein bottle group into `SL(2)`.
pub fn klein_trivial() -> Representation {
    let id = CMatrix::identity(2, 2);
    Representation::new(klein_bottle(), GroupSpec::sl2(), vec![id.clone(), id]).expect("valid images")
}

/// Four-crosscap surface group with generators `x1, xm1, x2, xm2` and relator
/// `x1² xm1² x2² xm2²`.
pub fn four_crosscaps() -> Presentation {
    presentation("gens x1 xm1 x2 xm2 ; rel x1^2 xm1^2 x2^2 xm2^2")
}

/// The family `x±1 ↦ ±iσ₁`, `x±2 ↦ exp(±πt·iσ₂)` on [`four_crosscaps`].
pub fn four_crosscap_family(t: f64) -> Representation {
    let images = vec![
        i_sigma(1),
        -i_sigma(1),
        exp_i_sigma(2, PI * t),
        exp_i_sigma(2, -PI * t),
    ];
    Representation::new(four_crosscaps(), GroupSpec::sl2(), images).expect("valid images")
}

/// Three-crosscap surface group `⟨x1, x2, x3 | x1² x2² x3²⟩`.
pub fn three_crosscaps() -> Presentation {
    presentation("gens x1 x2 x3 ; rel x1^2 x2^2 x3^2")
}

/// Images of the `PSL(2)` representation of [`three_crosscaps`] whose
/// double-cover restriction generates the Klein four-group
/// `{±I, ±iσ₁, ±iσ₂, ±iσ₃}/±I`.
pub fn three_crosscap_psl_images() -> Vec<CMatrix> {
    let z = zeta8();
    vec![
        diag(z, z.inv()),
        diag(z.inv(), z),
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), -z, z.inv(), c(0.0, 0.0)]),
    ]
}

pub fn three_crosscap_psl() -> Representation {
    Representation::new(three_crosscaps(), GroupSpec::psl2(), three_crosscap_psl_images()).expect("valid images")
}

/// The deformation `x1 ↦ φ(x1)·exp(πt·iσ₃)`, `x2 ↦ φ(x2)·exp(−πt·iσ₃)`,
/// `x3 ↦ φ(x3)` of [`three_crosscap_psl`].
pub fn three_crosscap_psl_deformed(t: f64) -> Representation {
    let mut images = three_crosscap_psl_images();
    images[0] = &images[0] * exp_i_sigma(3, PI * t);
    images[1] = &images[1] * exp_i_sigma(3, -PI * t);
    Representation::new(three_crosscaps(), GroupSpec::psl2(), images).expect("valid images")
}

/// Genus-2 surface group `⟨a1, b1, a2, b2 | [a1, b1][a2, b2]⟩`.
pub fn genus_two() -> Presentation {
    presentation("gens a1 b1 a2 b2 ; rel a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1")
}

/// Genus-2 representation onto the quaternion group: `(iσ₁, iσ₂, iσ₁, iσ₂)`.
pub fn quaternion_genus_two() -> Representation {
    let images = vec![i_sigma(1), i_sigma(2), i_sigma(1), i_sigma(2)];
    Representation::new(genus_two(), GroupSpec::sl2(), images).expect("valid images")
}

/// Free group of rank one sent to the unipotent `[[1, 1], [0, 1]]`.
pub fn unipotent_free() -> Representation {
    let u = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    Representation::new(Presentation::free(1), GroupSpec::sl2(), vec![u]).expect("valid image")
}
