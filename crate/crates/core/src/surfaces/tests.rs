use num_complex::Complex64;

use super::*;
use crate::catalog;
use crate::cohomology::normalize_phase;
use crate::presentation::parse_presentation;

fn opts() -> AnalysisOptions {
    AnalysisOptions::default()
}

#[test]
fn canonical_shapes() {
    let torus = canonical_presentation(SurfaceKind::Orientable { genus: 1 }).unwrap();
    assert_eq!(torus, parse_presentation("gens a1 b1\nrel a1 b1 a1^-1 b1^-1").unwrap());
    let klein = canonical_presentation(SurfaceKind::NonOrientable { crosscaps: 2 }).unwrap();
    assert_eq!(klein, catalog::klein_bottle());
    let four = canonical_presentation(SurfaceKind::NonOrientable { crosscaps: 4 }).unwrap();
    assert_eq!(four.relators(), catalog::four_crosscaps().relators());
    assert_eq!(recognize_surface(&catalog::four_crosscaps()), Some(SurfaceKind::NonOrientable { crosscaps: 4 }));
    assert_eq!(recognize_surface(&catalog::genus_two()), Some(SurfaceKind::Orientable { genus: 2 }));
    assert!(canonical_presentation(SurfaceKind::Orientable { genus: 0 }).is_err());
    assert!(canonical_presentation(SurfaceKind::NonOrientable { crosscaps: 1 }).is_err());
    assert_eq!(SurfaceKind::NonOrientable { crosscaps: 4 }.euler_characteristic(), -2);
}

#[test]
fn closed_forms_on_klein_examples() {
    let cf = h0_h2_closed_form(&catalog::klein_pauli(), &opts()).unwrap();
    assert_eq!((cf.h0, cf.h2), (0, 1));
    assert!((normalize_phase(&cf.h2_basis[0])[2] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    let cf = h0_h2_closed_form(&catalog::klein_zeta8(), &opts()).unwrap();
    assert_eq!((cf.h0, cf.h2), (1, 0));
    let cf = h0_h2_closed_form(&catalog::four_crosscap_family(0.0), &opts()).unwrap();
    assert_eq!((cf.h0, cf.h2), (1, 0));
    assert!((normalize_phase(&cf.h0_basis[0])[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    assert!(matches!(h0_h2_closed_form(&catalog::quaternion_genus_two(), &opts()), Err(SurfaceError::Shape(_))));
}

#[test]
fn double_cover_decomposition() {
    let c = orientation_double_cover(&catalog::klein_pauli(), &opts()).unwrap();
    assert_eq!((c.h0_cover, c.h0_base, c.h2_base), (1, 0, 1));
    assert!(c.decomposition_ok && c.h1_consistent);
    assert_eq!(c.h1_cover, 2);
    let c = orientation_double_cover(&catalog::klein_zeta8(), &opts()).unwrap();
    assert_eq!((c.h0_cover, c.h0_base, c.h2_base), (1, 1, 0));
    assert!(c.decomposition_ok && c.h1_consistent);
    let c = orientation_double_cover(&catalog::four_crosscap_family(0.25), &opts()).unwrap();
    assert_eq!((c.h0_cover, c.h1_cover, c.h1_base), (0, 12, 6));
    assert!(c.h1_consistent);
}

#[test]
fn restriction_of_a1_cocycle() {
    let rep = catalog::klein_pauli();
    let mut values = vec![CVector::zeros(3), CVector::zeros(3)];
    values[0][1] = Complex64::new(1.0, 0.0);
    let gamma = Cocycle::new(values);
    assert!(gamma.relator_residuals(&rep).unwrap()[0] < 1e-14);
    let res = restrict_cocycle(&rep, &gamma, &klein_cover_embedding()).unwrap();
    // γ(x1 x2) = σ₂ and γ(x1²) = σ₂ + Ad_{iσ₁}σ₂ = 0.
    assert!((res.values()[0][1] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    assert!(res.values()[1].norm() < 1e-14);
}

#[test]
fn quaternion_pairing_is_nondegenerate() {
    let g = pairing_gram(&catalog::quaternion_genus_two(), &opts()).unwrap();
    assert_eq!(g.h1_dim, 6);
    assert_eq!(g.rank.rank, 6);
    assert!(g.nondegenerate);
    assert!(g.antisymmetry_residual < 1e-12);
    assert!(g.descent_residual < 1e-12);
}

#[test]
fn pairing_rejects_non_cocycles_and_wrong_shapes() {
    let rep = catalog::quaternion_genus_two();
    let mut bad = Cocycle::zero(4, 3);
    bad = bad.add(&Cocycle::new(vec![CVector::from_element(3, Complex64::new(1.0, 0.0)), CVector::zeros(3), CVector::zeros(3), CVector::zeros(3)]));
    let zero = Cocycle::zero(4, 3);
    assert!(matches!(cup_pairing(&rep, &bad, &zero, &opts()), Err(SurfaceError::NotCocycle { .. })));
    assert!(matches!(pairing_form(&catalog::klein_pauli(), &opts()), Err(SurfaceError::Shape(_))));
}

#[test]
fn klein_lagrangian() {
    let rep = catalog::klein_pauli();
    let l = lagrangian_check(&rep, None, &opts()).unwrap();
    assert_eq!((l.h1_base, l.h1_cover), (1, 2));
    assert!(l.dimension_ok);
    let embedding = klein_cover_embedding();
    let l = lagrangian_check(&rep, Some(&embedding), &opts()).unwrap();
    assert!(l.isotropy_residual.unwrap() < 1e-10);
    assert_eq!(l.restriction_rank, Some(1));
    assert!(l.isotropy_scale.unwrap() > 1e-3);
}
