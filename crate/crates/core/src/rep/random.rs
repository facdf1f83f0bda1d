//! Seeded random representations of surface groups into `SL(2)` / `GL(2)`,
//! used to build property-test corpora.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{CMatrix, GroupKind, GroupSpec, RepError, Representation};
use crate::surfaces::{canonical_presentation, SurfaceKind};

const MAX_ATTEMPTS: usize = 64;
const ACCEPT_TOL: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> CMatrix {
    CMatrix::from_fn(2, 2, |_, _| random_complex(rng))
}

/// Rescales to unit determinant for SL; `None` when (nearly) singular.
fn normalize(m: CMatrix, spec: GroupSpec) -> Option<CMatrix> {
    let det = m.determinant();
    if det.norm() < 1e-6 * m.norm_squared() {
        return None;
    }
    match spec.kind {
        GroupKind::GL => Some(m),
        _ => Some(m / det.sqrt()),
    }
}

fn random_element(rng: &mut ChaCha8Rng, spec: GroupSpec) -> CMatrix {
    loop {
        if let Some(m) = normalize(random_matrix(rng), spec) {
            return m;
        }
    }
}

/// Eigenvalues and eigenvectors of a 2×2 matrix with distinct eigenvalues.
fn eigen2(m: &CMatrix) -> Option<([Complex64; 2], CMatrix)> {
    let (a, b, cc, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let tr = a + d;
    let disc = (tr * tr - (a * d - b * cc) * 4.0).sqrt();
    if disc.norm() < 1e-6 * m.norm().max(1.0) {
        return None;
    }
    let lambdas = [(tr + disc) / 2.0, (tr - disc) / 2.0];
    let mut vecs = CMatrix::zeros(2, 2);
    for (k, &l) in lambdas.iter().enumerate() {
        let v1 = [b, l - a];
        let v2 = [l - d, cc];
        let norm = |v: &[Complex64; 2]| (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        let v = if norm(&v1) >= norm(&v2) { v1 } else { v2 };
        let n = norm(&v);
        if n < 1e-12 {
            return None;
        }
        vecs[(0, k)] = v[0] / n;
        vecs[(1, k)] = v[1] / n;
    }
    Some((lambdas, vecs))
}

/// A square root of a 2×2 matrix via the principal branch on each
/// eigenvalue; for SL the result is adjusted to determinant one.
fn sqrt2(m: &CMatrix, spec: GroupSpec) -> Option<CMatrix> {
    let scalar = m[(0, 0)];
    let off = (m - CMatrix::identity(2, 2) * scalar).norm();
    if off < 1e-9 * m.norm() {
        return match spec.kind {
            GroupKind::GL => Some(CMatrix::identity(2, 2) * scalar.sqrt()),
            // ±I: I for +I, iσ₃ for −I.
            _ if scalar.re > 0.0 => Some(CMatrix::identity(2, 2)),
            _ => Some(CMatrix::from_row_slice(2, 2, &[c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)])),
        };
    }
    let (lambdas, vecs) = eigen2(m)?;
    let mut roots = [lambdas[0].sqrt(), lambdas[1].sqrt()];
    if spec.kind != GroupKind::GL && (roots[0] * roots[1]).re < 0.0 {
        roots[1] = -roots[1];
    }
    let inv = vecs.clone().try_inverse()?;
    let diag = CMatrix::from_row_slice(2, 2, &[roots[0], c(0.0, 0.0), c(0.0, 0.0), roots[1]]);
    Some(vecs * diag * inv)
}

fn commutator(a: &CMatrix, b: &CMatrix) -> Option<CMatrix> {
    let ai = a.clone().try_inverse()?;
    let bi = b.clone().try_inverse()?;
    Some(a * b * ai * bi)
}

fn try_orientable(rng: &mut ChaCha8Rng, spec: GroupSpec, genus: usize) -> Option<Vec<CMatrix>> {
    let mut images = Vec::with_capacity(2 * genus);
    let mut product = CMatrix::identity(2, 2);
    for _ in 0..genus - 1 {
        let a = random_element(rng, spec);
        let b = random_element(rng, spec);
        product = product * commutator(&a, &b)?;
        images.push(a);
        images.push(b);
    }
    // Need [a, b] = C. With Y = a⁻¹ this is b Y b⁻¹ = Y C, solvable when
    // Y and YC share a spectrum, i.e. tr(Y (C − I)) = 0.
    let target = product.try_inverse()?;
    let k = &target - CMatrix::identity(2, 2);
    let (a, b) = if k.norm() < 1e-12 {
        let a = random_element(rng, spec);
        let b = &a * random_complex(rng) + CMatrix::identity(2, 2) * random_complex(rng);
        (a, normalize(b, spec)?)
    } else {
        let y0 = random_matrix(rng);
        let direction = k.transpose().map(|z| z.conj());
        let f = (&y0 * &k).trace();
        let y = normalize(y0 - direction * (f / k.norm_squared()), spec)?;
        let yc = &y * &target;
        let (ly, py) = eigen2(&y)?;
        let (lyc, pyc) = eigen2(&yc)?;
        // Pair eigenvectors with matching eigenvalues.
        let pyc = if (ly[0] - lyc[0]).norm() <= (ly[0] - lyc[1]).norm() {
            pyc
        } else {
            let mut swapped = pyc.clone();
            swapped.swap_columns(0, 1);
            swapped
        };
        let scale = CMatrix::from_row_slice(2, 2, &[random_complex(rng), c(0.0, 0.0), c(0.0, 0.0), random_complex(rng)]);
        let b = pyc * scale * py.try_inverse()?;
        (y.try_inverse()?, normalize(b, spec)?)
    };
    images.push(a);
    images.push(b);
    Some(images)
}

fn try_nonorientable(rng: &mut ChaCha8Rng, spec: GroupSpec, crosscaps: usize) -> Option<Vec<CMatrix>> {
    let mut images = Vec::with_capacity(crosscaps);
    let mut product = CMatrix::identity(2, 2);
    for _ in 0..crosscaps - 1 {
        let x = random_element(rng, spec);
        product = product * (&x * &x);
        images.push(x);
    }
    let last = sqrt2(&product.try_inverse()?, spec)?;
    images.push(last);
    Some(images)
}

/// A random representation of a canonical surface group presentation into
/// `SL(2,C)` or `GL(2,C)`, deterministic in `seed`.
pub fn random_surface_representation(
    spec: GroupSpec,
    surface: SurfaceKind,
    seed: u64,
) -> Result<Representation, RepError> {
    if spec.n != 2 || spec.kind == GroupKind::PSL {
        return Err(RepError::UnsupportedGroup(spec));
    }
    let presentation = canonical_presentation(surface).map_err(|e| RepError::SurfaceOutOfRange(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let images = match surface {
            SurfaceKind::Orientable { genus } => try_orientable(&mut rng, spec, genus),
            SurfaceKind::NonOrientable { crosscaps } => try_nonorientable(&mut rng, spec, crosscaps),
        };
        let Some(images) = images else { continue };
        let Ok(rep) = Representation::new(presentation.clone(), spec, images) else { continue };
        if rep.validate(ACCEPT_TOL).accepted {
            return Ok(rep);
        }
    }
    Err(RepError::RetriesExhausted(MAX_ATTEMPTS))
}
