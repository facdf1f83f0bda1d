#![allow(dead_code)]

use charvar::catalog;
use charvar::presentation::{FreeWord, Presentation};
use charvar::rep::{CMatrix, GroupSpec, Representation};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut ChaCha8Rng, generators: usize, max_len: usize) -> FreeWord {
    let len = rng.random_range(0..=max_len);
    FreeWord::from_letters((0..len).map(|_| (rng.random_range(0..generators), rng.random_bool(0.5))))
}

/// A well-conditioned random element of `SL(2,C)`.
pub fn random_sl2(rng: &mut ChaCha8Rng) -> CMatrix {
    loop {
        let m = CMatrix::from_fn(2, 2, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
        let det = m.determinant();
        if det.norm() > 0.3 * m.norm_squared() / 2.0 {
            return m / det.sqrt();
        }
    }
}

/// Random presentation with up to four generators and two relators of
/// length at most twelve, together with an `SL(2)` representation that
/// satisfies it. Images are drawn from the generalized quaternion group of
/// order 16 (so relators can be found by rejection) and then conjugated by
/// a random element.
pub fn random_presented_rep(seed: u64) -> Representation {
    let mut rng = rng(seed);
    let q16 = [CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![catalog::zeta8(), catalog::zeta8().conj()])), catalog::i_sigma(2)];
    let d = rng.random_range(1..=4);
    let images: Vec<CMatrix> = (0..d)
        .map(|_| {
            let w = random_word(&mut rng, 2, 6);
            w.letters().fold(CMatrix::identity(2, 2), |acc, (g, inv)| {
                let m = &q16[g];
                acc * if inv { m.adjoint() } else { m.clone() }
            })
        })
        .collect();
    let q = rng.random_range(1..=2);
    let mut relators = Vec::new();
    while relators.len() < q {
        let w = random_word(&mut rng, d, 12);
        if w.is_identity() {
            continue;
        }
        let value = w.letters().fold(CMatrix::identity(2, 2), |acc, (g, inv)| {
            let m = &images[g];
            acc * if inv { m.adjoint() } else { m.clone() }
        });
        if (value - CMatrix::identity(2, 2)).norm() < 1e-12 {
            relators.push(w);
        }
    }
    let names = (1..=d).map(|k| format!("x{k}")).collect();
    let p = Presentation::new(names, relators).unwrap();
    let g = random_sl2(&mut rng);
    let gi = g.clone().try_inverse().unwrap();
    let images = images.iter().map(|a| &g * a * &gi).collect();
    Representation::new(p, GroupSpec::sl2(), images).unwrap()
}
