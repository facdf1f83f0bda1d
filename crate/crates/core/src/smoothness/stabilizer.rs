//! Stabilizers of `SL(2)` and `PSL(2)` representations by enumerating sign
//! vectors: `[g]` centralizes `[A]` in `PSL(2)` iff `gAg⁻¹ = ±A`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::SmoothnessError;
use crate::cohomology::RankPolicy;
use crate::rep::{CMatrix, CVector, GroupKind, Representation};

pub const MAX_STABILIZER_GENERATORS: usize = 16;

#[derive(Clone, Debug, Serialize)]
pub struct Stabilizer {
    /// Number of stabilizer elements in the matrix group (`±g` both count for
    /// `SL(2)`), when the stabilizer is finite.
    pub order: Option<usize>,
    /// Dimension of the stabilizer when it is not finite.
    pub positive_dimension: Option<usize>,
    /// Sign vectors `ε` admitting an invertible `g` with `g Aᵢ g⁻¹ = εᵢ Aᵢ`.
    pub sign_vectors: Vec<Vec<i8>>,
    /// One unit-determinant representative per contributing sign vector.
    #[serde(skip)]
    pub representatives: Vec<CMatrix>,
}

enum Solution {
    None,
    Line(CMatrix),
    Family(usize),
}

fn vec_operator(a: &CMatrix, sign: f64) -> CMatrix {
    // vec(gA) = (Aᵀ ⊗ I) vec g and vec(Ag) = (I ⊗ A) vec g.
    let id = CMatrix::identity(2, 2);
    a.transpose().kronecker(&id) - id.kronecker(a) * Complex64::new(sign, 0.0)
}

fn det2(v: &CVector) -> Complex64 {
    // Column-major: [g00, g10, g01, g11].
    v[0] * v[3] - v[2] * v[1]
}

fn invertible(v: &CVector) -> bool {
    det2(v).norm() > 1e-8 * v.norm_squared()
}

fn normalized(v: &CVector) -> CMatrix {
    let scaled = v / det2(v).sqrt();
    // First entry of (nearly) maximal modulus fixes the sign of ±g.
    let largest = scaled.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot = scaled.iter().copied().find(|z| z.norm() > largest * (1.0 - 1e-9)).unwrap_or_default();
    let sign = if pivot.re < 0.0 || (pivot.re == 0.0 && pivot.im < 0.0) { -1.0 } else { 1.0 };
    CMatrix::from_column_slice(2, 2, (scaled * Complex64::new(sign, 0.0)).as_slice())
}

fn solve(ops: &[CMatrix], signs: &[f64], policy: &RankPolicy) -> Solution {
    let blocks: Vec<CMatrix> = ops.iter().zip(signs).map(|(a, &s)| vec_operator(a, s)).collect();
    let (_, kernel) = crate::cohomology::kernel_intersection(&blocks, 4, policy);
    match kernel.len() {
        0 => Solution::None,
        1 if invertible(&kernel[0]) => Solution::Line(normalized(&kernel[0])),
        1 => Solution::None,
        k => {
            // det is a quadratic form; it vanishes on the kernel iff it vanishes
            // on every basis vector and every pairwise sum.
            let any_invertible = (0..k).any(|i| invertible(&kernel[i]))
                || (0..k).any(|i| (i + 1..k).any(|j| invertible(&(&kernel[i] + &kernel[j]))));
            if any_invertible {
                Solution::Family(k - 1)
            } else {
                Solution::None
            }
        }
    }
}

/// Stabilizer of `φ` under conjugation, for `SL(2)` and `PSL(2)` targets.
pub fn projective_stabilizer(rep: &Representation, policy: &RankPolicy) -> Result<Stabilizer, SmoothnessError> {
    let spec = rep.spec();
    if spec.n != 2 || spec.kind == GroupKind::GL {
        return Err(SmoothnessError::Unsupported(format!("stabilizer enumeration needs SL(2) or PSL(2), got {spec}")));
    }
    let d = rep.generator_count();
    if d > MAX_STABILIZER_GENERATORS {
        return Err(SmoothnessError::TooManyGenerators(d));
    }
    let images = rep.images();
    let masks: Vec<u32> = if spec.kind == GroupKind::PSL { (0..1u32 << d).collect() } else { vec![0] };
    let solutions: Vec<(Vec<f64>, Solution)> = masks
        .par_iter()
        .map(|&mask| {
            let signs: Vec<f64> = (0..d).map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 }).collect();
            let s = solve(images, &signs, policy);
            (signs, s)
        })
        .collect();

    let mut out = Stabilizer { order: None, positive_dimension: None, sign_vectors: Vec::new(), representatives: Vec::new() };
    for (signs, solution) in solutions {
        match solution {
            Solution::None => {}
            Solution::Line(g) => {
                out.sign_vectors.push(signs.iter().map(|&s| s as i8).collect());
                out.representatives.push(g);
            }
            Solution::Family(dim) => {
                out.sign_vectors.push(signs.iter().map(|&s| s as i8).collect());
                out.positive_dimension = Some(out.positive_dimension.unwrap_or(0).max(dim));
            }
        }
    }
    if out.positive_dimension.is_none() {
        let per_line = if spec.kind == GroupKind::SL { 2 } else { 1 };
        out.order = Some(per_line * out.representatives.len());
    }
    Ok(out)
}
