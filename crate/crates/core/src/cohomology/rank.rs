//! Numerical rank and subspaces from the singular value decomposition.

use num_complex::Complex64;
use serde::Serialize;

use crate::rep::{CMatrix, CVector};

/// Cutoff rule for deciding which singular values count as zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RankPolicy {
    /// Singular values at or below `rel_tol · σ_max` are dropped.
    pub rel_tol: f64,
    /// Cutoff used when it exceeds the relative one (e.g. `σ_max = 0`).
    pub abs_floor: f64,
    /// Gap ratios below this raise a warning.
    pub min_gap_ratio: f64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        Self { rel_tol: 1e-9, abs_floor: 1e-12, min_gap_ratio: 1e6 }
    }
}

impl RankPolicy {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }

    pub fn cutoff(&self, sigma_max: f64) -> f64 {
        (self.rel_tol * sigma_max).max(self.abs_floor)
    }
}

/// One rank decision with its singular-value diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankDecision {
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub sigma_max: f64,
    pub cutoff: f64,
    pub smallest_kept: Option<f64>,
    pub largest_dropped: Option<f64>,
    /// `smallest_kept / largest_dropped`; `None` when either side is empty
    /// or the dropped values are exactly zero.
    pub gap_ratio: Option<f64>,
    pub warning: bool,
}

impl RankDecision {
    /// The gap ratio with undefined or unbounded gaps reported as infinity.
    pub fn effective_gap(&self) -> f64 {
        self.gap_ratio.unwrap_or(f64::INFINITY)
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank
    }

    fn from_singular_values(values: &[f64], rows: usize, cols: usize, policy: &RankPolicy) -> Self {
        let sigma_max = values.first().copied().unwrap_or(0.0);
        let cutoff = policy.cutoff(sigma_max);
        let rank = values.iter().take_while(|&&s| s > cutoff).count();
        let smallest_kept = rank.checked_sub(1).map(|k| values[k]);
        let largest_dropped = values.get(rank).copied();
        let gap_ratio = match (smallest_kept, largest_dropped) {
            (Some(k), Some(d)) if d > 0.0 => Some(k / d),
            _ => None,
        };
        let warning = gap_ratio.is_some_and(|g| g < policy.min_gap_ratio);
        Self { rank, rows, cols, sigma_max, cutoff, smallest_kept, largest_dropped, gap_ratio, warning }
    }
}

fn singular_values(matrix: &CMatrix) -> Vec<f64> {
    if matrix.is_empty() {
        return Vec::new();
    }
    matrix.clone().svd(false, false).singular_values.iter().copied().collect()
}

/// Rank as the count of singular values above the policy cutoff.
pub fn numeric_rank(matrix: &CMatrix, policy: &RankPolicy) -> RankDecision {
    RankDecision::from_singular_values(&singular_values(matrix), matrix.nrows(), matrix.ncols(), policy)
}

/// Orthonormal basis of the (numerical) kernel, from right singular vectors.
pub fn null_space(matrix: &CMatrix, policy: &RankPolicy) -> (RankDecision, Vec<CVector>) {
    let (rows, cols) = matrix.shape();
    if cols == 0 {
        return (RankDecision::from_singular_values(&[], rows, cols, policy), Vec::new());
    }
    // Pad with zero rows so the decomposition returns a full `V`.
    let padded = if rows < cols {
        let mut p = CMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(matrix);
        p
    } else {
        matrix.clone()
    };
    let svd = padded.svd(false, true);
    let all: Vec<f64> = svd.singular_values.iter().copied().collect();
    let decision = RankDecision::from_singular_values(&all[..rows.min(cols)], rows, cols, policy);
    let v_t = svd.v_t.expect("requested V");
    let basis = (decision.rank..cols)
        .map(|k| CVector::from_iterator(cols, v_t.row(k).iter().map(|z| z.conj())))
        .collect();
    (decision, basis)
}

/// Orthonormal basis of the (numerical) column space, from left singular
/// vectors.
pub fn column_space(matrix: &CMatrix, policy: &RankPolicy) -> (RankDecision, Vec<CVector>) {
    let (rows, cols) = matrix.shape();
    if rows == 0 || cols == 0 {
        return (RankDecision::from_singular_values(&[], rows, cols, policy), Vec::new());
    }
    let svd = matrix.clone().svd(true, false);
    let values: Vec<f64> = svd.singular_values.iter().copied().collect();
    let decision = RankDecision::from_singular_values(&values, rows, cols, policy);
    let u = svd.u.expect("requested U");
    let basis = (0..decision.rank).map(|k| u.column(k).into_owned()).collect();
    (decision, basis)
}

/// Orthonormal basis of the orthogonal complement of the column space.
pub fn cokernel(matrix: &CMatrix, policy: &RankPolicy) -> (RankDecision, Vec<CVector>) {
    let (_, basis) = null_space(&matrix.adjoint(), policy);
    (numeric_rank(matrix, policy), basis)
}

/// Stacks operators vertically.
pub fn stack_rows(blocks: &[CMatrix], cols: usize) -> CMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(rows, cols);
    let mut offset = 0;
    for b in blocks {
        out.view_mut((offset, 0), (b.nrows(), cols)).copy_from(b);
        offset += b.nrows();
    }
    out
}

/// Common kernel of several operators on a space of dimension `dim`.
pub fn kernel_intersection(ops: &[CMatrix], dim: usize, policy: &RankPolicy) -> (RankDecision, Vec<CVector>) {
    null_space(&stack_rows(ops, dim), policy)
}

/// Columns as a matrix.
pub fn basis_matrix(vectors: &[CVector], dim: usize) -> CMatrix {
    let mut out = CMatrix::zeros(dim, vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        out.set_column(k, v);
    }
    out
}

/// Rescales a vector so its largest-modulus entry is real and positive.
pub fn normalize_phase(v: &CVector) -> CVector {
    let Some(pivot) = v.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())) else {
        return v.clone();
    };
    if pivot.norm() == 0.0 {
        return v.clone();
    }
    v * (pivot.conj() / Complex64::new(pivot.norm(), 0.0))
}
