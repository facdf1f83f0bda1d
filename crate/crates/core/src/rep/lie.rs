use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CMatrix, CVector, RepError};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    GL,
    SL,
    PSL,
}

/// A complex matrix group `GL(n)`, `SL(n)` or `PSL(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub n: usize,
}

impl GroupSpec {
    pub fn new(kind: GroupKind, n: usize) -> Result<Self, RepError> {
        if n < 2 {
            return Err(RepError::MatrixSizeTooSmall(n));
        }
        Ok(Self { kind, n })
    }

    pub fn sl2() -> Self {
        Self { kind: GroupKind::SL, n: 2 }
    }

    pub fn psl2() -> Self {
        Self { kind: GroupKind::PSL, n: 2 }
    }

    pub fn gl(n: usize) -> Self {
        Self { kind: GroupKind::GL, n }
    }

    /// Complex dimension of the group, i.e. of its Lie algebra.
    pub fn lie_dim(&self) -> usize {
        match self.kind {
            GroupKind::GL => self.n * self.n,
            GroupKind::SL | GroupKind::PSL => self.n * self.n - 1,
        }
    }

    /// Dimension of the center of the Lie algebra.
    pub fn center_dim(&self) -> usize {
        match self.kind {
            GroupKind::GL => 1,
            GroupKind::SL | GroupKind::PSL => 0,
        }
    }

    /// Order of the center of the matrix group, when finite.
    pub fn center_order(&self) -> Option<usize> {
        match self.kind {
            GroupKind::GL => None,
            GroupKind::SL => Some(self.n),
            GroupKind::PSL => Some(1),
        }
    }

    pub fn is_rank_one(&self) -> bool {
        self.n == 2 && matches!(self.kind, GroupKind::SL | GroupKind::PSL)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            GroupKind::GL => "GL",
            GroupKind::SL => "SL",
            GroupKind::PSL => "PSL",
        };
        write!(f, "{kind}({},C)", self.n)
    }
}

impl FromStr for GroupSpec {
    type Err = RepError;

    /// Accepts `SL(2,C)`, `GL(3,C)`, `PSL(2,C)`; the `,C` is optional.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RepError::BadGroup(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let open = compact.find('(').ok_or_else(bad)?;
        let inner = compact[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let kind = match &compact[..open] {
            "GL" => GroupKind::GL,
            "SL" => GroupKind::SL,
            "PSL" => GroupKind::PSL,
            _ => return Err(bad()),
        };
        let n_text = match inner.split_once(',') {
            Some((n, field)) if field == "C" => n,
            Some(_) => return Err(bad()),
            None => inner,
        };
        let n: usize = n_text.parse().map_err(|_| bad())?;
        GroupSpec::new(kind, n)
    }
}

pub fn pauli() -> [CMatrix; 3] {
    [
        DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        DMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        DMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    ]
}

/// A fixed ordered basis of the Lie algebra together with the coordinate map.
///
/// Basis order:
/// * `SL(2)`, `PSL(2)`: `(σ₁, σ₂, σ₃)`.
/// * `GL(2)`: `(I, σ₁, σ₂, σ₃)`.
/// * `n ≥ 3`: for GL the identity first; then the off-diagonal elementary
///   matrices `E_ij` (row-major, `i ≠ j`); then `E_kk − E_(k+1)(k+1)`.
///
/// The first `center_dim` vectors span the center, the rest span `[g, g]`.
#[derive(Clone, Debug)]
pub struct LieBasis {
    spec: GroupSpec,
    elements: Vec<CMatrix>,
    // m × n² left inverse of the matrix whose columns are vec(elements).
    coordinates: CMatrix,
    trace_gram: CMatrix,
}

impl LieBasis {
    pub fn new(spec: GroupSpec) -> Self {
        let n = spec.n;
        let mut elements = Vec::with_capacity(spec.lie_dim());
        if spec.kind == GroupKind::GL {
            elements.push(CMatrix::identity(n, n));
        }
        if n == 2 {
            elements.extend(pauli());
        } else {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let mut e = CMatrix::zeros(n, n);
                        e[(i, j)] = ONE;
                        elements.push(e);
                    }
                }
            }
            for k in 0..n - 1 {
                let mut e = CMatrix::zeros(n, n);
                e[(k, k)] = ONE;
                e[(k + 1, k + 1)] = -ONE;
                elements.push(e);
            }
        }
        let m = elements.len();
        let mut stacked = CMatrix::zeros(n * n, m);
        for (k, e) in elements.iter().enumerate() {
            stacked.column_mut(k).copy_from_slice(e.as_slice());
        }
        let adj = stacked.adjoint();
        let coordinates = (&adj * &stacked)
            .try_inverse()
            .expect("basis matrices are linearly independent")
            * adj;
        let trace_gram = CMatrix::from_fn(m, m, |a, b| (&elements[a] * &elements[b]).trace());
        Self { spec, elements, coordinates, trace_gram }
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    /// Coordinates of a matrix in this basis (least squares; exact for
    /// members of the Lie algebra).
    pub fn coordinates(&self, x: &CMatrix) -> CVector {
        let vec = CVector::from_column_slice(x.as_slice());
        &self.coordinates * vec
    }

    pub fn matrix(&self, coords: &CVector) -> CMatrix {
        let n = self.spec.n;
        let mut out = CMatrix::zeros(n, n);
        for (c, e) in coords.iter().zip(&self.elements) {
            out += e * *c;
        }
        out
    }

    /// Gram matrix of the trace form `B(X, Y) = tr(XY)` in this basis.
    pub fn trace_gram(&self) -> &CMatrix {
        &self.trace_gram
    }

    /// `B(u, v)` for coordinate vectors.
    pub fn trace_form(&self, u: &CVector, v: &CVector) -> Complex64 {
        (u.transpose() * &self.trace_gram * v)[(0, 0)]
    }

    /// The matrix of `ξ ↦ g ξ g⁻¹` given `g` and its inverse.
    pub fn adjoint_with_inverse(&self, g: &CMatrix, g_inv: &CMatrix) -> CMatrix {
        let m = self.dim();
        let mut out = CMatrix::zeros(m, m);
        for (k, e) in self.elements.iter().enumerate() {
            let conj = g * e * g_inv;
            out.set_column(k, &self.coordinates(&conj));
        }
        out
    }
}

/// The ordered basis matrices of the Lie algebra of `spec`.
pub fn lie_basis(spec: GroupSpec) -> Vec<CMatrix> {
    LieBasis::new(spec).elements
}

/// Relative size below which a matrix is treated as singular.
const SINGULAR_RTOL: f64 = 1e-12;

pub(crate) fn checked_inverse(g: &CMatrix) -> Result<CMatrix, RepError> {
    let n = g.nrows();
    if n != g.ncols() {
        return Err(RepError::NotSquare);
    }
    let det = g.determinant();
    let scale = g.norm().max(f64::MIN_POSITIVE).powi(n as i32);
    if det.norm() <= SINGULAR_RTOL * scale {
        return Err(RepError::Singular);
    }
    g.clone().try_inverse().ok_or(RepError::Singular)
}

/// The adjoint operator `Ad_g` on the Lie algebra of `spec`.
pub fn adjoint_operator(g: &CMatrix, spec: GroupSpec) -> Result<CMatrix, RepError> {
    if g.nrows() != spec.n || g.ncols() != spec.n {
        return Err(RepError::WrongSize { expected: spec.n, rows: g.nrows(), cols: g.ncols() });
    }
    let g_inv = checked_inverse(g)?;
    Ok(LieBasis::new(spec).adjoint_with_inverse(g, &g_inv))
}
