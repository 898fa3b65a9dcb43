use super::matrix::{axpy, dot, norm, ComplexMatrix, C64, ZERO};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default orthonormality tolerance for frames.
pub const FRAME_TOL: f64 = 1e-10;

/// A matrix with orthonormal columns. It stands for both the subspace the
/// columns span and the isometry from `C^rank` onto that subspace.
///
/// Serializes column-major: `{ambient_dim, rank, columns}` with each column a
/// list of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "FrameRepr", try_from = "FrameRepr")]
pub struct Frame {
    q: ComplexMatrix,
}

#[derive(Serialize, Deserialize)]
struct FrameRepr {
    ambient_dim: usize,
    rank: usize,
    columns: Vec<Vec<C64>>,
}

impl From<Frame> for FrameRepr {
    fn from(f: Frame) -> Self {
        Self {
            ambient_dim: f.ambient_dim(),
            rank: f.rank(),
            columns: f.q.columns(),
        }
    }
}

impl TryFrom<FrameRepr> for Frame {
    type Error = Error;

    fn try_from(r: FrameRepr) -> Result<Self> {
        if r.columns.len() != r.rank || r.columns.iter().any(|c| c.len() != r.ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: format!("{} columns of length {}", r.rank, r.ambient_dim),
                actual: format!("{} columns", r.columns.len()),
            });
        }
        Frame::new(ComplexMatrix::from_columns(r.ambient_dim, &r.columns), FRAME_TOL)
    }
}

impl Frame {
    /// Wraps `q` after checking `‖Q*Q - I‖ ≤ tol` (entrywise max).
    pub fn new(q: ComplexMatrix, tol: f64) -> Result<Self> {
        if !q.is_finite() {
            return Err(Error::NonFinite);
        }
        let frame = Self { q };
        let deviation = frame.orthonormality_error();
        if deviation > tol {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(frame)
    }

    pub(crate) fn from_orthonormal_unchecked(q: ComplexMatrix) -> Self {
        Self { q }
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            q: ComplexMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            q: ComplexMatrix::identity(n),
        }
    }

    /// Frame spanned by the listed standard basis vectors, in the given order.
    pub fn standard(ambient_dim: usize, indices: &[usize]) -> Self {
        let mut q = ComplexMatrix::zeros(ambient_dim, indices.len());
        for (j, &i) in indices.iter().enumerate() {
            q[(i, j)] = C64::new(1.0, 0.0);
        }
        Self { q }
    }

    /// Gram-Schmidt (with reorthogonalization) over the given vectors.
    /// Vectors that are numerically dependent on their predecessors are dropped.
    pub fn orthonormalize(ambient_dim: usize, vectors: &[Vec<C64>]) -> Self {
        let basis = orthonormal_span(ambient_dim, vectors, 1e-10);
        Self {
            q: ComplexMatrix::from_columns(ambient_dim, &basis),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.q.rows()
    }

    pub fn rank(&self) -> usize {
        self.q.cols()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.q
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.q
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        self.q.column(j)
    }

    /// Entrywise max of `|Q*Q - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let g = self.q.adjoint_matmul(&self.q);
        let mut dev: f64 = 0.0;
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((g[(i, j)] - C64::new(target, 0.0)).norm());
            }
        }
        dev
    }

    /// `Q* v`.
    pub fn coefficients(&self, v: &[C64]) -> Vec<C64> {
        self.q.adjoint_matvec(v)
    }

    /// Columns of `self` followed by those of `other`; checked for orthonormality.
    pub fn concat(&self, other: &Frame, tol: f64) -> Result<Frame> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: format!("ambient dim {}", self.ambient_dim()),
                actual: format!("ambient dim {}", other.ambient_dim()),
            });
        }
        let mut cols = self.q.columns();
        cols.extend(other.q.columns());
        Frame::new(ComplexMatrix::from_columns(self.ambient_dim(), &cols), tol)
    }

    /// Keeps the listed columns.
    pub fn select(&self, columns: &[usize]) -> Frame {
        let cols: Vec<Vec<C64>> = columns.iter().map(|&j| self.q.column(j)).collect();
        Frame {
            q: ComplexMatrix::from_columns(self.ambient_dim(), &cols),
        }
    }
}

/// Orthonormal basis of the span of `vectors`, processed in order.
pub(crate) fn orthonormal_span(ambient_dim: usize, vectors: &[Vec<C64>], rel_drop: f64) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        assert_eq!(v.len(), ambient_dim);
        let original = norm(v);
        if original == 0.0 {
            continue;
        }
        let mut w = v.clone();
        super::matrix::project_out(&mut w, &basis);
        let n = norm(&w);
        if n > rel_drop * original {
            w.iter_mut().for_each(|z| *z /= n);
            basis.push(w);
        }
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of `f`.
///
/// Built from a Householder QR of the frame's columns: the trailing
/// `ambient_dim - rank` columns of the full orthogonal factor.
pub fn orthonormal_complement(f: &Frame) -> Frame {
    let n = f.ambient_dim();
    let k = f.rank();
    if k == 0 {
        return Frame::identity(n);
    }
    if k >= n {
        return Frame::empty(n);
    }
    let mut work = f.q.clone();
    let mut reflectors: Vec<(usize, Vec<C64>, f64)> = Vec::with_capacity(k);
    for j in 0..k {
        let x0 = work[(j, j)];
        let sigma: f64 = (j + 1..n).map(|i| work[(i, j)].norm_sqr()).sum();
        if sigma == 0.0 {
            continue;
        }
        let alpha_norm = (x0.norm_sqr() + sigma).sqrt();
        let phase = if x0 == ZERO { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * alpha_norm;
        let mut v: Vec<C64> = (j..n).map(|i| work[(i, j)]).collect();
        v[0] = x0 - alpha;
        let tau = 2.0 / (v[0].norm_sqr() + sigma);
        for c in j..k {
            let col: Vec<C64> = (j..n).map(|i| work[(i, c)]).collect();
            let s = dot(&v, &col) * tau;
            for (t, i) in (j..n).enumerate() {
                work[(i, c)] -= s * v[t];
            }
        }
        reflectors.push((j, v, tau));
    }
    let mut columns = Vec::with_capacity(n - k);
    for j in k..n {
        let mut e = vec![ZERO; n];
        e[j] = C64::new(1.0, 0.0);
        for (start, v, tau) in reflectors.iter().rev() {
            let seg = &mut e[*start..];
            let s = dot(v, seg) * *tau;
            axpy(-s, v, seg);
        }
        columns.push(e);
    }
    Frame {
        q: ComplexMatrix::from_columns(n, &columns),
    }
}

/// The compression `E* A E` of a square `A` onto the frame `E`.
pub fn compress(a: &ComplexMatrix, e: &Frame) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    if n != e.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{} operator", e.ambient_dim(), e.ambient_dim()),
            actual: format!("{n}x{n}"),
        });
    }
    Ok(e.q.adjoint_matmul(&a.matmul(&e.q)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_e1() {
        let f = Frame::standard(2, &[0]);
        let g = orthonormal_complement(&f);
        assert_eq!(g.rank(), 1);
        let v = g.column(0);
        assert!(v[0].norm() < 1e-15);
        assert!((v[1].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complement_of_full_frame_is_empty() {
        let g = orthonormal_complement(&Frame::identity(4));
        assert_eq!(g.rank(), 0);
        assert_eq!(g.ambient_dim(), 4);
    }

    #[test]
    fn compress_identity_frame_and_coordinate() {
        let a = ComplexMatrix::from_real_diag(&[5.0, 7.0]);
        assert_eq!(compress(&a, &Frame::identity(2)).unwrap(), a);
        let c = compress(&a, &Frame::standard(2, &[0])).unwrap();
        assert_eq!(c.rows(), 1);
        assert!((c[(0, 0)] - C64::new(5.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn compress_rejects_mismatch() {
        let a = ComplexMatrix::identity(3);
        assert!(matches!(compress(&a, &Frame::identity(2)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn frame_new_rejects_non_orthonormal() {
        let q = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 1.0]]);
        assert!(matches!(Frame::new(q, FRAME_TOL), Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn orthonormalize_drops_dependent() {
        let v1 = vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
        let v2 = vec![C64::new(2.0, 0.0), C64::new(2.0, 0.0)];
        let f = Frame::orthonormalize(2, &[v1, v2]);
        assert_eq!(f.rank(), 1);
    }
}
