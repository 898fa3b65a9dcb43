//! Hermitian eigensolvers.
//!
//! Dense input is reduced to a real symmetric tridiagonal matrix with
//! complex Householder reflectors followed by a diagonal phase scaling.
//! Columns that are already reduced are skipped, so inputs that are
//! tridiagonal to begin with (real parts of shift-like operators) cost
//! `O(n^2)` rather than `O(n^3)`. Full spectra come from implicit QL;
//! the extreme eigenpair used by support-function sweeps comes from
//! Sturm bisection and inverse iteration.

use super::frame::Frame;
use super::matrix::{dot, normalize, ComplexMatrix, C64, ONE, ZERO};
use super::Tolerances;
use crate::error::{Error, Result};

const MAX_QL_ITERATIONS: usize = 60;

struct Reflector {
    start: usize,
    v: Vec<C64>,
    tau: f64,
}

/// `Q* H Q = D T D*` with `T` real symmetric tridiagonal.
pub(crate) struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    phases: Vec<C64>,
    reflectors: Vec<Reflector>,
}

impl Tridiagonal {
    pub fn new(h: &ComplexMatrix) -> Self {
        let n = h.rows();
        // copied lazily: already-tridiagonal input never needs a working copy
        let mut work: Option<ComplexMatrix> = None;
        let mut reflectors = Vec::new();
        let mut sub = vec![ZERO; n.saturating_sub(1)];

        for k in 0..n.saturating_sub(1) {
            let m = n - k - 1;
            let a = work.as_ref().unwrap_or(h);
            // Hermitian: column k below the diagonal is the conjugate of row k
            let x0 = a[(k + 1, k)];
            let sigma: f64 = a.row(k)[k + 2..].iter().map(|z| z.norm_sqr()).sum();
            if sigma == 0.0 {
                sub[k] = x0;
                continue;
            }
            let a = work.get_or_insert_with(|| h.clone());
            let alpha_norm = (x0.norm_sqr() + sigma).sqrt();
            let phase = if x0 == ZERO { ONE } else { x0 / x0.norm() };
            let alpha = -phase * alpha_norm;
            let mut v = Vec::with_capacity(m);
            v.push(x0 - alpha);
            v.extend(a.row(k)[k + 2..].iter().map(|z| z.conj()));
            let tau = 2.0 / (v[0].norm_sqr() + sigma);

            // S <- P S P on the trailing block, P = I - tau v v*
            let off = k + 1;
            let mut p = vec![ZERO; m];
            for (i, pi) in p.iter_mut().enumerate() {
                let row = &a.row(off + i)[off..];
                *pi = row.iter().zip(&v).fold(ZERO, |acc, (s, vj)| acc + s * vj) * tau;
            }
            let kk = dot(&v, &p) * (tau * 0.5);
            let w: Vec<C64> = p.iter().zip(&v).map(|(pi, vi)| pi - kk * vi).collect();
            for i in 0..m {
                let (vi, wi) = (v[i], w[i]);
                for j in 0..m {
                    let upd = vi * w[j].conj() + wi * v[j].conj();
                    a[(off + i, off + j)] -= upd;
                }
            }
            for i in k + 2..n {
                a[(i, k)] = ZERO;
                a[(k, i)] = ZERO;
            }
            a[(k + 1, k)] = alpha;
            a[(k, k + 1)] = alpha.conj();
            sub[k] = alpha;
            reflectors.push(Reflector { start: off, v, tau });
        }

        let a = work.as_ref().unwrap_or(h);
        let diag = (0..n).map(|i| a[(i, i)].re).collect();
        Self::assemble(diag, &sub, reflectors)
    }

    /// Hermitian tridiagonal given by its real diagonal and complex
    /// subdiagonal `sub[k] = H[k+1, k]`.
    pub fn from_band(diag: Vec<f64>, sub: &[C64]) -> Self {
        Self::assemble(diag, sub, Vec::new())
    }

    fn assemble(diag: Vec<f64>, sub: &[C64], reflectors: Vec<Reflector>) -> Self {
        let n = diag.len();
        let mut phases = vec![ONE; n];
        let mut off = vec![0.0; n.saturating_sub(1)];
        for k in 0..n.saturating_sub(1) {
            let e = sub[k];
            let mag = e.norm();
            off[k] = mag;
            phases[k + 1] = if mag > 0.0 { phases[k] * (e / mag) } else { phases[k] };
        }
        Self {
            diag,
            off,
            phases,
            reflectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Maps an eigenvector of the real tridiagonal back to the original basis.
    pub fn back_transform(&self, y: &[f64]) -> Vec<C64> {
        let mut z: Vec<C64> = y.iter().zip(&self.phases).map(|(&yi, &d)| d * yi).collect();
        for r in self.reflectors.iter().rev() {
            let seg = &mut z[r.start..];
            let c = dot(&r.v, seg) * r.tau;
            for (zi, vi) in seg.iter_mut().zip(&r.v) {
                *zi -= c * vi;
            }
        }
        z
    }

    /// Number of eigenvalues strictly below `x`.
    fn sturm_count(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let denom = if q.abs() < tiny { tiny.copysign(q) } else { q };
            q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / denom;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1] } else { 0.0 } + if i + 1 < n { self.off[i] } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Largest eigenvalue by bisection on the Sturm count.
    pub fn largest_eigenvalue(&self) -> f64 {
        let n = self.dim();
        let (mut lo, mut hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * scale {
                break;
            }
            if self.sturm_count(mid) < n {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Inverse iteration for the eigenvector of the tridiagonal at `lambda`.
    pub fn inverse_iteration(&self, lambda: f64) -> Vec<f64> {
        let n = self.dim();
        if n == 1 {
            return vec![1.0];
        }
        let (lo, hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(1e-150);
        let pivot_floor = f64::EPSILON * scale;
        // deterministic start with no special alignment to the coordinate axes
        let mut y: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i as f64) * 0.754_877_666).sin()).collect();
        for _ in 0..4 {
            let mut next = solve_shifted_tridiagonal(&self.diag, &self.off, lambda, &y, pivot_floor);
            let nrm = next.iter().map(|v| v * v).sum::<f64>().sqrt();
            if !nrm.is_finite() || nrm == 0.0 {
                break;
            }
            next.iter_mut().for_each(|v| *v /= nrm);
            y = next;
        }
        y
    }
}

/// Solves `(T - s I) x = b` by Gaussian elimination with partial pivoting.
fn solve_shifted_tridiagonal(diag: &[f64], off: &[f64], s: f64, b: &[f64], pivot_floor: f64) -> Vec<f64> {
    let n = diag.len();
    // rows carry up to three nonzeros after pivoting: (main, super, super2)
    let mut d: Vec<f64> = diag.iter().map(|x| x - s).collect();
    let mut du: Vec<f64> = off.to_vec();
    du.push(0.0);
    let mut du2 = vec![0.0; n];
    let mut dl: Vec<f64> = off.to_vec();
    let mut x = b.to_vec();

    for i in 0..n - 1 {
        if dl[i].abs() > d[i].abs() {
            // swap rows i and i+1
            let (a0, a1, a2) = (d[i], du[i], du2[i]);
            d[i] = dl[i];
            du[i] = d[i + 1];
            du2[i] = du[i + 1];
            x.swap(i, i + 1);
            let factor = a0 / d[i];
            d[i + 1] = a1 - factor * du[i];
            du[i + 1] = a2 - factor * du2[i];
            x[i + 1] -= factor * x[i];
            dl[i] = factor;
        } else {
            if d[i] == 0.0 {
                d[i] = pivot_floor;
            }
            let factor = dl[i] / d[i];
            d[i + 1] -= factor * du[i];
            x[i + 1] -= factor * x[i];
            dl[i] = factor;
        }
    }
    if d[n - 1].abs() < pivot_floor {
        d[n - 1] = pivot_floor.copysign(if d[n - 1] == 0.0 { 1.0 } else { d[n - 1] });
    }
    for i in (0..n).rev() {
        if d[i].abs() < pivot_floor {
            d[i] = pivot_floor.copysign(if d[i] == 0.0 { 1.0 } else { d[i] });
        }
        let mut acc = x[i];
        if i + 1 < n {
            acc -= du[i] * x[i + 1];
        }
        if i + 2 < n {
            acc -= du2[i] * x[i + 2];
        }
        x[i] = acc / d[i];
    }
    x
}

/// Implicit QL on a symmetric tridiagonal. Returns ascending eigenvalues and
/// the eigenvectors as rows of `vt` (row `i` is the eigenvector of value `i`).
fn tridiagonal_ql(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);
    let mut vt: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut r = vec![0.0; n];
            r[i] = 1.0;
            r
        })
        .collect();

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= f64::EPSILON * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_ITERATIONS {
                    return Err(Error::NoConvergence { what: "tridiagonal QL" });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    let (lo, hi) = vt.split_at_mut(i + 1);
                    let (vi, vi1) = (&mut lo[i], &mut hi[0]);
                    for (a, b) in vi.iter_mut().zip(vi1.iter_mut()) {
                        let hk = *b;
                        *b = s * *a + c * hk;
                        *a = c * *a - s * hk;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= f64::EPSILON * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = order.iter().map(|&i| vt[i].clone()).collect();
    Ok((values, vectors))
}

fn check_hermitian(h: &ComplexMatrix, tol: &Tolerances) -> Result<usize> {
    let n = h.require_square()?;
    if !h.is_finite() {
        return Err(Error::NonFinite);
    }
    let deviation = h.hermitian_deviation();
    if deviation > tol.equality * (1.0 + h.max_abs()) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(n)
}

/// Eigenvalues in ascending order with an orthonormal eigenbasis.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Frame,
}

impl HermitianEigen {
    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.vectors.matrix().column(i)
    }

    /// Largest `‖H v_i - λ_i v_i‖` over all pairs.
    pub fn max_residual(&self, h: &ComplexMatrix) -> f64 {
        (0..self.values.len())
            .map(|i| {
                let v = self.vector(i);
                let hv = h.matvec(&v);
                hv.iter()
                    .zip(&v)
                    .map(|(a, b)| (a - b * self.values[i]).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(h: &ComplexMatrix, tol: &Tolerances) -> Result<HermitianEigen> {
    let n = check_hermitian(h, tol)?;
    if n == 0 {
        return Ok(HermitianEigen {
            values: Vec::new(),
            vectors: Frame::empty(0),
        });
    }
    let tri = Tridiagonal::new(&h.hermitian_part());
    let (values, ys) = tridiagonal_ql(&tri.diag, &tri.off)?;
    let columns: Vec<Vec<C64>> = ys.iter().map(|y| tri.back_transform(y)).collect();
    let q = ComplexMatrix::from_columns(n, &columns);
    Ok(HermitianEigen {
        values,
        vectors: Frame::from_orthonormal_unchecked(q),
    })
}

/// Largest eigenvalue of a Hermitian matrix with a unit eigenvector.
///
/// Any vector of a degenerate top eigenspace may be returned.
pub fn top_eigenpair(h: &ComplexMatrix) -> Result<(f64, Vec<C64>)> {
    let n = h.require_square()?;
    if n == 0 {
        return Err(Error::DimensionMismatch {
            expected: "non-empty matrix".into(),
            actual: "0x0".into(),
        });
    }
    if !h.is_finite() {
        return Err(Error::NonFinite);
    }
    let v = top_vector(&Tridiagonal::new(h))?;
    // report the Rayleigh quotient so that value and vector agree exactly
    let rq = h.quadratic_form(&v).re;
    Ok((rq, v))
}

/// Top unit eigenvector of the Hermitian tridiagonal with real diagonal
/// `diag` and subdiagonal `sub[k] = H[k+1, k]`, in `O(n)` per bisection step.
pub(crate) fn top_eigenvector_band(diag: Vec<f64>, sub: &[C64]) -> Result<Vec<C64>> {
    if diag.is_empty() || sub.len() + 1 != diag.len() {
        return Err(Error::LengthMismatch {
            left: diag.len(),
            right: sub.len() + 1,
        });
    }
    if diag.iter().any(|d| !d.is_finite()) || sub.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    top_vector(&Tridiagonal::from_band(diag, sub))
}

fn top_vector(tri: &Tridiagonal) -> Result<Vec<C64>> {
    let lambda = tri.largest_eigenvalue();
    let y = tri.inverse_iteration(lambda);
    let mut v = tri.back_transform(&y);
    if normalize(&mut v) == 0.0 || v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NoConvergence { what: "inverse iteration" });
    }
    Ok(v)
}

/// Hermitian PSD square root; small negative eigenvalues are clamped to zero.
pub fn psd_sqrt(p: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let n = check_hermitian(p, tol)?;
    let eig = hermitian_eig(p, tol)?;
    if let Some(&min) = eig.values.first() {
        if min < -100.0 * tol.eig_residual {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
    }
    let q = eig.vectors.matrix();
    let mut scaled = q.clone();
    for (j, &lam) in eig.values.iter().enumerate() {
        let r = lam.max(0.0).sqrt();
        for i in 0..n {
            scaled[(i, j)] *= r;
        }
    }
    let s = scaled.matmul(&q.adjoint());
    Ok(s.hermitian_part())
}

/// Eigendecomposition `N = W diag(μ) W*` of a normal matrix.
#[derive(Debug, Clone)]
pub struct NormalEigen {
    pub values: Vec<C64>,
    pub vectors: ComplexMatrix,
}

/// Diagonalizes a normal matrix through its commuting Cartesian parts.
///
/// `H = Re(e^{-iφ}N)` is diagonalized first at a generic angle; clusters of
/// nearly equal eigenvalues are then split by diagonalizing the compression
/// of `K = Im(e^{-iφ}N)` onto each cluster.
pub fn normal_eig(nmat: &ComplexMatrix, tol: &Tolerances) -> Result<NormalEigen> {
    let n = nmat.require_square()?;
    let scale = 1.0 + nmat.max_abs();
    let deviation = nmat.normality_deviation();
    if deviation > 1e-9 * scale {
        return Err(Error::NotNormal { deviation });
    }
    if n == 0 {
        return Ok(NormalEigen {
            values: Vec::new(),
            vectors: ComplexMatrix::zeros(0, 0),
        });
    }
    const GENERIC_ANGLE: f64 = 0.618_033_988_749_894_8;
    let rotated = nmat.scale(C64::from_polar(1.0, -GENERIC_ANGLE));
    let h = rotated.hermitian_part();
    let k = rotated.skew_part();
    let eig = hermitian_eig(&h, tol)?;
    let q = eig.vectors.matrix().clone();

    let cluster_tol = 1e-7 * scale;
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.values[end] - eig.values[end - 1] <= cluster_tol {
            end += 1;
        }
        let block = q.columns_range(start, end - start);
        if end - start == 1 {
            columns.push(block.column(0));
        } else {
            let kb = block.adjoint_matmul(&k.matmul(&block)).hermitian_part();
            let inner = hermitian_eig(&kb, tol)?;
            let rotated_block = block.matmul(inner.vectors.matrix());
            columns.extend(rotated_block.columns());
        }
        start = end;
    }
    let w = ComplexMatrix::from_columns(n, &columns);
    let values = columns.iter().map(|c| nmat.quadratic_form(c)).collect();
    Ok(NormalEigen { values, vectors: w })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn diagonal_input_sorted() {
        let h = ComplexMatrix::from_real_diag(&[3.0, 1.0, 2.0]);
        let eig = hermitian_eig(&h, &Tolerances::default()).unwrap();
        assert_eq!(eig.values.len(), 3);
        for (got, want) in eig.values.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-15);
        }
        // eigenvector of 1 is e2 up to phase
        assert!((eig.vector(0)[1].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn swap_matrix() {
        let h = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        let eig = hermitian_eig(&h, &Tolerances::default()).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
        let v0 = eig.vector(0);
        let r = 1.0 / 2f64.sqrt();
        // (1, -1)/√2 up to a unimodular factor
        assert!((v0[0] + v0[1]).norm() < 1e-14);
        assert!((v0[0].norm() - r).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&a, &Tolerances::default()), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn top_pair_of_tridiagonal_path() {
        // real part of the 3x3 shift: eigenvalues cos(kπ/4)
        let s = ComplexMatrix::from_real_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]);
        let (lam, v) = top_eigenpair(&s.hermitian_part()).unwrap();
        assert!((lam - (std::f64::consts::PI / 4.0).cos()).abs() < 1e-14);
        assert!((crate::linalg::matrix::norm(&v) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn top_pair_degenerate() {
        let h = ComplexMatrix::from_real_diag(&[1.0, 0.0, 1.0]);
        let (lam, v) = top_eigenpair(&h).unwrap();
        assert!((lam - 1.0).abs() < 1e-15);
        assert!(v[1].norm() < 1e-12);
    }

    #[test]
    fn psd_sqrt_diagonal_and_identity() {
        let tol = Tolerances::default();
        let s = psd_sqrt(&ComplexMatrix::from_real_diag(&[4.0, 9.0]), &tol).unwrap();
        assert!(s.max_abs_diff(&ComplexMatrix::from_real_diag(&[2.0, 3.0])) < 1e-14);
        let i3 = ComplexMatrix::identity(3);
        assert!(psd_sqrt(&i3, &tol).unwrap().max_abs_diff(&i3) < 1e-14);
    }

    #[test]
    fn psd_sqrt_rejects_negative() {
        let err = psd_sqrt(&ComplexMatrix::from_real_diag(&[1.0, -0.5]), &Tolerances::default()).unwrap_err();
        assert!(matches!(err, Error::NotPsd { .. }));
        // rounding-level negatives are clamped
        assert!(psd_sqrt(&ComplexMatrix::from_real_diag(&[1.0, -1e-12]), &Tolerances::default()).is_ok());
    }

    #[test]
    fn normal_eig_of_rotation() {
        let (cs, sn) = (0.5f64, 3f64.sqrt() / 2.0);
        let r = ComplexMatrix::from_real_rows(&[[cs, -sn], [sn, cs]]);
        let ne = normal_eig(&r, &Tolerances::default()).unwrap();
        let mut args: Vec<f64> = ne.values.iter().map(|z| z.arg()).collect();
        args.sort_by(f64::total_cmp);
        assert!((args[0] + std::f64::consts::FRAC_PI_3).abs() < 1e-12);
        assert!((args[1] - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
        let rebuilt = ne.vectors.matmul(&ComplexMatrix::from_diag(&ne.values)).matmul(&ne.vectors.adjoint());
        assert!(rebuilt.max_abs_diff(&r) < 1e-12);
    }

    #[test]
    fn normal_eig_degenerate_real_parts() {
        // eigenvalues i and -i share the real part 0 at angle 0 but not at the generic angle;
        // 0.5 and 0.5 are exactly degenerate
        let n = ComplexMatrix::from_diag(&[c(0.5, 0.0), c(0.0, 1.0), c(0.5, 0.0), c(0.0, -1.0)]);
        let ne = normal_eig(&n, &Tolerances::default()).unwrap();
        let rebuilt = ne.vectors.matmul(&ComplexMatrix::from_diag(&ne.values)).matmul(&ne.vectors.adjoint());
        assert!(rebuilt.max_abs_diff(&n) < 1e-12);
    }

    #[test]
    fn normal_eig_rejects_jordan_block() {
        let j = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(normal_eig(&j, &Tolerances::default()), Err(Error::NotNormal { .. })));
    }
}
