//! Unitary equalization of a diagonal to the trace mean.
//!
//! After shifting by the mean, the diagonal entries `d_k` of the still
//! active coordinates have zero sum. The entry of largest modulus `d_i` is
//! moved to zero by a unitary acting on two or three coordinates: either on
//! `{i, j}` when `0` lies between `d_i` and `d_j`, or on `{i, j, m}` when the
//! ray from `d_i` through `0` crosses the segment `[d_j, d_m]`. Coordinate
//! `i` is then retired, so at most `dim - 1` steps are needed.

use super::super::numrange::{geometry::segment_distance, realize_on_segment};
use crate::error::{Error, Result};
use crate::linalg::matrix::{unit_vector, ZERO};
use crate::linalg::{ComplexMatrix, Frame, C64};

/// Returns `(B, U)` with `B = U A U*` unitarily similar to `a` and every
/// diagonal entry of `B` equal to `Tr(A)/dim`.
pub fn parker_equalize(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = a.require_square()?;
    if n == 0 {
        return Err(Error::InvalidArgument("matrix must have dimension at least 1".into()));
    }
    let mean = a.trace() / n as f64;
    let mut b = a.clone();
    for i in 0..n {
        b[(i, i)] -= mean;
    }
    let mut u = ComplexMatrix::identity(n);
    let tol = 1e-13 * (1.0 + a.max_abs());
    let mut active: Vec<usize> = (0..n).collect();
    let mut steps = 0usize;

    while active.len() > 1 {
        steps += 1;
        if steps > n * n {
            return Err(Error::NoConvergence { what: "diagonal equalization" });
        }
        // largest deviation, lowest index on ties
        let (pos, i) = active
            .iter()
            .copied()
            .enumerate()
            .fold((0, active[0]), |best, (p, k)| {
                if b[(k, k)].norm() > b[(best.1, best.1)].norm() {
                    (p, k)
                } else {
                    best
                }
            });
        let di = b[(i, i)];
        if di.norm() <= tol {
            break;
        }
        let others: Vec<usize> = active.iter().copied().filter(|&k| k != i).collect();

        let pair = others
            .iter()
            .copied()
            .filter(|&j| segment_distance(di, b[(j, j)], ZERO).0 <= tol)
            .min_by(|&x, &y| b[(x, x)].norm().total_cmp(&b[(y, y)].norm()).reverse());
        let (coords, g) = if let Some(j) = pair {
            let local = principal(&b, &[i, j]);
            let g = realize_on_segment(&local, &unit_vector(2, 0), &unit_vector(2, 1), ZERO);
            (vec![i, j], g)
        } else {
            let (j, m, w) = ray_crossing(&b, di, &others, tol)
                .ok_or(Error::NoConvergence { what: "diagonal equalization" })?;
            let local = principal(&b, &[i, j, m]);
            let y = realize_on_segment(&local, &unit_vector(3, 1), &unit_vector(3, 2), w);
            let g = realize_on_segment(&local, &unit_vector(3, 0), &y, ZERO);
            (vec![i, j, m], g)
        };
        let q = complete_unitary(g);
        apply_local(&mut b, &mut u, &coords, &q);
        active.remove(pos);
    }

    for k in 0..n {
        b[(k, k)] += mean;
    }
    Ok((b, u))
}

/// Among segments `[d_j, d_m]` that cross the ray from `d_i` through `0`,
/// the one crossing farthest beyond the origin, with the crossing point.
fn ray_crossing(b: &ComplexMatrix, di: C64, others: &[usize], tol: f64) -> Option<(usize, usize, C64)> {
    // rotate so that d_i sits on the positive real axis; the ray is then the negative real axis
    let dir = di / di.norm();
    let rot = dir.conj();
    let mut best: Option<(f64, usize, usize)> = None;
    for (a, &j) in others.iter().enumerate() {
        let pj = b[(j, j)] * rot;
        for &m in &others[a + 1..] {
            let pm = b[(m, m)] * rot;
            if (pj.im > 0.0) == (pm.im > 0.0) && pj.im != 0.0 && pm.im != 0.0 {
                continue;
            }
            if pj.im == pm.im {
                continue;
            }
            let s = pj.im / (pj.im - pm.im);
            let x = pj.re + s * (pm.re - pj.re);
            if x <= tol && best.is_none_or(|(bx, _, _)| x < bx) {
                best = Some((x, j, m));
            }
        }
    }
    best.map(|(x, j, m)| (j, m, dir * x.min(0.0)))
}

fn principal(b: &ComplexMatrix, idx: &[usize]) -> ComplexMatrix {
    ComplexMatrix::from_fn(idx.len(), idx.len(), |r, c| b[(idx[r], idx[c])])
}

/// Unitary with first column `g`.
fn complete_unitary(g: Vec<C64>) -> ComplexMatrix {
    let k = g.len();
    if k == 2 {
        return ComplexMatrix::from_rows(&[[g[0], -g[1].conj()], [g[1], g[0].conj()]]);
    }
    let mut vectors = vec![g];
    vectors.extend((0..k).map(|i| unit_vector(k, i)));
    Frame::orthonormalize(k, &vectors).into_matrix()
}

/// `B ← Q* B Q` and `U ← Q* U` with `Q` acting on the listed coordinates.
fn apply_local(b: &mut ComplexMatrix, u: &mut ComplexMatrix, coords: &[usize], q: &ComplexMatrix) {
    let n = b.rows();
    let k = coords.len();
    let mut tmp = vec![ZERO; k];
    for m in [&mut *b, &mut *u] {
        for c in 0..n {
            for (r, t) in tmp.iter_mut().enumerate() {
                *t = (0..k).map(|s| q[(s, r)].conj() * m[(coords[s], c)]).sum();
            }
            for (r, &t) in tmp.iter().enumerate() {
                m[(coords[r], c)] = t;
            }
        }
    }
    for r in 0..n {
        for (c, t) in tmp.iter_mut().enumerate() {
            *t = (0..k).map(|s| b[(r, coords[s])] * q[(s, c)]).sum();
        }
        for (c, &t) in tmp.iter().enumerate() {
            b[(r, coords[c])] = t;
        }
    }
}
