//! Realizing prescribed values `λ = ⟨h, Ah⟩` by unit vectors.
//!
//! The basic step works on two unit vectors `x`, `y` whose values
//! `z_x = ⟨x, Ax⟩`, `z_y = ⟨y, Ay⟩` bracket the target along a segment. After
//! rotating and translating so the segment lies on the real axis with the
//! target at the origin, the candidate `u = x + s e^{iφ} y` has an imaginary
//! part that is linear in `s` and killed by the choice of `φ`; the real part
//! is a quadratic in `s` with roots of opposite sign, so it has a real root.

use super::geometry::{chord, convex_hull, segment_distance, signed_margin};
use super::hull::numerical_range_hull;
use crate::error::{Error, Result};
use crate::linalg::matrix::{axpy, dot, normalize};
use crate::linalg::{ComplexMatrix, Tolerances, C64};

const NEWTON_STEPS: usize = 8;

/// Unit vector in `span{x, y}` whose value is `target`, assuming `target`
/// lies on the segment between the values of the unit vectors `x` and `y`.
pub(crate) fn realize_on_segment(a: &ComplexMatrix, x: &[C64], y: &[C64], target: C64) -> Vec<C64> {
    let ax = a.matvec(x);
    let ay = a.matvec(y);
    let zx = dot(x, &ax);
    let zy = dot(y, &ay);
    let span = zy - zx;
    let scale = 1.0 + zx.norm().max(zy.norm());
    if span.norm() <= 1e-15 * scale {
        return x.to_vec();
    }
    let rot = (span / span.norm()).conj();
    let bx = ((zx - target) * rot).re.min(0.0);
    let by = ((zy - target) * rot).re.max(0.0);
    if bx == 0.0 {
        return x.to_vec();
    }
    if by == 0.0 {
        return y.to_vec();
    }
    let xy = dot(x, y);
    // p = ⟨x, B y⟩, q = ⟨y, B x⟩ with B = e^{-iψ}(A - target)
    let p = (dot(x, &ay) - target * xy) * rot;
    let q = (dot(y, &ax) - target * xy.conj()) * rot;
    let r = p - q.conj();
    let phase = if r.norm() > 0.0 { (r / r.norm()).conj() } else { C64::new(1.0, 0.0) };
    let beta = (phase * p + phase.conj() * q).re;
    let disc = (beta * beta - 4.0 * bx * by).max(0.0).sqrt();
    let s = if beta >= 0.0 {
        -2.0 * bx / (beta + disc)
    } else {
        (disc - beta) / (2.0 * by)
    };
    let mut u = x.to_vec();
    axpy(phase * s, y, &mut u);
    if normalize(&mut u) == 0.0 {
        return x.to_vec();
    }
    polish(a, &mut u, target, y);
    u
}

/// Gauss-Newton refinement of `⟨h, Ah⟩ = target` over the two real
/// parameters of `h + (α + iβ) w`, `w` the part of `dir` orthogonal to `h`.
pub(crate) fn polish(a: &ComplexMatrix, h: &mut Vec<C64>, target: C64, dir: &[C64]) {
    let scale = 1.0 + target.norm();
    let mut ah = a.matvec(h);
    let mut f = dot(h, &ah) - target;
    for _ in 0..NEWTON_STEPS {
        if f.norm() <= 1e-15 * scale {
            break;
        }
        let mut w = dir.to_vec();
        let c = dot(h, &w);
        axpy(-c, h, &mut w);
        if normalize(&mut w) < 1e-12 {
            break;
        }
        let aw = a.matvec(&w);
        let wah = dot(&w, &ah);
        let haw = dot(h, &aw);
        let ga = wah + haw;
        let gb = C64::new(0.0, 1.0) * (haw - wah);
        let det = ga.re * gb.im - gb.re * ga.im;
        if det.abs() < 1e-14 * scale * scale {
            break;
        }
        let (r1, r2) = (-f.re, -f.im);
        let da = (r1 * gb.im - gb.re * r2) / det;
        let db = (ga.re * r2 - ga.im * r1) / det;
        let mut candidate = h.clone();
        axpy(C64::new(da, db), &w, &mut candidate);
        normalize(&mut candidate);
        let a_cand = a.matvec(&candidate);
        let f_cand = dot(&candidate, &a_cand) - target;
        if f_cand.norm() >= f.norm() {
            break;
        }
        *h = candidate;
        ah = a_cand;
        f = f_cand;
    }
}

/// Realizes `lambda` from sampled boundary points and their vectors.
///
/// `lambda` must lie inside the convex hull of `points` with at least
/// `margin` to spare (for a degenerate, segment-shaped hull: within `margin`
/// of neither endpoint and on the segment to `line_tol`).
pub(crate) fn realize_from_samples(
    a: &ComplexMatrix,
    points: &[C64],
    vectors: &[Vec<C64>],
    lambda: C64,
    margin: f64,
    line_tol: f64,
) -> Result<Vec<C64>> {
    let outside = |m: f64| Error::ValueOutsideRange {
        re: lambda.re,
        im: lambda.im,
        margin: m,
    };
    let hull = convex_hull(points);
    match hull.len() {
        0 => return Err(outside(f64::NEG_INFINITY)),
        1 => {
            let d = (points[hull[0]] - lambda).norm();
            return if d <= line_tol { Ok(vectors[hull[0]].clone()) } else { Err(outside(-d)) };
        }
        2 => {
            let (p, q) = (points[hull[0]], points[hull[1]]);
            let (dist, t) = segment_distance(p, q, lambda);
            let len = (q - p).norm();
            let end_margin = (t.min(1.0 - t)) * len;
            if dist > line_tol || end_margin < margin {
                return Err(outside(end_margin.min(-dist)));
            }
            return Ok(realize_on_segment(a, &vectors[hull[0]], &vectors[hull[1]], lambda));
        }
        _ => {}
    }
    let verts: Vec<C64> = hull.iter().map(|&i| points[i]).collect();
    let m = signed_margin(&verts, lambda).unwrap_or(f64::NEG_INFINITY);
    if m < margin {
        return Err(outside(m));
    }
    let mut ends = chord(&verts, lambda, C64::new(1.0, 0.0)).ok_or_else(|| outside(m))?;
    if (ends[1].0 - ends[0].0).norm() < 1e-8 {
        ends = chord(&verts, lambda, C64::new(0.0, 1.0)).ok_or_else(|| outside(m))?;
    }
    let endpoint = |(c, ia, ib, t): (C64, usize, usize, f64)| -> Vec<C64> {
        let (sa, sb) = (hull[ia], hull[ib]);
        if t <= 0.0 {
            vectors[sa].clone()
        } else if t >= 1.0 {
            vectors[sb].clone()
        } else {
            realize_on_segment(a, &vectors[sa], &vectors[sb], c)
        }
    };
    let lo = endpoint(ends[0]);
    let hi = endpoint(ends[1]);
    Ok(realize_on_segment(a, &lo, &hi, lambda))
}

/// Default interior margin `1e-6 (1 + ‖A‖)` for value realization.
pub fn default_interior_margin(a: &ComplexMatrix) -> f64 {
    1e-6 * (1.0 + a.op_norm())
}

/// Unit vector `h` with `⟨h, Ah⟩ = lambda` for `lambda` interior to `W(A)`.
pub fn realize_value(a: &ComplexMatrix, lambda: C64, tol: &Tolerances) -> Result<Vec<C64>> {
    a.require_square()?;
    let margin = default_interior_margin(a);
    let mut n_angles = 32;
    loop {
        let hull = numerical_range_hull(a, n_angles)?;
        let points = hull.points();
        let vectors: Vec<Vec<C64>> = hull.samples.into_iter().map(|s| s.vector).collect();
        match realize_from_samples(a, &points, &vectors, lambda, margin, tol.realization) {
            Ok(h) => {
                let residual = (a.quadratic_form(&h) - lambda).norm();
                if residual > tol.realization {
                    return Err(Error::NoConvergence { what: "value realization" });
                }
                return Ok(h);
            }
            Err(Error::ValueOutsideRange { .. }) if n_angles < 1024 => n_angles *= 4,
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn midpoint_of_diagonal_segment() {
        let a = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        let h = realize_value(&a, c(0.5, 0.0), &Tolerances::default()).unwrap();
        assert!((norm(&h) - 1.0).abs() < 1e-12);
        assert!((h[0].norm() - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((h[1].norm() - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((a.quadratic_form(&h) - c(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn nilpotent_two_by_two() {
        // ⟨h, Ah⟩ = conj(h0) h1; (√0.9, √0.1) is one solution for 0.3
        let a = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let reference = [c(0.9f64.sqrt(), 0.0), c(0.1f64.sqrt(), 0.0)];
        assert!((a.quadratic_form(&reference) - c(0.3, 0.0)).norm() < 1e-15);
        let h = realize_value(&a, c(0.3, 0.0), &Tolerances::default()).unwrap();
        assert!((norm(&h) - 1.0).abs() < 1e-12);
        assert!((a.quadratic_form(&h) - c(0.3, 0.0)).norm() < 1e-12);
        // |h0|^2 ∈ {0.9, 0.1}: the two solutions with real product
        let t = h[1].norm_sqr();
        assert!((t - 0.1).abs() < 1e-9 || (t - 0.9).abs() < 1e-9);
    }

    #[test]
    fn rejects_boundary_and_exterior_values() {
        let a = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        let tol = Tolerances::default();
        assert!(matches!(realize_value(&a, c(1.0, 0.0), &tol), Err(Error::ValueOutsideRange { .. })));
        assert!(matches!(realize_value(&a, c(0.5, 0.1), &tol), Err(Error::ValueOutsideRange { .. })));
        assert!(matches!(realize_value(&a, c(2.0, 0.0), &tol), Err(Error::ValueOutsideRange { .. })));
    }

    #[test]
    fn scalar_range_realizes_its_point() {
        let z = c(0.25, 0.5);
        let a = ComplexMatrix::from_diag(&[z]);
        let h = realize_value(&a, z, &Tolerances::default()).unwrap();
        assert!((h[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn segment_step_hits_target() {
        let a = ComplexMatrix::from_diag(&[c(1.0, 1.0), c(-1.0, 0.5), c(0.0, -1.0)]);
        let x = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let y = [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)];
        let target = c(0.25, -0.5);
        let h = realize_on_segment(&a, &x, &y, target);
        assert!((a.quadratic_form(&h) - target).norm() < 1e-14);
    }
}
