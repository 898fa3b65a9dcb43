use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::geometry::{convex_hull, segment_distance, signed_margin};
use crate::error::{Error, Result};
use crate::linalg::eigen::top_eigenvector_band;
use crate::linalg::matrix::ZERO;
use crate::linalg::sparse::Operator;
use crate::linalg::{top_eigenpair, ComplexMatrix, C64};

/// Default angular resolution of disc certificates (0.5°).
pub const DEFAULT_DISC_ANGLES: usize = 720;

const REFINEMENT_LEVELS: usize = 10;

/// One support-function sample of `W(A)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundarySample {
    pub theta: f64,
    pub support: f64,
    pub point: C64,
    pub vector: Vec<C64>,
}

/// Sampled boundary of a numerical range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeHull {
    pub samples: Vec<BoundarySample>,
}

/// Result of a sampled disc-containment test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscCertificate {
    pub radius: f64,
    /// `min_θ support(θ) - radius`; positive certifies containment up to sampling.
    pub margin: f64,
    pub min_support_theta: f64,
}

impl DiscCertificate {
    pub fn holds(&self) -> bool {
        self.margin > 0.0
    }
}

/// Top eigenpair of `Re(e^{-iθ}A)`: the support value of `W(A)` in direction
/// `θ`, the boundary point `⟨v, Av⟩` it is attained at, and `v`.
pub fn support_point(a: &ComplexMatrix, theta: f64) -> Result<BoundarySample> {
    a.require_square()?;
    SupportSweep::new(a).sample(theta)
}

/// Support evaluations for one matrix at many angles. Tridiagonal input is
/// detected once and then handled in `O(n)` per angle.
pub(crate) struct SupportSweep<'a> {
    op: Operator<'a>,
    band: Option<Band>,
}

struct Band {
    diag: Vec<C64>,
    /// `a[k+1, k]`
    lower: Vec<C64>,
    /// `a[k, k+1]`
    upper: Vec<C64>,
}

impl<'a> SupportSweep<'a> {
    pub(crate) fn new(a: &'a ComplexMatrix) -> Self {
        let n = a.rows();
        let tridiagonal = (0..n).all(|i| {
            let row = a.row(i);
            row[..i.saturating_sub(1)].iter().all(|z| *z == ZERO)
                && row.get(i + 2..).is_none_or(|r| r.iter().all(|z| *z == ZERO))
        });
        let band = (tridiagonal && n > 0).then(|| Band {
            diag: (0..n).map(|i| a[(i, i)]).collect(),
            lower: (1..n).map(|i| a[(i, i - 1)]).collect(),
            upper: (1..n).map(|i| a[(i - 1, i)]).collect(),
        });
        Self {
            op: Operator::new(a),
            band,
        }
    }

    pub(crate) fn sample(&self, theta: f64) -> Result<BoundarySample> {
        let w = C64::from_polar(1.0, -theta);
        let vector = match &self.band {
            Some(b) => {
                let diag = b.diag.iter().map(|d| (w * d).re).collect();
                let sub: Vec<C64> = b
                    .lower
                    .iter()
                    .zip(&b.upper)
                    .map(|(l, u)| (w * l + (w * u).conj()) * 0.5)
                    .collect();
                top_eigenvector_band(diag, &sub)?
            }
            None => top_eigenpair(&self.op.matrix().rotated_real_part(theta))?.1,
        };
        let point = self.op.quadratic_form(&vector);
        let support = (w * point).re;
        Ok(BoundarySample {
            theta,
            support,
            point,
            vector,
        })
    }
}

/// Support samples at `θ_k = 2πk/n_angles`.
pub fn numerical_range_hull(a: &ComplexMatrix, n_angles: usize) -> Result<RangeHull> {
    if n_angles < 8 {
        return Err(Error::InvalidArgument(format!("n_angles must be at least 8, got {n_angles}")));
    }
    a.require_square()?;
    let sweep = SupportSweep::new(a);
    let samples = (0..n_angles)
        .map(|k| sweep.sample(TAU * k as f64 / n_angles as f64))
        .collect::<Result<Vec<_>>>()?;
    Ok(RangeHull { samples })
}

/// Sampled test of `{|z| ≤ radius} ⊆ W(A)`, refined by bisection around the
/// angle of smallest support.
pub fn contains_disc(a: &ComplexMatrix, radius: f64, n_angles: usize) -> Result<DiscCertificate> {
    if radius.is_nan() || radius < 0.0 {
        return Err(Error::InvalidArgument(format!("radius must be non-negative, got {radius}")));
    }
    let hull = numerical_range_hull(a, n_angles)?;
    let sweep = SupportSweep::new(a);
    let (mut margin, mut theta) = hull.min_support_margin(radius);
    let mut step = TAU / n_angles as f64;
    let mut center = theta;
    for _ in 0..REFINEMENT_LEVELS {
        step *= 0.5;
        let mut best = (f64::INFINITY, center);
        for t in [center - step, center + step] {
            let s = sweep.sample(t.rem_euclid(TAU))?;
            let m = s.support - radius;
            if m < best.0 {
                best = (m, s.theta);
            }
        }
        if best.0 < margin {
            margin = best.0;
            theta = best.1;
            center = best.1;
        }
    }
    Ok(DiscCertificate {
        radius,
        margin,
        min_support_theta: theta,
    })
}

impl RangeHull {
    pub fn points(&self) -> Vec<C64> {
        self.samples.iter().map(|s| s.point).collect()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// `min_θ (support(θ) - radius)` over the samples, with its angle.
    pub fn min_support_margin(&self, radius: f64) -> (f64, f64) {
        self.samples
            .iter()
            .map(|s| (s.support - radius, s.theta))
            .fold((f64::INFINITY, 0.0), |acc, x| if x.0 < acc.0 { x } else { acc })
    }

    pub fn max_support(&self) -> f64 {
        self.samples.iter().map(|s| s.support).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_modulus(&self) -> f64 {
        self.samples.iter().map(|s| s.point.norm()).fold(0.0, f64::max)
    }

    /// Indices of the samples forming the convex polygon, counter-clockwise.
    pub fn polygon(&self) -> Vec<usize> {
        convex_hull(&self.points())
    }

    pub fn polygon_vertices(&self) -> Vec<C64> {
        let pts = self.points();
        self.polygon().into_iter().map(|i| pts[i]).collect()
    }

    /// Most negative normalized cross product of consecutive boundary edges
    /// after sorting the points by argument about their centroid; zero for a
    /// convex polygon.
    pub fn convexity_defect(&self) -> f64 {
        let pts = self.points();
        if pts.len() < 3 {
            return 0.0;
        }
        let centroid = pts.iter().sum::<C64>() / pts.len() as f64;
        let mut sorted = pts.clone();
        sorted.sort_by(|a, b| (a - centroid).arg().total_cmp(&(b - centroid).arg()));
        sorted.dedup_by(|a, b| (*a - *b).norm() < 1e-12);
        let n = sorted.len();
        if n < 3 {
            return 0.0;
        }
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (o, p, q) = (sorted[k], sorted[(k + 1) % n], sorted[(k + 2) % n]);
            let cr = (p.re - o.re) * (q.im - o.im) - (p.im - o.im) * (q.re - o.re);
            worst = worst.min(cr);
        }
        worst
    }

    /// Distance from `z` to the sampled polygon (zero inside).
    pub fn distance_outside(&self, z: C64) -> f64 {
        let verts = self.polygon_vertices();
        match verts.len() {
            0 => f64::INFINITY,
            1 => (verts[0] - z).norm(),
            2 => segment_distance(verts[0], verts[1], z).0,
            _ => {
                let m = signed_margin(&verts, z).unwrap_or(f64::NEG_INFINITY);
                if m >= 0.0 {
                    0.0
                } else {
                    let n = verts.len();
                    (0..n)
                        .map(|k| segment_distance(verts[k], verts[(k + 1) % n], z).0)
                        .fold(f64::INFINITY, f64::min)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn banded_path_matches_dense_eigensolver() {
        let n = 30;
        let a = ComplexMatrix::from_fn(n, n, |i, j| match j as isize - i as isize {
            0 => c((i as f64 * 0.7).sin(), 0.1),
            1 => c(1.0, 0.3 * (i as f64).cos()),
            -1 => c(0.2, -0.5),
            _ => c(0.0, 0.0),
        });
        let sweep = SupportSweep::new(&a);
        assert!(sweep.band.is_some());
        for k in 0..12 {
            let theta = 0.53 * k as f64;
            let fast = sweep.sample(theta).unwrap();
            let (top, _) = top_eigenpair(&a.rotated_real_part(theta)).unwrap();
            assert!((fast.support - top).abs() < 1e-12, "{} vs {top}", fast.support);
        }
    }

    #[test]
    fn diagonal_support_points() {
        let a = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        let s = support_point(&a, 0.0).unwrap();
        assert!((s.support - 1.0).abs() < 1e-15);
        assert!((s.point - c(1.0, 0.0)).norm() < 1e-15);
        assert!((s.vector[1].norm() - 1.0).abs() < 1e-14);
        let s = support_point(&a, std::f64::consts::PI).unwrap();
        assert!(s.support.abs() < 1e-15);
        assert!(s.point.norm() < 1e-15);
        assert!((s.vector[0].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn scalar_hull_is_a_point() {
        let z = c(0.3, -0.2);
        let hull = numerical_range_hull(&ComplexMatrix::from_diag(&[z]), 8).unwrap();
        assert!(hull.samples.iter().all(|s| (s.point - z).norm() < 1e-15));
        assert_eq!(hull.polygon().len(), 1);
    }

    #[test]
    fn normal_hull_covers_square() {
        let a = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)]);
        let hull = numerical_range_hull(&a, 16).unwrap();
        for v in [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(0.5, 0.5)] {
            assert!(hull.distance_outside(v) < 1e-12);
        }
    }

    #[test]
    fn zero_matrix_zero_radius() {
        let cert = contains_disc(&ComplexMatrix::zeros(3, 3), 0.0, 16).unwrap();
        assert_eq!(cert.margin, 0.0);
        assert!(!cert.holds());
    }

    #[test]
    fn rejects_too_few_angles() {
        assert!(matches!(numerical_range_hull(&ComplexMatrix::identity(2), 4), Err(Error::InvalidArgument(_))));
        assert!(contains_disc(&ComplexMatrix::identity(2), -1.0, 16).is_err());
    }
}
