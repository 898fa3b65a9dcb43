//! Incremental realization inside a host operator.
//!
//! Every realized vector `e` consumes `span{e, Ae, A*e}`; later vectors are
//! taken orthogonal to everything consumed, so all cross terms `⟨e_i, A e_j⟩`
//! vanish. The numerical range of the compression to the remaining subspace
//! `K` is tracked by an inner polygon: a fixed set of angles, each carrying a
//! unit vector of `K` and its value `⟨v, Av⟩`. Those values are attained, so
//! their convex hull lies inside `W(A_K)`, and a polygon whose edges all stay
//! at distance at least `ρ` from the origin certifies the disc. When a
//! deflation erodes a sample it is refreshed by a short Lanczos run for the
//! top eigenvector of `Re(e^{-iθ} A_K)`.

use crate::error::{Error, Result};
use crate::linalg::matrix::{axpy, dot, norm, normalize, project_out};
use crate::linalg::sparse::Operator;
use crate::linalg::{hermitian_eig, normal_eig, ComplexMatrix, Tolerances, C64};
use crate::numrange::geometry::{convex_hull, signed_margin};
use crate::numrange::{contains_disc, numerical_range_hull, polish, realize_from_samples, DEFAULT_DISC_ANGLES};
use crate::random::{complex_normal, rng_from_seed};

/// Angles carried by the inner polygon.
pub const POLYGON_ANGLES: usize = 64;

const LANCZOS_STEPS: usize = 40;
const REFRESH_ROUNDS: usize = 3;

#[derive(Debug, Clone)]
struct Sample {
    theta: f64,
    vector: Vec<C64>,
    image: Vec<C64>,
    value: C64,
    /// support at host creation; used to decide when a sample has eroded
    initial: f64,
}

impl Sample {
    fn support(&self) -> f64 {
        (C64::from_polar(1.0, -self.theta) * self.value).re
    }
}

#[derive(Debug, Clone)]
pub(crate) struct SynthesisHost<'a> {
    a: &'a ComplexMatrix,
    op: Operator<'a>,
    rho: f64,
    tol: Tolerances,
    consumed: Vec<Vec<C64>>,
    samples: Vec<Sample>,
    margin: f64,
    target: Option<usize>,
}

impl<'a> SynthesisHost<'a> {
    /// Certifies the disc of radius `rho` in `W(A)` by an exact support sweep
    /// and seeds the inner polygon.
    pub(crate) fn new(a: &'a ComplexMatrix, rho: f64, tol: Tolerances) -> Result<Self> {
        a.require_square()?;
        let cert = contains_disc(a, rho, DEFAULT_DISC_ANGLES)?;
        if !cert.holds() {
            return Err(Error::MarginLost {
                radius: rho,
                margin: cert.margin,
                target: None,
            });
        }
        let op = Operator::new(a);
        let hull = numerical_range_hull(a, POLYGON_ANGLES)?;
        let samples = hull
            .samples
            .into_iter()
            .map(|s| Sample {
                theta: s.theta,
                image: op.matvec(&s.vector),
                value: s.point,
                initial: s.support,
                vector: s.vector,
            })
            .collect();
        let mut host = Self {
            a,
            op,
            rho,
            tol,
            consumed: Vec::new(),
            samples,
            margin: cert.margin,
            target: None,
        };
        host.certify()?;
        Ok(host)
    }

    pub(crate) fn host(&self) -> &'a ComplexMatrix {
        self.a
    }

    pub(crate) fn rho(&self) -> f64 {
        self.rho
    }

    pub(crate) fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub(crate) fn consumed(&self) -> &[Vec<C64>] {
        &self.consumed
    }

    pub(crate) fn available(&self) -> usize {
        self.a.rows() - self.consumed.len()
    }

    /// Last certified polygon margin (distance of the polygon's closest edge
    /// from the origin, minus `ρ`).
    pub(crate) fn margin(&self) -> f64 {
        self.margin
    }

    pub(crate) fn set_target(&mut self, index: usize) {
        self.target = Some(index);
    }

    fn polygon_margin(&self) -> f64 {
        let points: Vec<C64> = self.samples.iter().map(|s| s.value).collect();
        let hull = convex_hull(&points);
        if hull.len() < 3 {
            return f64::NEG_INFINITY;
        }
        let verts: Vec<C64> = hull.iter().map(|&i| points[i]).collect();
        signed_margin(&verts, C64::new(0.0, 0.0)).unwrap_or(f64::NEG_INFINITY) - self.rho
    }

    /// Re-verifies the disc on the remaining subspace, refreshing samples as
    /// needed; `MarginLost` when refreshing cannot restore it.
    pub(crate) fn certify(&mut self) -> Result<f64> {
        for round in 0..=REFRESH_ROUNDS {
            let m = self.polygon_margin();
            if m > 0.0 {
                self.margin = m;
                return Ok(m);
            }
            if round == REFRESH_ROUNDS || self.available() == 0 {
                self.margin = m;
                break;
            }
            let steps = LANCZOS_STEPS << round;
            for k in 0..self.samples.len() {
                let s = &self.samples[k];
                if round > 0 || s.support() < self.rho + 0.75 * (s.initial - self.rho) {
                    self.refresh(k, steps);
                }
            }
        }
        Err(Error::MarginLost {
            radius: self.rho,
            margin: self.margin,
            target: self.target,
        })
    }

    /// Replaces sample `k` by a Ritz vector of `Re(e^{-iθ} A)` on the
    /// remaining subspace when that improves its support.
    fn refresh(&mut self, k: usize, steps: usize) {
        let n = self.a.rows();
        let theta = self.samples[k].theta;
        let rot = C64::from_polar(1.0, -theta);
        let mut start = self.samples[k].vector.clone();
        project_out(&mut start, &self.consumed);
        if normalize(&mut start) < 1e-8 {
            let mut rng = rng_from_seed(0xC0FFEE ^ k as u64);
            start = (0..n).map(|_| complex_normal(&mut rng)).collect();
            project_out(&mut start, &self.consumed);
            if normalize(&mut start) == 0.0 {
                return;
            }
        }
        let steps = steps.min(self.available());
        let mut basis: Vec<Vec<C64>> = vec![start];
        let mut alphas = Vec::with_capacity(steps);
        let mut betas: Vec<f64> = Vec::with_capacity(steps);
        for j in 0..steps {
            let q = &basis[j];
            let aq = self.op.matvec(q);
            let aaq = self.op.adjoint_matvec(q);
            let mut w: Vec<C64> = aq
                .iter()
                .zip(&aaq)
                .map(|(x, y)| 0.5 * (rot * x + rot.conj() * y))
                .collect();
            alphas.push(dot(q, &w).re);
            project_out(&mut w, &self.consumed);
            project_out(&mut w, &basis);
            let beta = normalize(&mut w);
            if j + 1 == steps || beta < 1e-12 {
                break;
            }
            betas.push(beta);
            basis.push(w);
        }
        let m = alphas.len();
        let t = ComplexMatrix::from_fn(m, m, |r, c| {
            if r == c {
                C64::new(alphas[r], 0.0)
            } else if r + 1 == c {
                C64::new(betas[r], 0.0)
            } else if c + 1 == r {
                C64::new(betas[c], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let Ok(eig) = hermitian_eig(&t, &self.tol) else {
            return;
        };
        let top = eig.vector(m - 1);
        let mut y = vec![C64::new(0.0, 0.0); n];
        for (coef, q) in top.iter().zip(&basis) {
            axpy(*coef, q, &mut y);
        }
        project_out(&mut y, &self.consumed);
        if normalize(&mut y) == 0.0 {
            return;
        }
        let image = self.op.matvec(&y);
        let value = dot(&y, &image);
        if (rot * value).re > self.samples[k].support() {
            let s = &mut self.samples[k];
            s.vector = y;
            s.image = image;
            s.value = value;
        }
    }

    /// Consumes `span{h, Ah, A*h}` and deflates the samples.
    pub(crate) fn consume(&mut self, h: &[C64]) {
        let candidates = [h.to_vec(), self.op.matvec(h), self.op.adjoint_matvec(h)];
        let mut fresh: Vec<Vec<C64>> = Vec::with_capacity(3);
        for v in candidates {
            let original = norm(&v);
            if original == 0.0 {
                continue;
            }
            let mut w = v;
            project_out(&mut w, &self.consumed);
            project_out(&mut w, &fresh);
            if normalize(&mut w) > 1e-10 * original {
                fresh.push(w);
            }
        }
        let images: Vec<Vec<C64>> = fresh.iter().map(|b| self.op.matvec(b)).collect();
        for s in &mut self.samples {
            for _ in 0..2 {
                for (b, ab) in fresh.iter().zip(&images) {
                    let c = dot(b, &s.vector);
                    axpy(-c, b, &mut s.vector);
                    axpy(-c, ab, &mut s.image);
                }
            }
            let r = norm(&s.vector);
            if r < 1e-8 {
                s.vector.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
                s.value = C64::new(0.0, 0.0);
                continue;
            }
            s.vector.iter_mut().for_each(|z| *z /= r);
            s.image.iter_mut().for_each(|z| *z /= r);
            s.value = dot(&s.vector, &s.image);
        }
        self.consumed.extend(fresh);
        for k in 0..self.samples.len() {
            let s = &self.samples[k];
            if s.support() < self.rho + 0.5 * (s.initial - self.rho) {
                self.refresh(k, LANCZOS_STEPS);
            }
        }
    }

    /// Unit vector orthogonal to everything consumed with `⟨h, Ah⟩ = lambda`;
    /// consumes it before returning.
    pub(crate) fn realize(&mut self, lambda: C64) -> Result<Vec<C64>> {
        if lambda.norm() >= self.rho {
            return Err(Error::ValueOutsideRange {
                re: lambda.re,
                im: lambda.im,
                margin: self.rho - lambda.norm(),
            });
        }
        if self.available() < 3 {
            return Err(Error::HostTooSmall {
                needed: 3,
                available: self.available(),
                target: self.target,
            });
        }
        self.certify()?;
        let points: Vec<C64> = self.samples.iter().map(|s| s.value).collect();
        let vectors: Vec<Vec<C64>> = self.samples.iter().map(|s| s.vector.clone()).collect();
        let mut h = realize_from_samples(self.a, &points, &vectors, lambda, 0.0, self.tol.realization)?;
        project_out(&mut h, &self.consumed);
        normalize(&mut h);
        let quarter = self.samples.len() / 4;
        for k in [0, quarter] {
            polish(self.a, &mut h, lambda, &vectors[k]);
        }
        let residual = (self.op.quadratic_form(&h) - lambda).norm();
        if residual > self.tol.realization {
            return Err(Error::NoConvergence { what: "value realization" });
        }
        self.consume(&h);
        Ok(h)
    }

    /// Orthonormal vectors `g_i` with `⟨g_i, A g_j⟩ = δ_ij λ_i`, as columns.
    pub(crate) fn realize_diagonal(&mut self, lambdas: &[C64]) -> Result<ComplexMatrix> {
        let needed = 3 * lambdas.len();
        if needed > self.available() {
            return Err(Error::HostTooSmall {
                needed,
                available: self.available(),
                target: self.target,
            });
        }
        let cols = lambdas
            .iter()
            .map(|&l| self.realize(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(ComplexMatrix::from_columns(self.a.rows(), &cols))
    }

    /// Columns `V` with `V*AV = x` for a normal `x` with spectrum inside the disc.
    pub(crate) fn realize_normal(&mut self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let eig = normal_eig(x, &self.tol)?;
        let g = self.realize_diagonal(&eig.values)?;
        // x = W diag(μ) W*, so V = G W* gives V*AV = W G*AG W* = x
        Ok(&g * &eig.vectors.adjoint())
    }
}
