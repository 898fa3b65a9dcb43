//! Seeded generators for test matrices and test vectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::matrix::{normalize, ComplexMatrix, C64};
use crate::linalg::Frame;

/// Seed of the test-vector sequence used for mass bookkeeping in pinchings.
pub const TEST_VECTOR_SEED: u64 = 0x005E_ED0F_D15C;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal sample by Box-Muller.
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(standard_normal(rng), standard_normal(rng)) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    gaussian_matrix(n, n, rng).hermitian_part()
}

pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let mut v: Vec<C64> = (0..n).map(|_| complex_normal(rng)).collect();
        if normalize(&mut v) > 1e-8 {
            return v;
        }
    }
}

/// Haar-like random frame of the given rank.
pub fn random_frame<R: Rng + ?Sized>(ambient_dim: usize, rank: usize, rng: &mut R) -> Frame {
    loop {
        let vectors: Vec<Vec<C64>> = (0..rank).map(|_| random_unit_vector(ambient_dim, rng)).collect();
        let f = Frame::orthonormalize(ambient_dim, &vectors);
        if f.rank() == rank {
            return f;
        }
    }
}

pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    random_frame(n, n, rng).into_matrix()
}

/// Random matrix rescaled to the given operator norm.
pub fn random_contraction<R: Rng + ?Sized>(n: usize, op_norm: f64, rng: &mut R) -> ComplexMatrix {
    let g = gaussian_matrix(n, n, rng);
    let s = g.op_norm();
    if s == 0.0 {
        return ComplexMatrix::zeros(n, n);
    }
    g.scale_real(op_norm / s)
}

/// `U diag(μ) U*` with eigenvalues drawn uniformly from the disc of the given radius.
pub fn random_normal<R: Rng + ?Sized>(n: usize, radius: f64, rng: &mut R) -> ComplexMatrix {
    let mu: Vec<C64> = (0..n)
        .map(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            C64::from_polar(r, std::f64::consts::TAU * rng.gen::<f64>())
        })
        .collect();
    let u = random_unitary(n, rng);
    u.matmul(&ComplexMatrix::from_diag(&mu)).matmul(&u.adjoint())
}

/// Deterministic stand-in for a dense sequence in the unit sphere.
pub struct TestVectors {
    rng: ChaCha8Rng,
    dim: usize,
}

impl TestVectors {
    pub fn new(dim: usize) -> Self {
        Self::with_seed(dim, TEST_VECTOR_SEED)
    }

    pub fn with_seed(dim: usize, seed: u64) -> Self {
        Self {
            rng: rng_from_seed(seed),
            dim,
        }
    }
}

impl Iterator for TestVectors {
    type Item = Vec<C64>;

    fn next(&mut self) -> Option<Vec<C64>> {
        Some(random_unit_vector(self.dim, &mut self.rng))
    }
}
