//! Fixtures shared by the benchmarks.

use pinchwork::random::{gaussian_matrix, random_contraction, rng_from_seed};
use pinchwork::{ComplexMatrix, C64};

/// Truncated unilateral shift of size `n`.
pub fn shift(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| C64::new(if j == i + 1 { 1.0 } else { 0.0 }, 0.0))
}

/// Dense Gaussian matrix, seeded.
pub fn dense(n: usize, seed: u64) -> ComplexMatrix {
    gaussian_matrix(n, n, &mut rng_from_seed(seed))
}

/// Hermitian part of a dense Gaussian matrix.
pub fn hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let a = dense(n, seed);
    (&a + &a.adjoint()).scale_real(0.5)
}

/// `count` random contractions of size `dim` with norm `norm`.
pub fn targets(count: usize, dim: usize, norm: f64, seed: u64) -> Vec<ComplexMatrix> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| random_contraction(dim, norm, &mut rng)).collect()
}
