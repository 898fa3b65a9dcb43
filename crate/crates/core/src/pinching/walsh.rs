use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

pub const MAX_WALSH_LEVEL: usize = 16;

/// `V_0 = [1]`, `V_k = 2^{-1/2} [[V, V], [-V, V]]` with `V = V_{k-1}`.
pub fn walsh_matrix(k: usize) -> Result<ComplexMatrix> {
    if k > MAX_WALSH_LEVEL {
        return Err(Error::TooLarge { k });
    }
    Ok(walsh_real(k).into_complex())
}

pub(crate) struct RealSquare {
    n: usize,
    data: Vec<f64>,
}

impl RealSquare {
    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    fn into_complex(self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, self.n, |i, j| C64::new(self.data[i * self.n + j], 0.0))
    }
}

pub(crate) fn walsh_real(k: usize) -> RealSquare {
    let n = 1usize << k;
    let entry = 2f64.powf(-(k as f64) / 2.0);
    // sign of V_k[i][j]: each level contributes -1 when the row bit is set and the column bit is not
    let data = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if (i & !j).count_ones() % 2 == 1 {
                -entry
            } else {
                entry
            }
        })
        .collect();
    RealSquare { n, data }
}

/// Conjugates `diag(B_1, …, B_{2^k})` by `W = V_k ⊗ I`; every diagonal block
/// of the result equals the mean of the `B_i`. Returns `(W diag(B) W*, W)`.
pub fn equalize_blocks(blocks: &[ComplexMatrix]) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let count = blocks.len();
    if count == 0 || !count.is_power_of_two() {
        return Err(Error::BadBlockCount { count });
    }
    let s = blocks[0].rows();
    if blocks.iter().any(|b| b.rows() != s || b.cols() != s) {
        return Err(Error::SizeMismatch);
    }
    let k = count.trailing_zeros() as usize;
    let v = walsh_matrix(k)?;
    let w = v.kron_identity(s);
    let d = ComplexMatrix::block_diag(blocks);
    let conj = &(&w * &d) * &w.adjoint();
    Ok((conj, w))
}

/// Constants of the Walsh splitting `2^l = m + 2n` with `m = 2^l - 2`, `n = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalshPlan {
    pub l: usize,
    pub m: usize,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
}

impl WalshPlan {
    pub fn new(l: usize) -> Self {
        assert!((2..=MAX_WALSH_LEVEL).contains(&l), "Walsh level {l} out of range");
        let size = (1usize << l) as f64;
        Self {
            l,
            m: (1 << l) - 2,
            n: 1,
            alpha: size / (size - 2.0),
            beta: size,
            epsilon: 2f64.powf(-(l as f64) / 2.0),
        }
    }

    pub fn block_count(&self) -> usize {
        1 << self.l
    }
}

/// Smallest `l ≥ 2` with `2^l/(2^l - 2) · norm_x < rho`.
pub fn choose_walsh_level(norm_x: f64, rho: f64) -> Result<WalshPlan> {
    check_contraction(norm_x, rho)?;
    smallest_level(|size| size / (size - 2.0) * norm_x < rho).ok_or(Error::NotStrictContraction { norm: norm_x, rho })
}

pub(crate) fn check_contraction(norm_x: f64, rho: f64) -> Result<()> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidArgument(format!("rho must lie in (0, 1), got {rho}")));
    }
    if !(norm_x >= 0.0 && norm_x < rho) {
        return Err(Error::NotStrictContraction { norm: norm_x, rho });
    }
    Ok(())
}

pub(crate) fn smallest_level(ok: impl Fn(f64) -> bool) -> Option<WalshPlan> {
    (2..=MAX_WALSH_LEVEL)
        .find(|&l| ok((1usize << l) as f64))
        .map(WalshPlan::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(m: &ComplexMatrix) -> Vec<Vec<f64>> {
        (0..m.rows()).map(|i| m.row(i).iter().map(|z| z.re).collect()).collect()
    }

    #[test]
    fn first_two_levels() {
        let s = 0.5f64.sqrt();
        assert_eq!(real(&walsh_matrix(1).unwrap()), vec![vec![s, s], vec![-s, s]]);
        let v2 = real(&walsh_matrix(2).unwrap());
        let expected = [
            [1.0, 1.0, 1.0, 1.0],
            [-1.0, 1.0, -1.0, 1.0],
            [-1.0, -1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0, 1.0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert!((v2[i][j] - 0.5 * expected[i][j]).abs() < 1e-16);
            }
        }
    }

    #[test]
    fn too_large() {
        assert_eq!(walsh_matrix(17).unwrap_err(), Error::TooLarge { k: 17 });
    }

    #[test]
    fn scalar_blocks_average() {
        let (c, _) = equalize_blocks(&[
            ComplexMatrix::from_real_diag(&[1.0]),
            ComplexMatrix::from_real_diag(&[3.0]),
        ])
        .unwrap();
        assert!((c[(0, 0)].re - 2.0).abs() < 1e-15 && (c[(1, 1)].re - 2.0).abs() < 1e-15);
        let blocks: Vec<_> = (1..=4).map(|v| ComplexMatrix::from_real_diag(&[v as f64])).collect();
        let (c, _) = equalize_blocks(&blocks).unwrap();
        for i in 0..4 {
            assert!((c[(i, i)].re - 2.5).abs() < 1e-14);
        }
    }

    #[test]
    fn nilpotent_pair_symmetrizes() {
        let b1 = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let (c, _) = equalize_blocks(&[b1.clone(), b1.transpose()]).unwrap();
        let half = ComplexMatrix::from_real_rows(&[[0.0, 0.5], [0.5, 0.0]]);
        assert!(c.submatrix(0, 0, 2, 2).max_abs_diff(&half) < 1e-15);
        assert!(c.submatrix(2, 2, 2, 2).max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn bad_blocks() {
        let one = ComplexMatrix::identity(1);
        assert_eq!(
            equalize_blocks(&[one.clone(), one.clone(), one.clone()]).unwrap_err(),
            Error::BadBlockCount { count: 3 }
        );
        assert_eq!(equalize_blocks(&[one, ComplexMatrix::identity(2)]).unwrap_err(), Error::SizeMismatch);
    }

    #[test]
    fn level_choice() {
        assert_eq!(choose_walsh_level(0.5, 0.8).unwrap().l, 3);
        assert_eq!(choose_walsh_level(0.9, 0.95).unwrap().l, 6);
        let p = choose_walsh_level(0.0, 0.5).unwrap();
        assert_eq!((p.l, p.m, p.n), (2, 2, 1));
        assert_eq!(p.alpha, 2.0);
        assert_eq!(p.epsilon, 0.5);
        assert!(matches!(choose_walsh_level(0.9, 0.8), Err(Error::NotStrictContraction { .. })));
    }
}
