//! Dense complex linear algebra: matrices, Hermitian eigensolvers, frames
//! and compressions.

pub mod eigen;
pub mod frame;
pub mod matrix;
pub(crate) mod sparse;

pub use eigen::{hermitian_eig, normal_eig, psd_sqrt, top_eigenpair, HermitianEigen, NormalEigen};
pub use frame::{compress, orthonormal_complement, Frame, FRAME_TOL};
pub use matrix::{dot, norm, ComplexMatrix, C64};

use serde::{Deserialize, Serialize};

/// Numerical tolerances shared across the library.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eig_residual: f64,
    pub frame_orth: f64,
    pub realization: f64,
    pub equality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eig_residual: 1e-10,
            frame_orth: 1e-10,
            realization: 1e-8,
            equality: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn is_valid(&self) -> bool {
        [self.eig_residual, self.frame_orth, self.realization, self.equality]
            .iter()
            .all(|&t| t > 0.0 && t.is_finite())
    }
}
