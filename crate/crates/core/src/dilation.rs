//! Unitary and normal dilations of strict contractions, and isometric
//! realization of a contraction as a compression of a host operator.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{hermitian_eig, ComplexMatrix, Frame, Tolerances};
use crate::pinching::{check_contraction, realize_contraction_compression};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DilationResult {
    pub unitary: ComplexMatrix,
    pub normal: ComplexMatrix,
    pub original_dim: usize,
}

/// Halmos dilation of `x` (requires `‖x‖ < rho < 1`).
///
/// With `Y = X/‖X‖`,
/// `U = [[Y, -(I - YY*)^{1/2}], [(I - Y*Y)^{1/2}, Y*]]` is unitary and
/// `N = ‖X‖ U` is a normal matrix whose top-left block is `X`. For `X = 0`
/// we take `U = I`.
pub fn halmos_dilation(x: &ComplexMatrix, rho: f64) -> Result<DilationResult> {
    let d = x.require_square()?;
    let tol = Tolerances::default();
    // one eigendecomposition X*X = Q Λ Q* serves both defects, so that
    // (I - Y*Y)^{1/2} Y* = Y* (I - YY*)^{1/2} holds to rounding
    let gram = hermitian_eig(&x.adjoint_matmul(x).hermitian_part(), &tol)?;
    let top = gram.values.last().copied().unwrap_or(0.0).max(0.0);
    let norm = top.sqrt();
    check_contraction(norm, rho)?;
    if norm == 0.0 {
        return Ok(DilationResult {
            unitary: ComplexMatrix::identity(2 * d),
            normal: ComplexMatrix::zeros(2 * d, 2 * d),
            original_dim: d,
        });
    }
    let y = x.scale_real(1.0 / norm);
    let q = gram.vectors.matrix();
    let lambdas: Vec<f64> = gram.values.iter().map(|l| (l / top).clamp(0.0, 1.0)).collect();
    let h: Vec<f64> = lambdas.iter().map(|l| (1.0 - l).sqrt()).collect();
    let g: Vec<f64> = h.iter().map(|h| 1.0 / (1.0 + h)).collect();
    let spectral = |f: &[f64]| {
        let fd = ComplexMatrix::from_real_diag(f);
        &(q * &fd) * &q.adjoint()
    };
    let right_defect = spectral(&h);
    // (I - YY*)^{1/2} = I - Y g(Y*Y) Y* with g(λ) = 1/(1 + (1-λ)^{1/2})
    let left_defect = &ComplexMatrix::identity(d) - &(&(&y * &spectral(&g)) * &y.adjoint());
    let mut u = ComplexMatrix::zeros(2 * d, 2 * d);
    u.set_submatrix(0, 0, &y);
    u.set_submatrix(0, d, &left_defect.hermitian_part().scale_real(-1.0));
    u.set_submatrix(d, 0, &right_defect.hermitian_part());
    u.set_submatrix(d, d, &y.adjoint());
    let normal = u.scale_real(norm);
    Ok(DilationResult {
        unitary: u,
        normal,
        original_dim: d,
    })
}

/// Isometry `V` with `V*AV = X`, for `‖X‖ < rho` and a host whose
/// numerical range contains the disc of radius `rho`.
pub fn isometry_realize(a: &ComplexMatrix, x: &ComplexMatrix, rho: f64) -> Result<Frame> {
    realize_contraction_compression(a, x, rho)
}
