use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Frame, C64};

/// Finite-rank normal perturbation `R = Σ_j (t_j - ⟨f_j, A f_j⟩) f_j f_j*`.
///
/// Each target `t_j` becomes the diagonal value `⟨f_j, (A+R) f_j⟩`, so every
/// target lies in `W(A+R)`.
pub fn perturb_to_cover(a: &ComplexMatrix, frame: &Frame, targets: &[C64]) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    if frame.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("frame in dimension {n}"),
            actual: format!("frame in dimension {}", frame.ambient_dim()),
        });
    }
    if frame.rank() != targets.len() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} targets", frame.rank()),
            actual: format!("{} targets", targets.len()),
        });
    }
    let mut r = ComplexMatrix::zeros(n, n);
    for (j, &t) in targets.iter().enumerate() {
        let f = frame.column(j);
        let z = t - a.quadratic_form(&f);
        if z == C64::new(0.0, 0.0) {
            continue;
        }
        for i in 0..n {
            let fi = f[i] * z;
            for k in 0..n {
                r[(i, k)] += fi * f[k].conj();
            }
        }
    }
    Ok(r)
}
