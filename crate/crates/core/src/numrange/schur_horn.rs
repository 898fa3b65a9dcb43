use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SUM_TOL: f64 = 1e-9;

/// Why a diagonal cannot occur for a Hermitian matrix with the given spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MajorizationWitness {
    /// Traces differ.
    SumMismatch { diagonal_sum: f64, spectrum_sum: f64 },
    /// The `k` largest diagonal entries (1-based `k`) exceed the `k` largest eigenvalues.
    Prefix { k: usize, diagonal_sum: f64, spectrum_sum: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchurHornVerdict {
    pub feasible: bool,
    pub witness: Option<MajorizationWitness>,
}

/// Schur-Horn test: is `diagonal` the diagonal of some Hermitian matrix with
/// eigenvalues `spectrum`? True iff the sorted diagonal is majorized by the
/// sorted spectrum.
pub fn schur_horn_feasible(spectrum: &[f64], diagonal: &[f64]) -> Result<SchurHornVerdict> {
    if spectrum.len() != diagonal.len() {
        return Err(Error::LengthMismatch {
            left: spectrum.len(),
            right: diagonal.len(),
        });
    }
    let mut s = spectrum.to_vec();
    let mut d = diagonal.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    d.sort_by(|a, b| b.total_cmp(a));

    let spectrum_sum: f64 = s.iter().sum();
    let diagonal_sum: f64 = d.iter().sum();
    if (spectrum_sum - diagonal_sum).abs() > SUM_TOL {
        return Ok(SchurHornVerdict {
            feasible: false,
            witness: Some(MajorizationWitness::SumMismatch {
                diagonal_sum,
                spectrum_sum,
            }),
        });
    }
    let (mut ps, mut pd) = (0.0, 0.0);
    for k in 0..s.len() {
        ps += s[k];
        pd += d[k];
        if pd > ps + SUM_TOL {
            return Ok(SchurHornVerdict {
                feasible: false,
                witness: Some(MajorizationWitness::Prefix {
                    k: k + 1,
                    diagonal_sum: pd,
                    spectrum_sum: ps,
                }),
            });
        }
    }
    Ok(SchurHornVerdict {
        feasible: true,
        witness: None,
    })
}
