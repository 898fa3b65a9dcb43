//! Model hosts and finite surrogates for the essential numerical range:
//! intersections of numerical ranges of compressions that discard more and
//! more leading coordinates, and block-equalized bases along orthonormal
//! systems whose diagonal values converge.

use std::f64::consts::{PI, TAU};
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{compress, orthonormal_complement, ComplexMatrix, Frame, C64, FRAME_TOL};
use crate::numrange::{numerical_range_hull, RangeHull};
use crate::pinching::parker_equalize;

/// Declarative description of a host matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HostSpec {
    #[serde(flatten)]
    pub kind: HostKind,
    /// Required for the shift kinds; checked against the built size otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default = "unit_scale")]
    pub scale: f64,
}

fn unit_scale() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HostKind {
    /// Ones on the first superdiagonal.
    TruncatedUnilateralShift,
    /// Cyclic shift: the unilateral shift plus a one in the bottom-left corner.
    TruncatedBilateralShift,
    /// `weights[k]` at position `(k, k+1)`.
    WeightedShift { weights: Vec<f64> },
    Diagonal { values: Vec<C64> },
    DirectSum { children: Vec<HostSpec> },
    /// JSON file holding a matrix as rows of `[re, im]` pairs.
    MatrixFile { path: PathBuf },
}

impl HostSpec {
    pub fn new(kind: HostKind) -> Self {
        Self {
            kind,
            dim: None,
            scale: 1.0,
        }
    }

    pub fn unilateral_shift(dim: usize) -> Self {
        Self {
            dim: Some(dim),
            ..Self::new(HostKind::TruncatedUnilateralShift)
        }
    }

    pub fn bilateral_shift(dim: usize) -> Self {
        Self {
            dim: Some(dim),
            ..Self::new(HostKind::TruncatedBilateralShift)
        }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }
}

pub fn build_host(spec: &HostSpec) -> Result<ComplexMatrix> {
    if !(spec.scale > 0.0 && spec.scale.is_finite()) {
        return Err(Error::BadSpec(format!("scale must be positive, got {}", spec.scale)));
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let shift_dim = || match spec.dim {
        Some(d) if d > 0 => Ok(d),
        _ => Err(Error::BadSpec("shift hosts need a positive dim".into())),
    };
    let m = match &spec.kind {
        HostKind::TruncatedUnilateralShift => {
            let n = shift_dim()?;
            ComplexMatrix::from_fn(n, n, |i, j| if j == i + 1 { one } else { zero })
        }
        HostKind::TruncatedBilateralShift => {
            let n = shift_dim()?;
            ComplexMatrix::from_fn(n, n, |i, j| if j == (i + 1) % n { one } else { zero })
        }
        HostKind::WeightedShift { weights } => {
            if weights.iter().any(|w| !w.is_finite()) {
                return Err(Error::BadSpec("weights must be finite".into()));
            }
            let n = weights.len() + 1;
            ComplexMatrix::from_fn(n, n, |i, j| if j == i + 1 { C64::new(weights[i], 0.0) } else { zero })
        }
        HostKind::Diagonal { values } => {
            if values.is_empty() {
                return Err(Error::BadSpec("diagonal host needs at least one value".into()));
            }
            ComplexMatrix::from_diag(values)
        }
        HostKind::DirectSum { children } => {
            if children.is_empty() {
                return Err(Error::BadSpec("direct sum needs at least one child".into()));
            }
            let blocks = children.iter().map(build_host).collect::<Result<Vec<_>>>()?;
            ComplexMatrix::block_diag(&blocks)
        }
        HostKind::MatrixFile { path } => {
            let file = File::open(path).map_err(|_| Error::FileNotFound(path.display().to_string()))?;
            let m: ComplexMatrix = serde_json::from_reader(BufReader::new(file))
                .map_err(|e| Error::BadSpec(format!("{}: {e}", path.display())))?;
            if !m.is_square() || m.rows() == 0 {
                return Err(Error::BadSpec(format!("{}: matrix must be square and non-empty", path.display())));
            }
            m
        }
    };
    if let Some(d) = spec.dim {
        if d != m.rows() {
            return Err(Error::BadSpec(format!("dim {d} does not match built size {}", m.rows())));
        }
    }
    Ok(if spec.scale == 1.0 { m } else { m.scale_real(spec.scale) })
}

/// Hulls of the trailing compressions `B_n` (first `n` coordinates removed)
/// for `n = 0..=max_removal`, and their pointwise minimum support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssRangeEstimate {
    pub removals: Vec<usize>,
    /// Boundary samples per removal; vectors are dropped to bound memory.
    pub hulls: Vec<RangeHull>,
    pub thetas: Vec<f64>,
    pub intersection_support: Vec<f64>,
}

impl EssRangeEstimate {
    /// Vertices of the polygon `∩_θ {z : Re(e^{-iθ}z) ≤ s(θ)}`, one per
    /// sampled angle: the corner between the supporting lines at `θ_k` and
    /// `θ_{k+1}`.
    pub fn intersection_polygon(&self) -> Vec<C64> {
        let k = self.thetas.len();
        (0..k)
            .map(|i| {
                let j = (i + 1) % k;
                let (t1, t2) = (self.thetas[i], self.thetas[j]);
                let (s1, s2) = (self.intersection_support[i], self.intersection_support[j]);
                let det = (t2 - t1).sin();
                if det.abs() > 1e-14 {
                    let x = (s1 * t2.sin() - s2 * t1.sin()) / det;
                    let y = (s2 * t1.cos() - s1 * t2.cos()) / det;
                    C64::new(x, y)
                } else {
                    C64::from_polar(s1, t1)
                }
            })
            .collect()
    }

    pub fn min_support(&self) -> f64 {
        self.intersection_support.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

pub fn essential_range_estimate(spec: &HostSpec, max_removal: usize, n_angles: usize) -> Result<EssRangeEstimate> {
    essential_range_estimate_of(&build_host(spec)?, max_removal, n_angles)
}

pub fn essential_range_estimate_of(a: &ComplexMatrix, max_removal: usize, n_angles: usize) -> Result<EssRangeEstimate> {
    let n = a.require_square()?;
    if 2 * max_removal >= n {
        return Err(Error::InvalidArgument(format!(
            "max_removal {max_removal} must be below half the host dimension {n}"
        )));
    }
    let thetas: Vec<f64> = (0..n_angles).map(|k| TAU * k as f64 / n_angles as f64).collect();
    let mut hulls = Vec::with_capacity(max_removal + 1);
    let mut intersection = vec![f64::INFINITY; n_angles];
    for removed in 0..=max_removal {
        let mut hull = numerical_range_hull(&a.trailing_principal(removed), n_angles)?;
        for (s, best) in hull.samples.iter_mut().zip(intersection.iter_mut()) {
            *best = best.min(s.support);
            s.vector = Vec::new();
        }
        hulls.push(hull);
    }
    Ok(EssRangeEstimate {
        removals: (0..=max_removal).collect(),
        hulls,
        thetas,
        intersection_support: intersection,
    })
}

/// Support value `cos(π/(m+1))` of the `m`-dimensional truncated shift in
/// every direction.
pub fn shift_support(m: usize) -> f64 {
    (PI / (m as f64 + 1.0)).cos()
}

/// Orthonormal basis grouped into Parker-equalized blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitBasis {
    pub basis: Frame,
    /// Block sizes, in column order.
    pub blocks: Vec<usize>,
}

impl LimitBasis {
    /// Diagonal values `⟨b_k, A b_k⟩` of the basis.
    pub fn diagonal_values(&self, a: &ComplexMatrix) -> Result<Vec<C64>> {
        Ok(compress(a, &self.basis)?.diag())
    }
}

/// Completes `system` to a basis whose diagonal values approach `lambda`.
///
/// Block `j` holds the `j`-th complement vector together with the system
/// vectors `x_k`, `2^{j-1} ≤ k < 2^j` (1-based), and is rotated so that its
/// diagonal is constant. Complement vectors left over once the system runs
/// out are appended as singleton blocks. A full basis is returned unchanged.
pub fn limit_diagonal_basis(a: &ComplexMatrix, system: &Frame, lambda: C64) -> Result<LimitBasis> {
    let n = a.require_square()?;
    if system.ambient_dim() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: system.ambient_dim(),
        });
    }
    let m = system.rank();
    if m == n {
        return Ok(LimitBasis {
            basis: system.clone(),
            blocks: vec![1; n],
        });
    }
    if m == 0 {
        return Err(Error::InvalidArgument("orthonormal system is empty".into()));
    }
    let values = compress(a, system)?.diag();
    let tail = m - m.div_ceil(4);
    let deviation = values[tail..].iter().map(|v| (v - lambda).norm()).fold(0.0, f64::max);
    if deviation > 0.1 {
        return Err(Error::SystemNotConverging { deviation });
    }

    let complement = orthonormal_complement(system);
    let mut ys = (0..complement.rank()).map(|k| complement.column(k));
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    let mut start = 1usize;
    while start <= m {
        let end = (2 * start).min(m + 1);
        let mut block: Vec<Vec<C64>> = ys.next().into_iter().collect();
        block.extend((start..end).map(|k| system.column(k - 1)));
        let p = Frame::new(ComplexMatrix::from_columns(n, &block), FRAME_TOL)?;
        let (_, u) = parker_equalize(&compress(a, &p)?)?;
        // (P U*)* A (P U*) = U (P*AP) U*, the equalized block
        let rotated = p.matrix() * &u.adjoint();
        blocks.push(block.len());
        columns.extend(rotated.columns());
        start *= 2;
    }
    for y in ys {
        blocks.push(1);
        columns.push(y);
    }
    let basis = Frame::new(ComplexMatrix::from_columns(n, &columns), FRAME_TOL)?;
    Ok(LimitBasis { basis, blocks })
}
