use serde::{Deserialize, Serialize};

use super::compress::{fast_budget, faithful_budget, realize_contraction, realize_with_mass_in};
use super::host::SynthesisHost;
use super::walsh::{check_contraction, choose_walsh_level};
use crate::error::{Error, Result};
use crate::linalg::{compress, normal_eig, ComplexMatrix, Frame, Tolerances, C64, FRAME_TOL};
use crate::random::{TestVectors, TEST_VECTOR_SEED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PinchMode {
    /// Dilation route.
    #[default]
    Fast,
    /// Walsh route with a mass bound on a test vector per target.
    Faithful,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PinchOptions {
    pub mode: PinchMode,
    /// Checked bound on `‖A‖` in faithful mode.
    pub gamma: Option<f64>,
    pub test_vector_seed: u64,
    pub tolerances: Tolerances,
}

impl Default for PinchOptions {
    fn default() -> Self {
        Self {
            mode: PinchMode::Fast,
            gamma: None,
            test_vector_seed: TEST_VECTOR_SEED,
            tolerances: Tolerances::default(),
        }
    }
}

impl PinchOptions {
    pub fn with_mode(mode: PinchMode) -> Self {
        Self { mode, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassBound {
    pub level: usize,
    /// Claimed lower bound `2^{-l/2}`.
    pub epsilon: f64,
    /// `‖E* h'‖` for the unit test vector `h'` below.
    pub mass: f64,
    /// The designated test vector with earlier consumed directions removed.
    pub test_vector: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PinchingCertificate {
    pub frames: Vec<Frame>,
    /// `‖E_j* A E_j - X_j‖` per block.
    pub residuals: Vec<f64>,
    /// `max_{i≠j} ‖E_i* E_j‖`.
    pub orthogonality: f64,
    pub mass_bounds: Option<Vec<MassBound>>,
    pub coverage: f64,
    /// Extraction order (target indices).
    pub order: Vec<usize>,
    /// Realization tolerance the residuals are held to.
    pub tolerance: f64,
    /// Disc margin of the remaining host after the last extraction.
    pub final_margin: Option<f64>,
}

impl PinchingCertificate {
    fn empty() -> Self {
        Self {
            frames: Vec::new(),
            residuals: Vec::new(),
            orthogonality: 0.0,
            mass_bounds: None,
            coverage: 0.0,
            order: Vec::new(),
            tolerance: Tolerances::default().realization,
            final_margin: None,
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// All frames stacked side by side.
    pub fn stacked_frame(&self) -> Result<Frame> {
        let Some(first) = self.frames.first() else {
            return Err(Error::InvalidArgument("certificate has no frames".into()));
        };
        let n = first.ambient_dim();
        let cols: Vec<_> = self.frames.iter().flat_map(|f| f.matrix().columns()).collect();
        Frame::new(ComplexMatrix::from_columns(n, &cols), FRAME_TOL.max(self.orthogonality * 2.0))
    }

    fn assemble(a: &ComplexMatrix, targets: &[ComplexMatrix], frames: Vec<Frame>, tolerance: f64) -> Result<Self> {
        let n = a.rows();
        let residuals = frames
            .iter()
            .zip(targets)
            .map(|(f, x)| Ok((&compress(a, f)? - x).op_norm()))
            .collect::<Result<Vec<_>>>()?;
        let mut orthogonality: f64 = 0.0;
        for i in 0..frames.len() {
            for j in i + 1..frames.len() {
                let cross = frames[i].matrix().adjoint_matmul(frames[j].matrix());
                orthogonality = orthogonality.max(cross.op_norm());
            }
        }
        let rank: usize = frames.iter().map(Frame::rank).sum();
        Ok(Self {
            residuals,
            orthogonality,
            mass_bounds: None,
            coverage: rank as f64 / n as f64,
            order: (0..frames.len()).collect(),
            tolerance,
            final_margin: None,
            frames,
        })
    }
}

/// Mutually orthogonal frames `E_j` with `E_j* A E_j = X_j`, exhibiting the
/// targets as diagonal blocks of a pinching of `A`.
pub fn pinch(a: &ComplexMatrix, targets: &[ComplexMatrix], rho: f64, mode: PinchMode) -> Result<PinchingCertificate> {
    pinch_with(a, targets, rho, &PinchOptions::with_mode(mode))
}

pub fn pinch_with(
    a: &ComplexMatrix,
    targets: &[ComplexMatrix],
    rho: f64,
    options: &PinchOptions,
) -> Result<PinchingCertificate> {
    let n = a.require_square()?;
    check_contraction(0.0, rho)?;
    let mut norms = Vec::with_capacity(targets.len());
    for x in targets {
        x.require_square()?;
        let norm = x.op_norm();
        check_contraction(norm, rho)?;
        norms.push(norm);
    }
    if targets.is_empty() {
        return Ok(PinchingCertificate::empty());
    }
    if let (PinchMode::Faithful, Some(g)) = (options.mode, options.gamma) {
        let norm_a = a.op_norm();
        if norm_a > g * (1.0 + 1e-12) {
            return Err(Error::InvalidArgument(format!("host norm {norm_a} exceeds gamma = {g}")));
        }
    }

    let mut budget = 0;
    for (j, x) in targets.iter().enumerate() {
        budget += match options.mode {
            PinchMode::Fast => fast_budget(x.rows()),
            PinchMode::Faithful => faithful_budget(x.rows(), choose_walsh_level(norms[j], rho)?.l),
        };
        if budget > n {
            return Err(Error::HostTooSmall {
                needed: budget,
                available: n,
                target: Some(j),
            });
        }
    }

    let mut host = SynthesisHost::new(a, rho, options.tolerances).map_err(|e| e.at_target(0))?;
    let mut test_vectors = TestVectors::with_seed(n, options.test_vector_seed);
    let mut frames = Vec::with_capacity(targets.len());
    let mut masses = Vec::new();
    for (j, x) in targets.iter().enumerate() {
        host.set_target(j);
        let frame = match options.mode {
            PinchMode::Fast => realize_contraction(&mut host, x).and_then(|v| Frame::new(v, FRAME_TOL)),
            PinchMode::Faithful => {
                let h = test_vectors.next().expect("test vector sequence is infinite");
                realize_with_mass_in(&mut host, x, &h).map(|r| {
                    masses.push(MassBound {
                        level: r.plan.l,
                        epsilon: r.plan.epsilon,
                        mass: r.mass,
                        test_vector: r.test_vector,
                    });
                    r.frame
                })
            }
        }
        .map_err(|e| e.at_target(j))?;
        frames.push(frame);
        host.certify().map_err(|e| e.at_target(j))?;
    }
    let mut cert = PinchingCertificate::assemble(a, targets, frames, options.tolerances.realization)?;
    if options.mode == PinchMode::Faithful {
        cert.mass_bounds = Some(masses);
    }
    cert.final_margin = Some(host.margin());
    Ok(cert)
}

/// Pinching with normal targets, realized by diagonalizing each target
/// directly instead of dilating it.
pub fn pinch_normal(a: &ComplexMatrix, targets: &[ComplexMatrix], rho: f64) -> Result<PinchingCertificate> {
    let n = a.require_square()?;
    check_contraction(0.0, rho)?;
    let tol = Tolerances::default();
    let strict = 1e-9;
    for (j, x) in targets.iter().enumerate() {
        let eig = normal_eig(x, &tol)?;
        let radius = eig.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if radius > rho - strict {
            return Err(Error::MarginLost {
                radius: rho,
                margin: rho - radius,
                target: Some(j),
            });
        }
    }
    if targets.is_empty() {
        return Ok(PinchingCertificate::empty());
    }
    let mut budget = 0;
    for (j, x) in targets.iter().enumerate() {
        budget += 3 * x.rows();
        if budget > n {
            return Err(Error::HostTooSmall {
                needed: budget,
                available: n,
                target: Some(j),
            });
        }
    }
    let mut host = SynthesisHost::new(a, rho, tol).map_err(|e| e.at_target(0))?;
    let mut frames = Vec::with_capacity(targets.len());
    for (j, x) in targets.iter().enumerate() {
        host.set_target(j);
        let v = host.realize_normal(x).map_err(|e| e.at_target(j))?;
        frames.push(Frame::new(v, FRAME_TOL)?);
        host.certify().map_err(|e| e.at_target(j))?;
    }
    let mut cert = PinchingCertificate::assemble(a, targets, frames, tol.realization)?;
    cert.final_margin = Some(host.margin());
    Ok(cert)
}
