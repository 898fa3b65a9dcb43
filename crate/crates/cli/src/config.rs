//! Job configuration files.
//!
//! ```json
//! {
//!   "host": {"kind": "truncated_unilateral_shift", "dim": 512},
//!   "rho": 0.9,
//!   "mode": "fast",
//!   "seed": 7,
//!   "targets": [
//!     {"matrix": [[[0.3, 0.0]]]},
//!     {"diagonal": [[0.0, 0.5], [-0.5, 0.0]]},
//!     {"random_contraction": {"dim": 2, "norm": 0.6}},
//!     {"random_normal": {"dim": 3, "radius": 0.5}}
//!   ]
//! }
//! ```
//!
//! Matrices are rows of `[re, im]` pairs. Relative `matrix_file` paths are
//! resolved against the directory of the config file. Random targets draw
//! from one generator seeded by `seed`, in list order; a seed is required
//! whenever a random target is present.

use std::path::{Path, PathBuf};

use pinchwork::essrange::{HostKind, HostSpec};
use pinchwork::pinching::PinchMode;
use pinchwork::random::{random_contraction, random_normal, rng_from_seed};
use pinchwork::{ComplexMatrix, C64};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub host: Option<HostSpec>,
    pub n_angles: Option<usize>,
    pub radius: Option<f64>,
    pub max_removal: Option<usize>,
    pub rho: Option<f64>,
    pub mode: Option<PinchMode>,
    pub gamma: Option<f64>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub targets: Vec<TargetSpec>,
    /// Pinch with direct diagonalization; every target must be normal.
    #[serde(default)]
    pub normal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetSpec {
    Matrix(ComplexMatrix),
    Diagonal(Vec<C64>),
    RandomContraction { dim: usize, norm: f64 },
    RandomNormal { dim: usize, radius: f64 },
}

impl JobConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut config: JobConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        if let Some(host) = &mut config.host {
            resolve_paths(host, path.parent().unwrap_or(Path::new(".")));
        }
        Ok(config)
    }

    pub fn host(&self) -> CliResult<ComplexMatrix> {
        let spec = self
            .host
            .as_ref()
            .ok_or_else(|| CliError::Usage("config has no host".into()))?;
        Ok(pinchwork::essrange::build_host(spec)?)
    }

    pub fn targets(&self) -> CliResult<Vec<ComplexMatrix>> {
        let needs_seed = self
            .targets
            .iter()
            .any(|t| matches!(t, TargetSpec::RandomContraction { .. } | TargetSpec::RandomNormal { .. }));
        let mut rng = match (needs_seed, self.seed) {
            (true, None) => return Err(CliError::Usage("random targets need an explicit seed".into())),
            (_, seed) => rng_from_seed(seed.unwrap_or(0)),
        };
        self.targets
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let m = match t {
                    TargetSpec::Matrix(m) => m.clone(),
                    TargetSpec::Diagonal(values) => ComplexMatrix::from_diag(values),
                    TargetSpec::RandomContraction { dim, norm } => random_contraction(*dim, *norm, &mut rng),
                    TargetSpec::RandomNormal { dim, radius } => random_normal(*dim, *radius, &mut rng),
                };
                if m.rows() == 0 || !m.is_square() {
                    return Err(CliError::Usage(format!("target {k} must be a non-empty square matrix")));
                }
                Ok(m)
            })
            .collect()
    }
}

fn resolve_paths(spec: &mut HostSpec, base: &Path) {
    match &mut spec.kind {
        HostKind::MatrixFile { path } if path.is_relative() => *path = base.join(&*path),
        HostKind::DirectSum { children } => children.iter_mut().for_each(|c| resolve_paths(c, base)),
        _ => {}
    }
}

/// Output directory, created on demand.
pub fn out_dir(out: &Option<PathBuf>) -> CliResult<PathBuf> {
    let dir = out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    Ok(dir)
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable output");
    text.push('\n');
    write_file(path, &text)
}
