use std::fmt::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use pinchwork::dilation::{halmos_dilation, DilationResult};
use pinchwork::essrange::essential_range_estimate_of;
use pinchwork::numrange::{contains_disc, numerical_range_hull, DiscCertificate};
use pinchwork::pinching::{pinch_normal, pinch_with, realize_contraction_compression, PinchMode, PinchOptions};
use pinchwork::{compress, Frame};
use serde::{Deserialize, Serialize};

use crate::config::{out_dir, write_file, write_json, JobConfig};
use crate::error::{CliError, CliResult};
use crate::plot::{extent_for, Plot};

const DEFAULT_ANGLES: usize = 360;
const DEFAULT_RHO: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Fast,
    Faithful,
}

impl From<ModeArg> for PinchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Fast => PinchMode::Fast,
            ModeArg::Faithful => PinchMode::Faithful,
        }
    }
}

/// Flags shared by the computation verbs; flags override config values.
#[derive(Debug, Clone, Default, Args)]
pub struct JobArgs {
    /// JSON job configuration.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory (default: current directory).
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Number of support angles.
    #[arg(long, value_name = "N")]
    pub angles: Option<usize>,
    /// Disc radius to certify.
    #[arg(long, value_name = "R")]
    pub radius: Option<f64>,
    /// Exit with status 2 when the disc certificate fails.
    #[arg(long)]
    pub require: bool,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Strict-contraction bound for targets.
    #[arg(long, value_name = "R")]
    pub rho: Option<f64>,
    /// Seed for random targets.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Also write an SVG plot.
    #[arg(long)]
    pub svg: bool,
}

impl JobArgs {
    /// Config file merged with command-line overrides.
    pub fn job(&self) -> CliResult<JobConfig> {
        let mut job = match &self.config {
            Some(path) => JobConfig::load(path)?,
            None => JobConfig::default(),
        };
        job.n_angles = self.angles.or(job.n_angles);
        job.radius = self.radius.or(job.radius);
        job.rho = self.rho.or(job.rho);
        job.seed = self.seed.or(job.seed);
        if let Some(m) = self.mode {
            job.mode = Some(m.into());
        }
        Ok(job)
    }
}

fn angles(job: &JobConfig) -> CliResult<usize> {
    match job.n_angles.unwrap_or(DEFAULT_ANGLES) {
        n if n >= 8 => Ok(n),
        n => Err(CliError::Usage(format!("--angles must be at least 8, got {n}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct NumrangeReport {
    dim: usize,
    n_angles: usize,
    /// Largest sampled support value.
    numerical_radius: f64,
    disc: Option<DiscCertificate>,
}

pub fn numrange(args: &JobArgs) -> CliResult<String> {
    let job = args.job()?;
    if args.require && job.radius.is_none() {
        return Err(CliError::Usage("--require needs a radius".into()));
    }
    let a = job.host()?;
    let n_angles = angles(&job)?;
    let hull = numerical_range_hull(&a, n_angles)?;
    let disc = job.radius.map(|r| contains_disc(&a, r, n_angles)).transpose()?;
    let dir = out_dir(&args.out)?;

    let mut csv = String::from("theta,support,re,im\n");
    for s in &hull.samples {
        let _ = writeln!(csv, "{},{},{},{}", s.theta, s.support, s.point.re, s.point.im);
    }
    write_file(&dir.join("boundary.csv"), &csv)?;
    let radius = hull.samples.iter().map(|s| s.support).fold(f64::NEG_INFINITY, f64::max);
    let report = NumrangeReport {
        dim: a.rows(),
        n_angles,
        numerical_radius: radius,
        disc,
    };
    write_json(&dir.join("numrange.json"), &report)?;
    if args.svg {
        let points = hull.points();
        let mut plot = Plot::new(extent_for(&points).max(job.radius.unwrap_or(0.0) * 1.1));
        plot.hull(&points, "#1f77b4");
        if let Some(r) = job.radius {
            plot.disc(r, "#d62728");
        }
        write_file(&dir.join("numrange.svg"), &plot.finish())?;
    }

    let mut summary = format!("numerical radius {radius:.12} over {n_angles} angles");
    if let Some(d) = disc {
        let _ = write!(summary, "; disc {} margin {:.6e}", d.radius, d.margin);
        if args.require && !d.holds() {
            return Err(CliError::Certification(format!(
                "disc of radius {} not contained (margin {:.6e})",
                d.radius, d.margin
            )));
        }
    }
    Ok(summary)
}

#[derive(Serialize, Deserialize)]
struct EssrangeReport {
    dim: usize,
    removals: Vec<usize>,
    thetas: Vec<f64>,
    intersection_support: Vec<f64>,
    /// Smallest support of each compression's hull.
    min_support_per_removal: Vec<f64>,
}

pub fn essrange(args: &JobArgs) -> CliResult<String> {
    let job = args.job()?;
    let a = job.host()?;
    let n_angles = angles(&job)?;
    let max_removal = job.max_removal.unwrap_or(a.rows() / 4);
    let est = essential_range_estimate_of(&a, max_removal, n_angles)?;
    let dir = out_dir(&args.out)?;

    let polygon = est.intersection_polygon();
    let mut csv = String::from("theta,support,re,im\n");
    for ((t, s), v) in est.thetas.iter().zip(&est.intersection_support).zip(&polygon) {
        let _ = writeln!(csv, "{t},{s},{},{}", v.re, v.im);
    }
    write_file(&dir.join("essrange.csv"), &csv)?;
    let report = EssrangeReport {
        dim: a.rows(),
        removals: est.removals.clone(),
        thetas: est.thetas.clone(),
        intersection_support: est.intersection_support.clone(),
        min_support_per_removal: est
            .hulls
            .iter()
            .map(|h| h.samples.iter().map(|s| s.support).fold(f64::INFINITY, f64::min))
            .collect(),
    };
    write_json(&dir.join("essrange.json"), &report)?;
    if args.svg {
        let full = est.hulls[0].points();
        let mut plot = Plot::new(extent_for(&full));
        plot.hull(&full, "#1f77b4");
        plot.hull(&polygon, "#2ca02c");
        write_file(&dir.join("essrange.svg"), &plot.finish())?;
    }
    Ok(format!(
        "removals 0..={max_removal}: intersection support in [{:.12}, {:.12}]",
        est.min_support(),
        est.intersection_support.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    ))
}

pub fn dilate(args: &JobArgs) -> CliResult<String> {
    let job = args.job()?;
    let rho = job.rho.unwrap_or(DEFAULT_RHO);
    let targets = job.targets()?;
    let results = targets
        .iter()
        .map(|x| halmos_dilation(x, rho))
        .collect::<Result<Vec<DilationResult>, _>>()?;
    write_json(&out_dir(&args.out)?.join("dilation.json"), &results)?;
    let mut summary = String::new();
    for (k, r) in results.iter().enumerate() {
        let n = r.unitary.rows();
        let defect = (&r.unitary.adjoint_matmul(&r.unitary) - &pinchwork::ComplexMatrix::identity(n)).op_norm();
        let _ = writeln!(summary, "target {k}: dim {} -> {n}, unitarity defect {defect:.3e}", r.original_dim);
    }
    Ok(summary.trim_end().to_string())
}

#[derive(Serialize, Deserialize)]
struct CompressionReport {
    rho: f64,
    frames: Vec<Frame>,
    residuals: Vec<f64>,
    orthonormality: Vec<f64>,
}

pub fn compress_cmd(args: &JobArgs) -> CliResult<String> {
    let job = args.job()?;
    let a = job.host()?;
    let rho = job.rho.unwrap_or(DEFAULT_RHO);
    let targets = job.targets()?;
    let mut report = CompressionReport {
        rho,
        frames: Vec::new(),
        residuals: Vec::new(),
        orthonormality: Vec::new(),
    };
    for (k, x) in targets.iter().enumerate() {
        let f = realize_contraction_compression(&a, x, rho).map_err(|e| CliError::from(e.at_target(k)))?;
        report.residuals.push((&compress(&a, &f)? - x).op_norm());
        report.orthonormality.push(f.orthonormality_error());
        report.frames.push(f);
    }
    write_json(&out_dir(&args.out)?.join("compression.json"), &report)?;
    let mut summary = String::new();
    for (k, (r, o)) in report.residuals.iter().zip(&report.orthonormality).enumerate() {
        let _ = writeln!(summary, "target {k}: residual {r:.3e}, orthonormality {o:.3e}");
    }
    Ok(summary.trim_end().to_string())
}

pub fn pinch(args: &JobArgs) -> CliResult<String> {
    let job = args.job()?;
    let a = job.host()?;
    let rho = job.rho.unwrap_or(DEFAULT_RHO);
    let targets = job.targets()?;
    let cert = if job.normal {
        pinch_normal(&a, &targets, rho)?
    } else {
        let options = PinchOptions {
            gamma: job.gamma,
            ..PinchOptions::with_mode(job.mode.unwrap_or_default())
        };
        pinch_with(&a, &targets, rho, &options)?
    };
    write_json(&out_dir(&args.out)?.join("certificate.json"), &cert)?;
    let mut summary = String::new();
    for (k, r) in cert.residuals.iter().enumerate() {
        let _ = write!(summary, "block {k}: dim {}, residual {r:.3e}", cert.frames[k].rank());
        if let Some(m) = cert.mass_bounds.as_ref().and_then(|m| m.get(k)) {
            let _ = write!(summary, ", mass {:.6} >= {:.6} (level {})", m.mass, m.epsilon, m.level);
        }
        summary.push('\n');
    }
    let _ = write!(
        summary,
        "max residual {:.3e}, orthogonality {:.3e}, coverage {:.4}",
        cert.max_residual(),
        cert.orthogonality,
        cert.coverage
    );
    Ok(summary)
}
