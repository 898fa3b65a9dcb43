//! Built-in property suites.

use std::f64::consts::PI;
use std::time::Instant;

use pinchwork::dilation::halmos_dilation;
use pinchwork::essrange::{essential_range_estimate, shift_support, HostSpec};
use pinchwork::numrange::{
    contains_disc, numerical_range_hull, realize_value, schur_horn_feasible, support_point, MajorizationWitness,
};
use pinchwork::pinching::{
    choose_walsh_level, equalize_blocks, parker_equalize, pinch, pinch_normal, pinch_with,
    realize_contraction_compression, walsh_matrix, PinchMode, PinchOptions, PinchingCertificate,
};
use pinchwork::random::{gaussian_matrix, random_contraction, random_normal, rng_from_seed};
use pinchwork::{compress, ComplexMatrix, Tolerances, C64};
use rand::Rng;
use serde::Serialize;

pub const SUITES: [&str; 5] = ["walsh", "parker", "dilation", "numrange", "pinch"];

type Property = fn(u64) -> Result<String, String>;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub suite: String,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub results: Vec<CheckResult>,
}

/// Runs `suite` (one of [`SUITES`] or `all`); `None` for an unknown name.
pub fn run(suite: &str, seed: u64, mut report: impl FnMut(&CheckResult)) -> Option<Summary> {
    let names: Vec<&'static str> = match suite {
        "all" => SUITES.to_vec(),
        s => vec![*SUITES.iter().find(|n| **n == s)?],
    };
    let mut results = Vec::new();
    for name in names {
        for (check, property) in properties(name) {
            let start = Instant::now();
            let outcome = property(seed);
            let r = CheckResult {
                suite: name,
                name: check,
                passed: outcome.is_ok(),
                detail: outcome.unwrap_or_else(|e| e),
                seconds: start.elapsed().as_secs_f64(),
            };
            report(&r);
            results.push(r);
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    Some(Summary {
        suite: suite.to_string(),
        seed,
        passed: results.len() - failed,
        failed,
        results,
    })
}

fn properties(suite: &str) -> Vec<(&'static str, Property)> {
    match suite {
        "walsh" => vec![
            ("orthogonality", walsh_orthogonality as Property),
            ("block equalization", walsh_equalization),
            ("level minimality", walsh_level_minimality),
        ],
        "parker" => vec![("constant diagonal", parker_diagonal as Property)],
        "dilation" => vec![("unitary and normal dilations", dilation_invariants as Property)],
        "numrange" => vec![
            ("shift numerical radius", shift_radius as Property),
            ("shift disc margin", shift_disc_margin),
            ("value realization", value_realization),
            ("schur-horn sequence", schur_horn_sequence),
            ("essential range of the shift", essential_range),
        ],
        "pinch" => vec![
            ("single compressions", single_compressions as Property),
            ("fast pinching", fast_pinching),
            ("faithful mass bound", faithful_masses),
            ("normal pinching", normal_pinching),
        ],
        _ => Vec::new(),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shift(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| C64::new(if j == i + 1 { 1.0 } else { 0.0 }, 0.0))
}

fn walsh_orthogonality(_: u64) -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for k in 1..=8 {
        let v = walsh_matrix(k).map_err(|e| e.to_string())?;
        let mag = 2f64.powf(-(k as f64) / 2.0);
        ensure(v.as_slice().iter().all(|z| z.re.abs() == mag && z.im == 0.0), || {
            format!("level {k}: entries are not ±2^(-k/2)")
        })?;
        worst = worst.max((&(&v * &v.transpose()) - &ComplexMatrix::identity(1 << k)).frobenius_norm());
    }
    ensure(worst <= 1e-12, || format!("‖VVᵀ − I‖ = {worst:e}"))?;
    Ok(format!("k = 1..8, ‖VVᵀ − I‖ ≤ {worst:.1e}"))
}

fn walsh_equalization(seed: u64) -> Result<String, String> {
    let mut rng = rng_from_seed(seed);
    let mut worst: f64 = 0.0;
    for k in 1..=5 {
        let blocks: Vec<ComplexMatrix> = (0..1 << k).map(|_| gaussian_matrix(4, 4, &mut rng)).collect();
        let (conj, _) = equalize_blocks(&blocks).map_err(|e| e.to_string())?;
        let sum = blocks.iter().fold(ComplexMatrix::zeros(4, 4), |acc, b| &acc + b);
        let mean = sum.scale_real(1.0 / (1 << k) as f64);
        for i in 0..1 << k {
            worst = worst.max(conj.submatrix(4 * i, 4 * i, 4, 4).max_abs_diff(&mean));
        }
    }
    ensure(worst <= 1e-10, || format!("block deviation {worst:e}"))?;
    Ok(format!("2..32 blocks of size 4, deviation {worst:.1e}"))
}

fn walsh_level_minimality(_: u64) -> Result<String, String> {
    let holds = |l: usize, norm: f64, rho: f64| {
        let s = (1u64 << l) as f64;
        s / (s - 2.0) * norm < rho
    };
    for k in 0..40 {
        let rho = 0.5 + 0.012 * k as f64;
        let norm = rho * (0.02 + 0.024 * k as f64);
        let l = choose_walsh_level(norm, rho).map_err(|e| e.to_string())?.l;
        ensure(holds(l, norm, rho) && (l == 2 || !holds(l - 1, norm, rho)), || {
            format!("level {l} is not minimal for ‖X‖ = {norm}, ρ = {rho}")
        })?;
    }
    Ok("40 (‖X‖, ρ) pairs".into())
}

fn parker_diagonal(seed: u64) -> Result<String, String> {
    let mut rng = rng_from_seed(seed);
    let (mut diag, mut sim): (f64, f64) = (0.0, 0.0);
    for _ in 0..50 {
        let a = gaussian_matrix(64, 64, &mut rng);
        let (b, u) = parker_equalize(&a).map_err(|e| e.to_string())?;
        let mean = a.trace() / 64.0;
        diag = b.diag().iter().map(|z| (z - mean).norm()).fold(diag, f64::max);
        // B = U A U* with U unitary: the spectrum is preserved
        sim = sim.max((&(&u * &a) * &u.adjoint()).max_abs_diff(&b));
        sim = sim.max((&u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(64)));
    }
    ensure(diag <= 1e-9, || format!("diagonal deviation {diag:e}"))?;
    ensure(sim <= 1e-9, || format!("similarity defect {sim:e}"))?;
    Ok(format!("50 matrices 64×64, diagonal {diag:.1e}, similarity {sim:.1e}"))
}

fn dilation_invariants(seed: u64) -> Result<String, String> {
    let mut rng = rng_from_seed(seed);
    let (mut unit, mut corner, mut normal): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for case in 0..200 {
        let d = 1 + case % 8;
        let x = random_contraction(d, 0.9 * rng.gen_range(0.0..0.999), &mut rng);
        let r = halmos_dilation(&x, 0.9).map_err(|e| e.to_string())?;
        unit = unit.max((&r.unitary.adjoint_matmul(&r.unitary) - &ComplexMatrix::identity(2 * d)).op_norm());
        corner = corner.max(r.normal.submatrix(0, 0, d, d).max_abs_diff(&x));
        normal = normal.max(r.normal.normality_deviation());
    }
    ensure(unit <= 1e-10 && corner <= 1e-12 && normal <= 1e-10, || {
        format!("unitary {unit:e}, corner {corner:e}, normal {normal:e}")
    })?;
    Ok(format!("200 cases, unitary {unit:.1e}, corner {corner:.1e}, normal {normal:.1e}"))
}

fn shift_radius(_: u64) -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for n in [3, 10, 100] {
        let hull = numerical_range_hull(&shift(n), 360).map_err(|e| e.to_string())?;
        let r = hull.samples.iter().map(|s| s.support).fold(f64::NEG_INFINITY, f64::max);
        worst = worst.max((r - shift_support(n)).abs());
    }
    ensure(worst <= 1e-6, || format!("error {worst:e}"))?;
    Ok(format!("N = 3, 10, 100, error {worst:.1e}"))
}

fn shift_disc_margin(_: u64) -> Result<String, String> {
    let cert = contains_disc(&shift(100), 0.9, 720).map_err(|e| e.to_string())?;
    let expected = shift_support(100) - 0.9;
    ensure((cert.margin - expected).abs() <= 1e-9, || format!("margin {} vs {expected}", cert.margin))?;
    Ok(format!("margin {:.6}", cert.margin))
}

fn value_realization(seed: u64) -> Result<String, String> {
    let mut rng = rng_from_seed(seed);
    let tol = Tolerances::default();
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let n = rng.gen_range(3..=8);
        let a = gaussian_matrix(n, n, &mut rng);
        let mut lambda = C64::new(0.0, 0.0);
        let mut total = 0.0;
        for k in 0..3 {
            let t = 2.0 * PI * (k as f64 + rng.gen_range(0.1..0.9)) / 3.0;
            let w = rng.gen_range(0.1..1.0);
            lambda += support_point(&a, t).map_err(|e| e.to_string())?.point * w;
            total += w;
        }
        lambda /= total;
        let h = realize_value(&a, lambda, &tol).map_err(|e| e.to_string())?;
        let unit = (pinchwork::linalg::norm(&h) - 1.0).abs();
        ensure(unit <= 1e-12, || format!("‖h‖ − 1 = {unit:e}"))?;
        worst = worst.max((a.quadratic_form(&h) - lambda).norm());
    }
    ensure(worst <= 1e-8, || format!("value error {worst:e}"))?;
    Ok(format!("500 pairs, value error {worst:.1e}"))
}

fn schur_horn_sequence(_: u64) -> Result<String, String> {
    let diagonal: Vec<f64> = (1..=4).map(|n| 1.0 - 1.0 / (n * n) as f64).collect();
    let v = schur_horn_feasible(&[1.0, 1.0, 0.0, 0.0], &diagonal).map_err(|e| e.to_string())?;
    match v.witness {
        Some(MajorizationWitness::SumMismatch {
            diagonal_sum,
            spectrum_sum,
        }) if !v.feasible => Ok(format!("rejected: sum {diagonal_sum:.6} vs {spectrum_sum}")),
        other => Err(format!("unexpected verdict {other:?}")),
    }
}

fn essential_range(_: u64) -> Result<String, String> {
    let est = essential_range_estimate(&HostSpec::unilateral_shift(1000), 50, 72).map_err(|e| e.to_string())?;
    let expected = shift_support(950);
    let worst = est.intersection_support.iter().map(|s| (s - expected).abs()).fold(0.0, f64::max);
    ensure(worst <= 1e-9, || format!("support error {worst:e}"))?;
    Ok(format!("dim 1000, removals 0..50, error {worst:.1e}"))
}

fn single_compressions(seed: u64) -> Result<String, String> {
    let a = shift(128);
    let mut rng = rng_from_seed(seed);
    let (mut res, mut orth): (f64, f64) = (0.0, 0.0);
    for case in 0..50 {
        let d = 1 + case % 4;
        let x = random_contraction(d, 0.8 * rng.gen_range(0.2..1.0), &mut rng);
        let f = realize_contraction_compression(&a, &x, 0.9).map_err(|e| format!("case {case}: {e}"))?;
        res = res.max((&compress(&a, &f).map_err(|e| e.to_string())? - &x).op_norm());
        orth = orth.max(f.orthonormality_error());
    }
    ensure(res <= 1e-8 && orth <= 1e-10, || format!("residual {res:e}, orthonormality {orth:e}"))?;
    Ok(format!("50 targets on shift(128), residual {res:.1e}"))
}

fn certificate_bounds(cert: &PinchingCertificate, targets: &[ComplexMatrix], a: &ComplexMatrix) -> Result<(), String> {
    ensure(cert.max_residual() <= 1e-7, || format!("residual {:e}", cert.max_residual()))?;
    ensure(cert.orthogonality <= 1e-10, || format!("orthogonality {:e}", cert.orthogonality))?;
    let q = cert.stacked_frame().map_err(|e| e.to_string())?;
    let b = compress(a, &q).map_err(|e| e.to_string())?;
    let mut off = 0;
    for (j, x) in targets.iter().enumerate() {
        let d = x.rows();
        let dev = b.submatrix(off, off, d, d).max_abs_diff(x);
        ensure(dev <= 1e-7, || format!("block {j} of Q*AQ deviates by {dev:e}"))?;
        off += d;
    }
    Ok(())
}

fn fast_pinching(seed: u64) -> Result<String, String> {
    let a = shift(512);
    let mut rng = rng_from_seed(seed);
    let targets: Vec<ComplexMatrix> =
        (0..6).map(|_| random_contraction(4, 0.8 * rng.gen_range(0.2..1.0), &mut rng)).collect();
    let cert = pinch(&a, &targets, 0.9, PinchMode::Fast).map_err(|e| e.to_string())?;
    certificate_bounds(&cert, &targets, &a)?;
    Ok(format!("6 targets of dim 4 on shift(512), residual {:.1e}", cert.max_residual()))
}

fn faithful_masses(_: u64) -> Result<String, String> {
    let a = shift(512);
    let targets = vec![
        ComplexMatrix::from_real_diag(&[0.3]),
        ComplexMatrix::from_real_rows(&[[0.0, 0.35], [0.0, 0.0]]),
        ComplexMatrix::from_diag(&[C64::new(0.0, 0.2), C64::new(-0.25, 0.0)]),
    ];
    let options = PinchOptions {
        gamma: Some(1.0),
        ..PinchOptions::with_mode(PinchMode::Faithful)
    };
    let cert = pinch_with(&a, &targets, 0.8, &options).map_err(|e| e.to_string())?;
    certificate_bounds(&cert, &targets, &a)?;
    let masses = cert.mass_bounds.as_ref().ok_or("no mass bounds")?;
    for (j, (m, x)) in masses.iter().zip(&targets).enumerate() {
        let l = choose_walsh_level(x.op_norm(), 0.8).map_err(|e| e.to_string())?.l;
        let epsilon = 2f64.powf(-(l as f64) / 2.0);
        ensure(m.mass >= epsilon - 1e-8, || format!("target {j}: mass {} < {epsilon}", m.mass))?;
    }
    Ok(format!("3 targets on shift(512), ρ = 0.8, residual {:.1e}", cert.max_residual()))
}

fn normal_pinching(seed: u64) -> Result<String, String> {
    let a = shift(128);
    let mut rng = rng_from_seed(seed);
    let targets: Vec<ComplexMatrix> = [2, 3, 4].iter().map(|&d| random_normal(d, 0.8, &mut rng)).collect();
    let cert = pinch_normal(&a, &targets, 0.9).map_err(|e| e.to_string())?;
    ensure(cert.max_residual() <= 1e-8 && cert.orthogonality <= 1e-10, || {
        format!("residual {:e}, orthogonality {:e}", cert.max_residual(), cert.orthogonality)
    })?;
    Ok(format!("3 normal targets on shift(128), residual {:.1e}", cert.max_residual()))
}
