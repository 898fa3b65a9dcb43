use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pinchwork::pinching::PinchingCertificate;
use serde_json::Value;
use tempfile::TempDir;

fn pinchwork(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pinchwork"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn job(dir: &TempDir, json: &str) -> String {
    let path = dir.path().join("job.json");
    fs::write(&path, json).unwrap();
    path.display().to_string()
}

fn read_json(path: impl AsRef<Path>) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

const SHIFT_100: &str = r#"{"host": {"kind": "truncated_unilateral_shift", "dim": 100}}"#;

#[test]
fn numrange_disc_margin_of_the_shift() {
    let dir = TempDir::new().unwrap();
    let cfg = job(&dir, SHIFT_100);
    let out = pinchwork(dir.path(), &["numrange", "--config", &cfg, "--radius", "0.9", "--require", "--out", "res"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(dir.path().join("res/numrange.json"));
    let margin = report["disc"]["margin"].as_f64().unwrap();
    assert!((margin - ((std::f64::consts::PI / 101.0).cos() - 0.9)).abs() < 1e-9);
    let csv = fs::read_to_string(dir.path().join("res/boundary.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("theta,support,re,im"));
    assert_eq!(lines.count(), 360);
}

#[test]
fn numrange_require_fails_outside_the_range() {
    let dir = TempDir::new().unwrap();
    let cfg = job(&dir, SHIFT_100);
    let out = pinchwork(dir.path(), &["numrange", "--config", &cfg, "--radius", "1.0", "--require"]);
    assert_eq!(out.status.code(), Some(2));
    // without --require the negative margin is only reported
    let out = pinchwork(dir.path(), &["numrange", "--config", &cfg, "--radius", "1.0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(read_json(dir.path().join("numrange.json"))["disc"]["margin"].as_f64().unwrap() < 0.0);
}

#[test]
fn numrange_scalar_host_draws_a_marker() {
    let dir = TempDir::new().unwrap();
    let cfg = job(&dir, r#"{"host": {"kind": "diagonal", "values": [[0.5, 0.0]]}}"#);
    let out = pinchwork(dir.path(), &["numrange", "--config", &cfg, "--svg", "--angles", "16"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = fs::read_to_string(dir.path().join("numrange.svg")).unwrap();
    assert!(svg.contains(r#"r="4""#) && !svg.contains("<polygon"));
}

#[test]
fn usage_and_io_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    assert_eq!(pinchwork(dir.path(), &["numrange", "--config", "missing.json"]).status.code(), Some(1));
    assert_eq!(pinchwork(dir.path(), &["numrange"]).status.code(), Some(1));
    assert_eq!(pinchwork(dir.path(), &["frobnicate"]).status.code(), Some(1));
    let cfg = job(&dir, SHIFT_100);
    assert_eq!(pinchwork(dir.path(), &["numrange", "--config", &cfg, "--require"]).status.code(), Some(1));
    let bad = job(&dir, r#"{"host": {"kind": "truncated_unilateral_shift"}}"#);
    assert_eq!(pinchwork(dir.path(), &["numrange", "--config", &bad]).status.code(), Some(1));
    assert_eq!(pinchwork(dir.path(), &["--help"]).status.code(), Some(0));
}

const PINCH_512: &str = r#"{
  "host": {"kind": "truncated_unilateral_shift", "dim": 512},
  "mode": "fast", "rho": 0.9, "seed": 11,
  "targets": [
    {"matrix": [[[0.3, 0.1]]]},
    {"diagonal": [[0.0, 0.5], [-0.5, 0.0]]},
    {"random_contraction": {"dim": 3, "norm": 0.7}}
  ]
}"#;

#[test]
fn pinch_three_targets_fast() {
    let dir = TempDir::new().unwrap();
    let cfg = job(&dir, PINCH_512);
    let out = pinchwork(dir.path(), &["pinch", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("certificate.json")).unwrap();
    let cert: PinchingCertificate = serde_json::from_str(&text).unwrap();
    assert_eq!(cert.frames.len(), 3);
    assert!(cert.max_residual() <= 1e-7);
    assert!(String::from_utf8_lossy(&out.stdout).contains("block 2: dim 3"));
    // exact round trip of every numeric field
    assert_eq!(serde_json::to_string_pretty(&cert).unwrap() + "\n", text);
}

#[test]
fn pinch_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = job(&dir, &PINCH_512.replace(r#""norm": 0.7"#, r#""norm": 0.3"#));
    let read = |sub: &str| {
        let out = pinchwork(dir.path(), &["pinch", "--config", &cfg, "--mode", "faithful", "--rho", "0.8", "--out", sub]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        fs::read(dir.path().join(sub).join("certificate.json")).unwrap()
    };
    let first = read("a");
    assert_eq!(first, read("b"));
    let cert: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(cert["mass_bounds"].as_array().unwrap().len(), 3);
}

#[test]
fn pinch_empty_target_list() {
    let dir = TempDir::new().unwrap();
    let cfg = job(&dir, r#"{"host": {"kind": "truncated_unilateral_shift", "dim": 16}, "targets": []}"#);
    let out = pinchwork(dir.path(), &["pinch", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let cert: PinchingCertificate =
        serde_json::from_str(&fs::read_to_string(dir.path().join("certificate.json")).unwrap()).unwrap();
    assert!(cert.frames.is_empty() && cert.residuals.is_empty());
}

#[test]
fn pinch_oversubscribed_budget_names_the_target() {
    let dir = TempDir::new().unwrap();
    let cfg = job(
        &dir,
        r#"{"host": {"kind": "truncated_unilateral_shift", "dim": 40}, "seed": 3,
            "targets": [{"random_contraction": {"dim": 2, "norm": 0.5}},
                        {"random_contraction": {"dim": 2, "norm": 0.5}},
                        {"random_contraction": {"dim": 4, "norm": 0.5}}]}"#,
    );
    let out = pinchwork(dir.path(), &["pinch", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("target 2"), "{err}");
}

#[test]
fn random_targets_without_seed_are_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = job(
        &dir,
        r#"{"host": {"kind": "truncated_unilateral_shift", "dim": 64},
            "targets": [{"random_normal": {"dim": 2, "radius": 0.5}}]}"#,
    );
    assert_eq!(pinchwork(dir.path(), &["pinch", "--config", &cfg]).status.code(), Some(1));
    assert_eq!(pinchwork(dir.path(), &["pinch", "--config", &cfg, "--seed", "5"]).status.code(), Some(0));
}

#[test]
fn essrange_dilate_and_compress() {
    let dir = TempDir::new().unwrap();
    let cfg = job(
        &dir,
        r#"{"host": {"kind": "truncated_unilateral_shift", "dim": 200}, "max_removal": 20, "n_angles": 36,
            "targets": [{"matrix": [[[0.2, 0.0], [0.4, 0.0]], [[0.0, 0.0], [-0.3, 0.1]]]}]}"#,
    );
    let out = pinchwork(dir.path(), &["essrange", "--config", &cfg, "--svg"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let ess = read_json(dir.path().join("essrange.json"));
    let expected = (std::f64::consts::PI / 181.0).cos();
    for s in ess["intersection_support"].as_array().unwrap() {
        assert!((s.as_f64().unwrap() - expected).abs() < 1e-9);
    }
    assert!(dir.path().join("essrange.svg").exists());

    let out = pinchwork(dir.path(), &["dilate", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("dim 2 -> 4"));

    let out = pinchwork(dir.path(), &["compress", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(dir.path().join("compression.json"));
    assert!(report["residuals"][0].as_f64().unwrap() < 1e-8);
}

#[test]
fn check_suites() {
    let dir = TempDir::new().unwrap();
    let out = pinchwork(dir.path(), &["check", "walsh", "--out", "walsh.json"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS")).count(), 3);
    let summary = read_json(dir.path().join("walsh.json"));
    assert_eq!(summary["failed"], 0);
    assert_eq!(pinchwork(dir.path(), &["check", "bogus"]).status.code(), Some(1));
}
