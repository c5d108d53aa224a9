use lrtroc::io::{read_curve_csv, value_f64};
use lrtroc::CurveKind;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

const SHIFT: &str = r#"{"f0": {"family": "gaussian", "params": {"mu": 0, "sigma": 1}},
 "f1": {"family": "gaussian", "params": {"mu": 1, "sigma": 1}}}"#;

const MIXTURE: &str = r#"{"f0": {"family": "gaussian", "params": {"mu": 0, "sigma": 1}},
 "f1": {"family": "gaussian_mixture", "params": {"components": [
   {"weight": 0.5, "mu": -2, "sigma": 1}, {"weight": 0.5, "mu": 2, "sigma": 1}]}}}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn lrtroc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrtroc")).args(args).output().unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn optimize_then_verify_on_concave_model() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "shift.json", SHIFT);
    let curve = dir.path().join("opt.csv");
    let out = lrtroc(&["optimize", "--model", arg(&model), "--out", arg(&curve)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let out = lrtroc(&["verify", "--model", arg(&model), "--curve", arg(&curve), "--tol", "1e-6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert!(v["max_gap"].as_f64().unwrap().abs() <= 1e-6);
    assert!(v["min_gap"].as_f64().unwrap().abs() <= 1e-6);
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn verify_breach_exits_one() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "mix.json", MIXTURE);
    let out = lrtroc(&["verify", "--model", arg(&model), "--n-points", "201", "--tol", "1e-9"]);
    assert_eq!(out.status.code(), Some(1));
    let out = lrtroc(&["verify", "--model", arg(&model)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn regions_on_gaussian_shift() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "shift.json", SHIFT);
    let out = lrtroc(&["regions", "--model", arg(&model), "--eta", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let intervals = v["intervals"].as_array().unwrap();
    assert_eq!(intervals.len(), 1);
    assert!((value_f64(&intervals[0][0]).unwrap() - 0.5).abs() <= 1e-3);
    assert_eq!(intervals[0][1], "inf");
}

#[test]
fn concavity_on_mixture() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "mix.json", MIXTURE);
    let out = lrtroc(&["concavity", "--model", arg(&model)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["concave"], false);
    assert!((v["first_violation"].as_f64().unwrap() - 0.5).abs() < 0.01);
}

#[test]
fn curve_outputs_round_trip_and_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "mix.json", MIXTURE);
    for (cmd, kind) in [
        ("svt", CurveKind::Svt),
        ("optimize", CurveKind::LrtConstructed),
        ("oracle", CurveKind::LrtOracle),
        ("hull", CurveKind::Hull),
    ] {
        let a = lrtroc(&[cmd, "--model", arg(&model), "--n-points", "301"]);
        let b = lrtroc(&[cmd, "--model", arg(&model), "--n-points", "301"]);
        assert_eq!(a.status.code(), Some(0), "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        let curve = read_curve_csv(a.stdout.as_slice(), kind).unwrap();
        let again = lrtroc::io::curve_to_csv_string(&curve);
        assert_eq!(again.as_bytes(), a.stdout.as_slice(), "{cmd}");
    }
}

#[test]
fn samples_mode() {
    let dir = TempDir::new().unwrap();
    let samples = write(&dir, "s.csv", "score,label\n0,0\n1,1\n");
    let out = lrtroc(&["svt", "--samples", arg(&samples)]);
    assert_eq!(out.status.code(), Some(0));
    let c = read_curve_csv(out.stdout.as_slice(), CurveKind::Empirical).unwrap();
    let xy: Vec<_> = c.points().iter().map(|p| (p.pf, p.pd)).collect();
    assert_eq!(xy, vec![(0.0, 0.0), (0.0, 1.0), (1.0, 1.0)]);

    for cmd in ["concavity", "optimize", "hull"] {
        assert_eq!(lrtroc(&[cmd, "--samples", arg(&samples)]).status.code(), Some(0), "{cmd}");
    }
    for cmd in ["oracle", "regions", "verify"] {
        assert_eq!(lrtroc(&[cmd, "--samples", arg(&samples), "--eta", "1"]).status.code(), Some(2), "{cmd}");
    }
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    let garbage = write(&dir, "bad.json", "{not json");
    assert_eq!(lrtroc(&["svt", "--model", arg(&garbage)]).status.code(), Some(2));
    let unknown = write(&dir, "unk.json", &SHIFT.replace("\"sigma\": 1}},", "\"sigma\": 1, \"nu\": 3}},"));
    assert_eq!(lrtroc(&["svt", "--model", arg(&unknown)]).status.code(), Some(2));
    assert_eq!(lrtroc(&["svt"]).status.code(), Some(2));
    assert_eq!(lrtroc(&["regions", "--model", arg(&write(&dir, "s.json", SHIFT))]).status.code(), Some(2));

    // f0 vanishes outside [0, 1] while f1 does not.
    let degenerate = write(
        &dir,
        "deg.json",
        r#"{"f0": {"family": "uniform", "params": {"a": 0, "b": 1}},
            "f1": {"family": "gaussian", "params": {"mu": 0.5, "sigma": 1}}}"#,
    );
    assert_eq!(lrtroc(&["svt", "--model", arg(&degenerate)]).status.code(), Some(3));

    let bad_sigma = write(&dir, "neg.json", &SHIFT.replace("\"sigma\": 1}},", "\"sigma\": -1}},"));
    assert_eq!(lrtroc(&["svt", "--model", arg(&bad_sigma)]).status.code(), Some(3));
}
