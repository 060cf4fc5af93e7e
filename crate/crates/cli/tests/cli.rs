use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn horoflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horoflow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|t| t.parse().unwrap()).collect())
        .collect()
}

#[test]
fn flow_is_deterministic() {
    let args = ["flow", "--model", "octagon_so3", "--seed", "5", "--steps", "200", "--start", "2 1 1 1"];
    let a = horoflow(&args);
    let b = horoflow(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn flow_writes_file_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.csv");
    let out = horoflow(&["flow", "--model", "modular", "--steps", "10", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(rows(&text).len(), 11);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn modular_horocycle_returns_after_unit_time() {
    let out = horoflow(&["flow", "--model", "modular", "--flow", "u", "--dt", "0.25", "--steps", "4"]);
    assert!(out.status.success());
    let r = rows(&stdout(&out));
    assert_eq!(r.len(), 5);
    assert!((r[4][0] - 1.0).abs() < 1e-12);
    for k in 1..r[0].len() {
        assert!((r[4][k] - r[0][k]).abs() < 1e-9, "column {k}: {} vs {}", r[4][k], r[0][k]);
    }
}

#[test]
fn zero_steps_is_header_only() {
    let out = horoflow(&["flow", "--model", "t3a", "--steps", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "time,c1,c2,c3"));
    assert!(rows(&text).is_empty());
}

#[test]
fn sol3u_keeps_base_coordinate() {
    let out = horoflow(&["flow", "--model", "t3a", "--A", "3 2 1 1", "--steps", "500", "--start", "0.1 0.2 0.3"]);
    assert!(out.status.success());
    let r = rows(&stdout(&out));
    assert_eq!(r.len(), 501);
    assert!(r.iter().all(|row| (row[3] - 0.3).abs() < 1e-12));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "model = modular\nsteps = 50\ndt = 0.1\n").unwrap();
    let out = horoflow(&["flow", "--config", cfg.to_str().unwrap(), "--steps", "3"]);
    assert!(out.status.success());
    assert_eq!(rows(&stdout(&out)).len(), 4);

    std::fs::write(&cfg, "model = modular\ncolour = red\n").unwrap();
    assert_eq!(horoflow(&["flow", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn density_report_fields() {
    let out = horoflow(&["density", "--model", "t3a", "--steps", "20000"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["model"], "t3a");
    assert_eq!(v["flow"], "sol3u");
    assert_eq!(v["steps"], 20000);
    assert_eq!(v["bins"], serde_json::json!([50, 50]));
    assert_eq!(v["total"], 2500);
    let fraction = v["fraction"].as_f64().unwrap();
    assert_eq!(fraction, v["visited"].as_f64().unwrap() / 2500.0);
    assert!(fraction > 0.5);

    let empty = horoflow(&["density", "--model", "octagon", "--steps", "0"]);
    let v: serde_json::Value = serde_json::from_slice(&empty.stdout).unwrap();
    assert_eq!(v["fraction"], 0.0);
}

#[test]
fn exit_codes() {
    assert_eq!(horoflow(&["flow", "--model", "torus"]).status.code(), Some(2));
    assert_eq!(horoflow(&["flow", "--model", "octagon", "--dt", "0"]).status.code(), Some(2));
    assert_eq!(horoflow(&["flow", "--model", "t3a", "--steps", "3", "--start", "1 2"]).status.code(), Some(2));
    assert_eq!(horoflow(&["flow", "--model", "t3a", "--A", "1 1 0 1"]).status.code(), Some(1));
    assert_eq!(horoflow(&["flow", "--model", "t3a", "--A", "2 1 1 2"]).status.code(), Some(1));
    assert_eq!(horoflow(&["flow"]).status.code(), Some(2));
    assert_eq!(horoflow(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(horoflow(&["check", "unknown"]).status.code(), Some(2));
}

#[test]
fn classify_samples() {
    let run = |name: &str| {
        let out = horoflow(&["classify", "--gens", data(name).to_str().unwrap()]);
        assert!(out.status.success(), "{name}");
        stdout(&out)
    };
    let modular = run("modular.gens");
    assert!(modular.starts_with("classification: DiscreteCandidate"));
    assert!(!modular.contains("semi-parabolic elements: 0\n"));
    assert!(run("t3a_golden_p1.gens").starts_with("classification: FixesBoundaryPoint(inf)"));
    assert!(run("rotations.gens").starts_with("classification: RotationLike(0.000000000 + 1.000000000i)"));
}

#[test]
fn classify_rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.gens");
    std::fs::write(&path, "T psl 1 1 0\n").unwrap();
    let out = horoflow(&["classify", "--gens", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.path().join("missing.gens");
    assert_eq!(horoflow(&["classify", "--gens", missing.to_str().unwrap()]).status.code(), Some(2));
    let out = horoflow(&["classify", "--gens", data("modular.gens").to_str().unwrap(), "--radius", "40"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_t3a_passes() {
    let out = horoflow(&["check", "t3a"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("criterion") && l.contains(" PASS ")).count(), 2);
}

#[test]
fn plot_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("orbit.csv");
    let svg = dir.path().join("orbit.svg");
    let out = horoflow(&["flow", "--model", "t3a", "--steps", "300", "-o", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let plot = |path: &Path| {
        horoflow(&["plot", "--input", csv.to_str().unwrap(), "--x", "c1", "--y", "c2", "-o", path.to_str().unwrap()])
    };
    assert!(plot(&svg).status.success());
    let first = std::fs::read(&svg).unwrap();
    assert!(plot(&svg).status.success());
    assert_eq!(first, std::fs::read(&svg).unwrap());
    assert_eq!(String::from_utf8(first).unwrap().matches("<circle").count(), 301);

    std::fs::write(&csv, "time,c1\n0,oops\n").unwrap();
    assert_eq!(plot(&svg).status.code(), Some(2));
}

#[test]
fn density_examples_reach_coverage() {
    let fraction = |args: &[&str]| -> f64 {
        let out = horoflow(args);
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v["fraction"].as_f64().unwrap()
    };
    assert!(fraction(&["density", "--model", "t3a", "--steps", "100000", "--bins", "50,50"]) >= 0.99);
    assert!(fraction(&["density", "--model", "octagon", "--steps", "200000", "--bins", "10,10,8"]) >= 0.9);
}
