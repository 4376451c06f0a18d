use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sepfilt(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepfilt")).current_dir(dir).args(args).output().unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let out = sepfilt(dir.path(), &["gen", "circle", "--nodes", "8", "--length", "4", "--out", "c.json"]);
    assert!(out.status.success());
    let c = sepfilt::complex::WeightedComplex::from_json(&fs::read_to_string(dir.path().join("c.json")).unwrap()).unwrap();
    assert_eq!(c.simplices().len(), 8);
    assert!((c.total_area() - 4.0).abs() < 1e-12);

    let out = sepfilt(dir.path(), &["gen", "torus", "--side", "4"]);
    assert!(out.status.success());
    let t = sepfilt::complex::WeightedComplex::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(t.simplices().len(), 32);
    assert!((t.total_area() - 16.0).abs() < 1e-9);

    let out = sepfilt(dir.path(), &["gen", "genus-g-surface", "--genus", "2", "--out", "g.json"]);
    assert!(out.status.success());
}

#[test]
fn bad_side_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = sepfilt(dir.path(), &["gen", "torus", "--side", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad parameters"));
}

#[test]
fn missing_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = sepfilt(dir.path(), &["run", "nowhere.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nowhere.json"));
}

fn circle_run(dir: &Path, out_dir: &str) -> Output {
    if !dir.join("c.json").exists() {
        assert!(sepfilt(dir, &["gen", "circle", "--nodes", "8", "--length", "4", "--out", "c.json"]).status.success());
    }
    sepfilt(dir, &["run", "c.json", "--radius", "1", "--seed", "3", "--samples", "50", "--out-dir", out_dir])
}

#[test]
fn circle_run_reports_four_rainbow_simplices() {
    let dir = tempfile::tempdir().unwrap();
    let out = circle_run(dir.path(), "out");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&dir.path().join("out/report.json"));
    assert_eq!(report["bounds"]["rainbow_bound"], 4.0);
    assert_eq!(report["verification"]["passed"], true);
    let census = json(&dir.path().join("out/census.json"));
    assert_eq!(census["rainbow_total"], 4);
    let manifest = json(&dir.path().join("out/manifest.json"));
    assert_eq!(manifest["config"]["seed"], 3);
    for entry in manifest["outputs"].as_array().unwrap() {
        let name = entry[0].as_str().unwrap();
        assert!(dir.path().join("out").join(name).exists());
        assert_eq!(entry[1].as_str().unwrap().len(), 64);
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    assert!(circle_run(dir.path(), "a").status.success());
    assert!(circle_run(dir.path(), "b").status.success());
    for name in ["filtration.json", "census.json", "report.json", "lemma5.csv", "manifest.json"] {
        let a = fs::read(dir.path().join("a").join(name)).unwrap();
        let b = fs::read(dir.path().join("b").join(name)).unwrap();
        assert_eq!(a, b, "{name} differs");
    }
}

#[test]
fn verify_writes_header_only_csv_for_no_samples() {
    let dir = tempfile::tempdir().unwrap();
    assert!(circle_run(dir.path(), "out").status.success());
    let out = sepfilt(dir.path(), &["verify", "out/filtration.json", "--samples", "0", "--out-dir", "v"]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("v/sweep.csv")).unwrap();
    assert_eq!(csv, "p,r1,r2,lhs,rhs,residual,tolerance,violation\n");

    let out = sepfilt(dir.path(), &["verify", "out/filtration.json", "--samples", "40", "--out-dir", "v"]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("v/sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 41);
    assert!(String::from_utf8_lossy(&out.stdout).contains("min_residual"));
}

#[test]
fn tampered_filtration_is_a_verification_failure() {
    let dir = tempfile::tempdir().unwrap();
    assert!(circle_run(dir.path(), "out").status.success());
    let mut doc = json(&dir.path().join("out/filtration.json"));
    let cut = doc["levels"][0]["cut_edges"].as_array_mut().unwrap();
    assert_eq!(cut.len(), 2);
    cut.pop();
    fs::write(dir.path().join("bad.json"), serde_json::to_string(&doc).unwrap()).unwrap();
    let out = sepfilt(dir.path(), &["verify", "bad.json", "--samples", "5", "--out-dir", "v"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("separation violated"));
}

#[test]
fn thread_cap_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    assert!(circle_run(dir.path(), "a").status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_sepfilt"))
        .current_dir(dir.path())
        .env("SEPFILT_THREADS", "1")
        .args(["run", "c.json", "--radius", "1", "--seed", "3", "--samples", "50", "--out-dir", "b"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read(dir.path().join("a/report.json")).unwrap(), fs::read(dir.path().join("b/report.json")).unwrap());
    let bad = Command::new(env!("CARGO_BIN_EXE_sepfilt"))
        .current_dir(dir.path())
        .env("SEPFILT_THREADS", "many")
        .args(["gen", "torus", "--side", "3"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
