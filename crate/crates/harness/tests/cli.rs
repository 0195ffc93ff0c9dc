use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn doho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_doho")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dist_emd_on_half_distance_fixture() {
    let o = doho(&["dist", "emd", &fixture("half_a.dist"), &fixture("half_b.dist")]);
    assert_eq!(o.status.code(), Some(0));
    let d: f64 = stdout(&o).trim().parse().unwrap();
    assert!((d - 0.5).abs() <= 1e-9);
}

#[test]
fn dist_tv_and_inequality_metric_agree() {
    let (a, b) = (fixture("half_a.dist"), fixture("half_b.dist"));
    let tv = doho(&["dist", "tv", &a, &b]);
    let ineq = doho(&["dist", "emd", &a, &b, "--metric", "inequality"]);
    assert_eq!(stdout(&tv).trim(), "1");
    let d: f64 = stdout(&ineq).trim().parse().unwrap();
    assert!((d - 1.0).abs() <= 1e-9);
}

#[test]
fn dist_support_prints_distance_then_centers() {
    let o = doho(&["dist", "support", &fixture("half_a.dist"), "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!((lines[0].parse::<f64>().unwrap() - 0.5).abs() <= 1e-9);
}

#[test]
fn validate_short_weights_fails() {
    let o = doho(&["validate", &fixture("short_weights.dist")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    assert_eq!(doho(&["validate", &fixture("half_a.dist")]).status.code(), Some(0));
}

#[test]
fn missing_files_are_usage_errors() {
    assert_eq!(doho(&["run", "/nonexistent/spec.json"]).status.code(), Some(2));
    assert_eq!(doho(&["validate", "/nonexistent/a.dist"]).status.code(), Some(2));
    assert_eq!(doho(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn gen_writes_a_valid_file() {
    let dir = tempfile::tempdir().unwrap();
    let out: PathBuf = dir.path().join("a.dist");
    let o = doho(&["gen", "far-subset", "n=16", "size=4", "min_distance=0.25", "-o", out.to_str().unwrap(), "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(doho(&["validate", out.to_str().unwrap()]).status.code(), Some(0));
    let again = dir.path().join("b.dist");
    doho(&["gen", "far-subset", "n=16", "size=4", "min_distance=0.25", "-o", again.to_str().unwrap(), "--seed", "3"]);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
    assert_eq!(doho(&["gen", "no-such-generator", "-o", out.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn run_outputs_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"name": "support", "tester": {"id": "doho-support", "m": 4, "eps": 0.3},
            "instance": {"generator": "far-subset", "n": 64, "size": 4, "min_distance": 0.2},
            "trials": 20, "seed": 5}"#,
    )
    .unwrap();
    let spec = spec.to_str().unwrap();
    let csv = doho(&["run", spec, "--trials", "7", "--format", "csv"]);
    assert_eq!(csv.status.code(), Some(0), "{}", String::from_utf8_lossy(&csv.stderr));
    let text = stdout(&csv);
    assert_eq!(text.lines().next(), Some("trial,seed,verdict,samples,queries"));
    assert_eq!(text.lines().count(), 8);
    assert_eq!(text, stdout(&doho(&["run", spec, "--trials", "7", "--format", "csv"])));
    let json = doho(&["run", spec, "--format", "json", "--seed", "9"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["trials"].as_array().unwrap().len(), 20);
    assert_eq!(v["spec"]["seed"], 9);
    assert_eq!(v["aggregates"]["accept"]["hits"], 20);
}

#[test]
fn run_with_unknown_tester_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(&spec, r#"{"name": "x", "tester": {"id": "nope"}, "instance": {"generator": "point-mass", "n": 4}, "trials": 1, "seed": 0}"#)
        .unwrap();
    assert_eq!(doho(&["run", spec.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn calibrate_rejects_a_suite_for_another_tester() {
    let suite = Path::new(env!("CARGO_MANIFEST_DIR")).join("calibration/suites/doho-support.json");
    let o = doho(&["calibrate", "cyclic-shift", suite.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn constants_match_the_calibration_file() {
    let o = doho(&["constants"]);
    let printed: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(doho_harness::CALIBRATION_FILE).unwrap()).unwrap();
    assert_eq!(printed, file["testers"]);
}

#[test]
fn example_specs_run() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("specs");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let o = doho(&["run", path.to_str().unwrap(), "--trials", "2"]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", path.display(), String::from_utf8_lossy(&o.stderr));
    }
}
