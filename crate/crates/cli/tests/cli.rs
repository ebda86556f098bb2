use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use klab_core::orbits::OrbitRecord;
use klab_core::packing::CirclePacking;
use klab_core::recurrence::GapSet;
use serde_json::Value;

fn klab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klab")).args(args).output().expect("klab runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_kind(out: &Output) -> String {
    assert!(!out.status.success());
    let report: Value = serde_json::from_slice(&out.stderr).expect("stderr is a JSON error report");
    report["error"]["kind"].as_str().expect("error kind").to_string()
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generated_packing_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("packing.json");
    let svg = dir.path().join("packing.svg");
    let out = klab(&["gen-packing", "--fixture", "apollonian", "--depth", "3", "--out", path_arg(&json), "--svg", path_arg(&svg)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&json).unwrap();
    let packing: CirclePacking = serde_json::from_str(&text).unwrap();
    packing.validate().unwrap();
    assert_eq!(packing.depth(), 3);
    assert_eq!(serde_json::to_string_pretty(&packing).unwrap(), text);
    let drawing = fs::read_to_string(&svg).unwrap();
    assert_eq!(drawing.matches("<circle").count(), packing.disks.len() + 4);
    assert_eq!(drawing.matches("stroke-dasharray").count(), 4);
}

#[test]
fn dual_circle_is_not_thick_at_two() {
    let v = stdout_json(&klab(&["thickness", "--fixture", "dual-circle", "--K", "2"]));
    let verdict = &v["verdicts"][0];
    assert_eq!(verdict["verdict"], "not-thick");
    let witness = verdict["witness"].as_f64().unwrap();
    let set: GapSet = serde_json::from_value(v["return_times"].clone()).unwrap();
    set.validate().unwrap();
    assert!(set.window_misses(witness, 2.0));
    assert!(v["max_thickness"].is_null());
}

#[test]
fn angles_csv_has_a_decreasing_tail() {
    let out = klab(&["angles-demo", "--n-max", "1000"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,theta,chord,d"));
    let d: Vec<f64> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(d.len(), 991);
    let tail = &d[d.len() - 100..];
    assert!(tail.windows(2).all(|w| w[1] < w[0]));
    assert!(d[d.len() - 1] < d[0] / 10.0);
}

#[test]
fn malformed_json_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"disks\": [").unwrap();
    assert_eq!(error_kind(&klab(&["render", "--input", path_arg(&bad)])), "malformed-json");
    assert_eq!(error_kind(&klab(&["thickness", "--packing", path_arg(&bad)])), "malformed-json");
    fs::write(&bad, "{\"depht\": 3}").unwrap();
    assert_eq!(error_kind(&klab(&["selftest", "--config", path_arg(&bad)])), "malformed-json");
}

#[test]
fn invariant_violations_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    // Two overlapping seed disks.
    let overlapping = r#"{"seed": [{"A": 1, "B": [0, 0], "C": -1}, {"A": 1, "B": [-0.5, 0], "C": -0.75}],
        "generators": [], "depth": 1, "min_radius": 0.01, "duals": []}"#;
    fs::write(&spec, overlapping).unwrap();
    assert_eq!(error_kind(&klab(&["gen-packing", "--spec", path_arg(&spec)])), "invariant-violation");
    assert_eq!(error_kind(&klab(&["thickness", "--K", "0.5"])), "config");
    assert_eq!(error_kind(&klab(&["bk-scan", "--k", "2"])), "domain");
}

#[test]
fn orbit_report_renders() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("orbit.json");
    let svg = dir.path().join("orbit.svg");
    let out = klab(&["orbit", "--fixture", "dual-circle", "--word-length", "3", "--depth", "3", "--out", path_arg(&report)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let orbit: OrbitRecord = serde_json::from_value(v["orbit"].clone()).unwrap();
    orbit.validate().unwrap();
    assert!(v["discreteness"]["min_gap"].as_f64().unwrap() > 0.0);
    assert!(klab(&["render", "--input", path_arg(&report), "--svg", path_arg(&svg)]).status.success());
    let drawing = fs::read_to_string(&svg).unwrap();
    assert!(drawing.matches("stroke-dasharray").count() >= orbit.entries.len());
}

#[test]
fn bk_scan_accepts_the_dual_circle() {
    let v = stdout_json(&klab(&["bk-scan", "--fixture", "dual-circle", "--samples", "50"]));
    let e = &v["entries"][0];
    assert_eq!(e["member"], true);
    assert_eq!(e["violations"], 0);
}

#[test]
fn selftest_passes_with_capped_threads() {
    let out = Command::new(env!("CARGO_BIN_EXE_klab")).arg("selftest").env("KLAB_THREADS", "2").output().unwrap();
    let v = stdout_json(&out);
    assert!(v["suites"].as_array().unwrap().iter().all(|s| s["passed"] == true));
    let bad = Command::new(env!("CARGO_BIN_EXE_klab")).arg("selftest").env("KLAB_THREADS", "zero").output().unwrap();
    assert_eq!(error_kind(&bad), "config");
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, r#"{"fixture": "dual-circle", "K": [2, 3], "depth": 4}"#).unwrap();
    let v = stdout_json(&klab(&["thickness", "--config", path_arg(&config)]));
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 2);
    let v = stdout_json(&klab(&["thickness", "--config", path_arg(&config), "--K", "5"]));
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 1);
    assert_eq!(v["verdicts"][0]["k"], 5.0);
}
