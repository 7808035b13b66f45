use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ohsawa_cli::{analyze_spec, AnalyzeOptions};
use ohsawa_core::newton_body::spec::BodySpec;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn ohsawa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ohsawa")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn halfplane_report() {
    let out = ohsawa(&["analyze", fixture("halfplane.json").to_str().unwrap(), "--shell", "--samples", "100000"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["schemaVersion"], 1);
    assert_eq!(r["lct"]["c0"]["exact"], "1");
    assert_eq!(r["lcPlaces"]["class"], "unique");
    assert_eq!(r["lcPlaces"]["places"][0]["exact"], serde_json::json!(["1/2", "1/2"]));
    assert_eq!(r["verdict"]["outcome"]["kind"], "non_singular");
    assert_eq!(r["shellTrend"]["classification"], "bounded");
    assert!((r["shellTrend"]["limitEstimate"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!(r.get("checks").is_none());
}

#[test]
fn hyperbolic_report_is_singular_with_a_unique_place() {
    let out = ohsawa(&["analyze", fixture("hyperbolic.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["lct"]["c0"]["exact"], "1");
    assert_eq!(r["lcPlaces"]["class"], "unique");
    assert_eq!(r["verdict"]["outcome"], serde_json::json!({"kind": "singular", "reason": "L_infinite"}));
}

#[test]
fn missing_file_exits_2_without_output() {
    let out = ohsawa(&["analyze", "/nonexistent/body.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_specs_exit_2_with_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("{\n  \"dimension\": 2,\n  \"kind\": \"polyhedral\",\n  \"generators\": [[2, 0], [0, 2]\n}", "line"),
        (r#"{"dimension": 2, "kind": "polyhedral", "generators": [[2, 0], [0, -2]]}"#, "generators[1][1]"),
        (r#"{"dimension": 2, "kind": "polyhedral", "generators": [[2, 0]], "colour": 1}"#, "colour"),
        (r#"{"dimension": 2, "kind": "polyhedral", "generators": [[2, 1]]}"#, "unbounded"),
    ];
    for (i, (text, needle)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("bad{i}.json"));
        fs::write(&path, text).unwrap();
        let out = ohsawa(&["analyze", path.to_str().unwrap()]);
        let err = String::from_utf8_lossy(&out.stderr);
        assert_eq!(out.status.code(), Some(2), "case {i}: {err}");
        assert!(out.stdout.is_empty());
        assert!(err.contains(needle), "case {i}: {err}");
    }
}

#[test]
fn bad_t_grid_exits_2() {
    let f = fixture("halfplane.json");
    for grid in ["-5,-10,-20", "-5,-10,-20,-40,-70", "-0.5,-1,-2,-4,-8", "a,b"] {
        let out = ohsawa(&["analyze", f.to_str().unwrap(), "--shell", "--t-grid", grid]);
        assert_eq!(out.status.code(), Some(2), "{grid}");
    }
}

#[test]
fn csv_bundle_layout() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixture("corner.json");
    let out = ohsawa(&[
        "analyze", f.to_str().unwrap(), "--shell", "--samples", "50000", "--out", dir.path().to_str().unwrap(),
        "--format", "csv-bundle",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let slices = fs::read_to_string(dir.path().join("slices.csv")).unwrap();
    let shell = fs::read_to_string(dir.path().join("shell.csv")).unwrap();
    assert!(slices.starts_with("b,g_b,exact_flag,stderr\n"));
    assert!(shell.starts_with("t,value,stderr,samples,seed,mode\n"));
    assert_eq!(shell.lines().filter(|l| l.ends_with(",exact")).count(), 5);
    assert_eq!(shell.lines().filter(|l| l.ends_with(",mc")).count(), 5);
    let r: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(r["verdict"]["outcome"]["reason"], "g0_positive");
}

#[test]
fn csv_bundle_needs_an_output_directory() {
    let out = ohsawa(&["analyze", fixture("halfplane.json").to_str().unwrap(), "--format", "csv-bundle"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn echoed_spec_round_trips() {
    for name in ["halfplane.json", "hyperbolic.json", "corner.json", "simplex3.json"] {
        let spec = BodySpec::from_json(&fs::read_to_string(fixture(name)).unwrap()).unwrap();
        let report = analyze_spec(&spec, &AnalyzeOptions::default()).unwrap();
        let again = BodySpec::from_json(&report.body.spec.to_string()).unwrap();
        assert_eq!(spec, again, "{name}");
    }
}

#[test]
fn float_inputs_are_flagged() {
    let spec = BodySpec::from_json(r#"{"dimension": 2, "kind": "polyhedral", "generators": [[2.5, 0], [0, 2]]}"#).unwrap();
    let r = analyze_spec(&spec, &AnalyzeOptions::default()).unwrap();
    assert_eq!(r.body.inexact_fields, vec!["generators[0][0]".to_string()]);
}

#[test]
fn threshold_gates_reach_the_report() {
    let below = BodySpec::from_json(r#"{"dimension": 2, "kind": "polyhedral", "generators": [[3, 0], [0, 3], [2, 1]]}"#).unwrap();
    let opts = AnalyzeOptions { shell: true, samples: 50_000, ..AnalyzeOptions::default() };
    let r = analyze_spec(&below, &opts).unwrap();
    assert_eq!(serde_json::to_value(&r.verdict.outcome).unwrap()["reason"], "lct_below_one");
    assert_eq!(serde_json::to_value(r.shell_trend.as_ref().unwrap()).unwrap()["growthLaw"], "exponential");
    let above = BodySpec::from_json(r#"{"dimension": 2, "kind": "polyhedral", "generators": [[1, 0], [0, 1]]}"#).unwrap();
    let r = analyze_spec(&above, &opts).unwrap();
    assert_eq!(serde_json::to_value(&r.verdict.outcome).unwrap()["kind"], "integrable_locus");
}
