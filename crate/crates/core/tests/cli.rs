//! End-to-end runs of the command-line binary against the shipped fixtures:
//! output shapes, determinism, and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tamebar"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.output().expect("binary runs")
}

#[test]
fn decompose_golden_fixture() {
    let out = run(&["decompose", fixture("three_circles_rep.json").to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let codes = v["barcodes"].as_array().unwrap();
    assert_eq!(codes.len(), 3);
    assert_eq!(codes[2]["left"], 6);
    assert_eq!(codes[2]["right"], 8);
    assert_eq!(codes[2]["left_closed"], false);
    assert_eq!(codes[2]["right_closed"], true);
    assert_eq!(v["monodromy"]["jordan_cells"][0]["lambda"], 2);
    assert_eq!(v["monodromy"]["jordan_cells"][0]["size"], 2);
}

#[test]
fn decompose_is_byte_deterministic() {
    let path = fixture("three_circles_rep.json");
    let a = run(&["decompose", path.to_str().unwrap()]);
    let b = run(&["decompose", path.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let path = fixture("three_circles_diagram.json");
    let a = run(&["analyze", path.to_str().unwrap()]);
    let b = run(&["analyze", path.to_str().unwrap()]);
    assert!(a.status.success(), "analyze must exit 0 with all checks passing");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_torus_numbers() {
    let out = run(&["analyze", fixture("torus_diagram.json").to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["novikov"], serde_json::json!([0, 0, 0]));
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn field_override_changes_the_answer() {
    // the Klein diagram over GF(2) has β₁ = 2
    let path = fixture("klein_diagram.json");
    let out = run(&["analyze", path.to_str().unwrap(), "--field", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 2, 1]));
    let out = run(&["analyze", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 1, 0]));
}

#[test]
fn relation_subcommand_matches_decompose() {
    let path = fixture("three_circles_rep.json");
    let out = run(&["relation", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim"], 2);
    assert_eq!(v["jordan_cells"][0]["lambda"], 2);
    assert_eq!(v["jordan_cells"][0]["size"], 2);
}

#[test]
fn interval_subcommand() {
    let path = fixture("three_circles_diagram.json");
    // [θ₂, θ₃] in degree 1: one closed code plus the 2-dimensional Jordan part
    let th2 = format!("{}", 2.0 * std::f64::consts::TAU / 7.0);
    let th3 = format!("{}", 3.0 * std::f64::consts::TAU / 7.0);
    let out = run(&[
        "interval",
        path.to_str().unwrap(),
        "--from",
        &th2,
        "--to",
        &th3,
        "--degree",
        "1",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["slab"], 3);
    assert_eq!(v["into_cover"], 3);
    assert_eq!(v["into_base"], 1);
}

#[test]
fn config_subcommand_reads_a_report() {
    let dir = std::env::temp_dir().join("tamebar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let report_path = dir.join("report.json");
    let out = run(&["analyze", fixture("three_circles_diagram.json").to_str().unwrap()]);
    assert!(out.status.success());
    std::fs::write(&report_path, &out.stdout).unwrap();

    let out = run(&["config", report_path.to_str().unwrap(), "--degree", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 1);
    let poly = v["poly"].as_array().unwrap();
    assert_eq!(poly.len(), 2); // degree-1 monic polynomial

    // out-of-range degree is a validation error
    let out = run(&["config", report_path.to_str().unwrap(), "--degree", "9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn empty_rep_decomposes_cleanly() {
    let out = run(&["decompose", fixture("empty_rep.json").to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["barcodes"].as_array().unwrap().len(), 0);
    assert_eq!(v["monodromy"]["dim"], 0);
}

#[test]
fn malformed_input_exits_one() {
    let dir = std::env::temp_dir().join("tamebar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"not\": \"a rep\"}").unwrap();
    let out = run(&["decompose", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    // a structurally valid file with a non-simplicial map is also rejected
    let text = std::fs::read_to_string(fixture("klein_diagram.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["maps_a"][0]["vertex_map"][1] = serde_json::json!(3);
    let broken = dir.join("broken_diagram.json");
    std::fs::write(&broken, serde_json::to_string(&v).unwrap()).unwrap();
    let out = run(&["analyze", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn text_format_renders() {
    let out = run(&[
        "decompose",
        fixture("three_circles_rep.json").to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(6,8]"));
    assert!(text.contains("jordan cell: (2, 2)"));
}
