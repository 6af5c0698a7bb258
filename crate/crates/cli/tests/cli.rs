use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gsemi_core::action::k33_action;
use gsemi_core::corpus::nine_cycle_action;
use gsemi_core::poset::doubled_triangle;
use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn gsemi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsemi")).args(args).output().expect("run gsemi")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn write(dir: &TempDir, name: &str, value: &impl serde::Serialize) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path.display().to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn delta_of_five_torsion() {
    let out = gsemi(&["delta", fixture("five_torsion.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["delta"], 5);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["delta"] == 5));
    assert_eq!(rows[0]["basis"], serde_json::json!([1, 2, 3]));
}

#[test]
fn tutte_of_empty_arrangement() {
    let out = gsemi(&["tutte", fixture("empty.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["tutte"]["pretty"], "1");
}

#[test]
fn cm_check_on_emitted_layers() {
    let dir = TempDir::new().unwrap();
    let layers = dir.path().join("five_torsion_layers.json");
    let out = gsemi(&["layers", fixture("five_torsion.json").to_str().unwrap(), "--output", layers.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let bad = gsemi(&["cm-check", "--chars", "5", layers.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    let report = &json_of(&bad)["reports"][0];
    assert_eq!(report["cm"], false);
    assert!(report["witness"].is_array());
    let good = gsemi(&["cm-check", "--chars", "0,2,3", layers.to_str().unwrap()]);
    assert_eq!(good.status.code(), Some(0));
}

#[test]
fn cm_check_defaults_to_primes_of_delta() {
    let out = gsemi(&["cm-check", fixture("five_torsion.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let chars: Vec<u64> =
        json_of(&out)["reports"].as_array().unwrap().iter().map(|r| r["characteristic"].as_u64().unwrap()).collect();
    assert_eq!(chars, vec![0, 5]);
}

#[test]
fn homology_of_five_torsion() {
    let out = gsemi(&["homology", fixture("five_torsion.json").to_str().unwrap()]);
    let groups = json_of(&out)["groups"].clone();
    assert_eq!(groups[2]["degree"], 1);
    assert_eq!(groups[2]["torsion"], serde_json::json!([5]));
    assert_eq!(groups[1]["rank"], 0);
}

#[test]
fn emitted_poset_reproduces_invariants() {
    let dir = TempDir::new().unwrap();
    let five_torsion = fixture("five_torsion.json");
    let layers = dir.path().join("layers.json");
    gsemi(&["layers", five_torsion.to_str().unwrap(), "--output", layers.to_str().unwrap()]);
    let from_poset = json_of(&gsemi(&["polys", layers.to_str().unwrap()]));
    let from_spec = json_of(&gsemi(&["polys", five_torsion.to_str().unwrap()]));
    assert_eq!(from_poset["chi"], from_spec["chi_layers"]);
    let again = dir.path().join("again.json");
    let poset_only = write(&dir, "poset.json", &json_of(&gsemi(&["layers", five_torsion.to_str().unwrap()]))["poset"]);
    gsemi(&["polys", &poset_only, "--output", again.to_str().unwrap()]);
    let reread: Value = serde_json::from_str(&std::fs::read_to_string(again).unwrap()).unwrap();
    assert_eq!(reread, from_poset);
}

#[test]
fn output_is_deterministic() {
    let a = gsemi(&["layers", fixture("five_torsion.json").to_str().unwrap()]);
    let b = gsemi(&["layers", fixture("five_torsion.json").to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let c = gsemi(&["corpus", "--seed", "7", "--count", "3"]);
    let d = gsemi(&["corpus", "--seed", "7", "--count", "3"]);
    assert_eq!(c.stdout, d.stdout);
    assert_eq!(json_of(&c)["items"].as_array().unwrap().len(), 3);
}

#[test]
fn input_errors_exit_two_with_distinct_messages() {
    let dir = TempDir::new().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{not json").unwrap();
    let out = gsemi(&["tutte", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("malformed JSON"));

    let wrong = write(&dir, "wrong.json", &serde_json::json!({"d": "three", "p": 1, "matrix": []}));
    let out = gsemi(&["tutte", &wrong]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("schema violation"));

    let line = write(&dir, "line.json", &serde_json::json!({"d": 2, "p": 1, "matrix": [[1], [0]]}));
    assert_eq!(gsemi(&["tutte", &line]).status.code(), Some(0));
    let out = gsemi(&["tutte", "--essential-required", &line]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not essential"));

    let fig = write(&dir, "doubled_triangle.json", &doubled_triangle().to_json());
    let out = gsemi(&["face-ring", "--degree", "13", &fig]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("guardrail"));

    let out = gsemi(&["cm-check", "--chars", "4", fixture("five_torsion.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("neither 0 nor prime"));

    let out = gsemi(&["tutte", "/nonexistent/input.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn face_ring_of_doubled_triangle() {
    let dir = TempDir::new().unwrap();
    let fig = write(&dir, "doubled_triangle.json", &doubled_triangle().to_json());
    let out = gsemi(&["face-ring", &fig]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["hilbert"], serde_json::json!([1, 3, 7, 13, 21]));
    assert_eq!(v["hilbert"], v["hilbert_from_f"]);
}

#[test]
fn actions_through_the_cli() {
    let dir = TempDir::new().unwrap();
    let k33 = write(&dir, "k33.json", &k33_action().to_json());
    let out = gsemi(&["shelling", &k33]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json_of(&out);
    assert_eq!(v["verification"]["shelling"], true);
    assert_eq!(v["order"].as_array().unwrap().len(), 9);

    let cycle = write(&dir, "cycle.json", &nine_cycle_action().to_json());
    let out = gsemi(&["quotient", &cycle]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json_of(&out)["check"]["holds"], true);
    let out = gsemi(&["invariants-check", "--degree", "3", &cycle]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json_of(&out)["holds"], true);
}
