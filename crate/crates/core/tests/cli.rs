use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const CARAVAN_G1: &str = r#"{"genus": 1, "basis": ["2", "2"], "arcs": [
    {"id": 1, "left": "0", "right": "2", "lattice": [1, 0]},
    {"id": 2, "left": "1", "right": "3", "lattice": [0, 1]}]}"#;

const CARAVAN_G2: &str = r#"{"genus": 2, "basis": ["2", "3", "5", "7"], "arcs": [
    {"id": 1, "left": "0", "right": "2", "lattice": [1, 0, 0, 0]},
    {"id": 2, "left": "1", "right": "4", "lattice": [0, 1, 0, 0]},
    {"id": 3, "left": "5", "right": "10", "lattice": [0, 0, 1, 0]},
    {"id": 4, "left": "6", "right": "13", "lattice": [0, 0, 0, 1]}]}"#;

// the second and third arcs of CARAVAN_G2 swapped: same lattice, other form
const SWAPPED_G2: &str = r#"{"genus": 2, "basis": ["2", "3", "5", "7"], "arcs": [
    {"id": 1, "left": "0", "right": "2", "lattice": [1, 0, 0, 0]},
    {"id": 2, "left": "1", "right": "6", "lattice": [0, 0, 1, 0]},
    {"id": 3, "left": "7", "right": "10", "lattice": [0, 1, 0, 0]},
    {"id": 4, "left": "8", "right": "15", "lattice": [0, 0, 0, 1]}]}"#;

fn isoperiod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoperiod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn check_genus_one_caravan() {
    let dir = tempfile::tempdir().unwrap();
    let d = file(&dir, "c.json", CARAVAN_G1);
    let v = stdout_json(&isoperiod(&["check", s(&d)]));
    assert_eq!(v["summary"], "admissible: true, det parity: odd");
    assert_eq!(v["determinant"], "1");
}

#[test]
fn matrix_is_block_form() {
    let dir = tempfile::tempdir().unwrap();
    let d = file(&dir, "c.json", CARAVAN_G2);
    let v = stdout_json(&isoperiod(&["matrix", s(&d)]));
    let want: Value = serde_json::from_str("[[0,1,0,0],[-1,0,0,0],[0,0,0,1],[0,0,-1,0]]").unwrap();
    assert_eq!(v["matrix"], want);
}

#[test]
fn decompose_identity() {
    let dir = tempfile::tempdir().unwrap();
    let m = file(&dir, "m.json", "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]");
    let out = isoperiod(&["decompose", s(&m)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["word"], "");
    assert_eq!(v["genus"], 2);
}

#[test]
fn connect_refuses_other_polarization() {
    let dir = tempfile::tempdir().unwrap();
    let a = file(&dir, "a.json", CARAVAN_G2);
    let b = file(&dir, "b.json", SWAPPED_G2);
    let out = isoperiod(&["connect", s(&a), s(&b)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert_eq!(stderr_json(&out)["error"], "NotSamePolarization");
}

#[test]
fn connect_to_itself_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let a = file(&dir, "a.json", CARAVAN_G2);
    let v = stdout_json(&isoperiod(&["connect", s(&a), s(&a)]));
    assert_eq!(v["moves"], 0);
    assert_eq!(v["word"], "");
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = file(&dir, "bad.json", r#"{"genus": 1, "basis": ["2"], "arcs": []"#);
    let out = isoperiod(&["check", s(&d)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "Parse");
    let out = isoperiod(&["check", s(&dir.path().join("missing.json"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reduce_script_replays_with_apply() {
    let dir = tempfile::tempdir().unwrap();
    let g = isoperiod(&["generate", "--seed", "4", "--genus", "2", "--steps", "6"]);
    let d = file(&dir, "d.json", &stdout_json(&g).to_string());
    let r = stdout_json(&isoperiod(&["reduce", s(&d)]));
    let script = file(&dir, "s.txt", r["script"].as_str().unwrap());
    let a = stdout_json(&isoperiod(&["apply", s(&d), s(&script)]));
    assert_eq!(a["diagram"], r["caravan"]);
    assert_eq!(a["matrix"], r["product"]);
    let c = file(&dir, "c.json", &r["caravan"].to_string());
    let v = stdout_json(&isoperiod(&["check", s(&c)]));
    assert_eq!(v["admissible"], true);
}

#[test]
fn output_is_deterministic() {
    let run = || isoperiod(&["generate", "--seed", "11", "--genus", "3", "--steps", "8"]).stdout;
    let first = run();
    assert!(!first.is_empty());
    assert_eq!(first, run());
    let dir = tempfile::tempdir().unwrap();
    let d = file(&dir, "d.json", std::str::from_utf8(&first).unwrap());
    let reduce = || isoperiod(&["reduce", s(&d)]).stdout;
    assert_eq!(reduce(), reduce());
}

#[test]
fn render_writes_pictures() {
    let dir = tempfile::tempdir().unwrap();
    let d = file(&dir, "c.json", CARAVAN_G2);
    let txt = dir.path().join("c.txt");
    let svg = dir.path().join("c.svg");
    stdout_json(&isoperiod(&["render", s(&d), "-o", s(&txt)]));
    stdout_json(&isoperiod(&["render", s(&d), "--format", "svg", "-o", s(&svg)]));
    assert_eq!(fs::read_to_string(&txt).unwrap().lines().filter(|l| l.contains('(')).count(), 4);
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}
