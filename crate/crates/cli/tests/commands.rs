use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn apercut(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apercut"))
        .current_dir(dir)
        .args(args)
        .env_remove("APERCUT_BUDGET")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn generate_heisenberg_defaults_and_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let o = apercut(dir.path(), &["generate", "--out", "a.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("boundary clear true"));
    let v = read_json(&dir.path().join("a.json"));
    assert_eq!(v["format"], 1);
    assert_eq!(v["scheme"]["kind"], "heisenberg");
    assert_eq!(v["count"].as_u64().unwrap() as usize, v["points"].as_array().unwrap().len());
    assert!(v["count"].as_u64().unwrap() > 1000);
    apercut(dir.path(), &["generate", "--out", "b.json"]);
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn invalid_windows() {
    let dir = tempfile::tempdir().unwrap();
    let o = apercut(dir.path(), &["generate", "--kind", "euclidean", "--window=1/2,1/2", "--out", "x.json"]);
    assert_eq!(code(&o), 2);
    let o = apercut(dir.path(), &["generate", "--kind", "euclidean", "--window=2,1", "--out", "x.json"]);
    assert_eq!(code(&o), 2);
    let o = apercut(dir.path(), &["generate", "--kind", "euclidean", "--d", "4", "--out", "x.json"]);
    assert_eq!(code(&o), 2);
    let o = apercut(dir.path(), &["generate", "--bogus"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn irregular_window_needs_override() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["generate", "--kind", "euclidean", "--window=-1,1", "--out", "w.json"];
    let o = apercut(dir.path(), &args);
    assert_eq!(code(&o), 3);
    assert!(!dir.path().join("w.json").exists());
    let mut with = args.to_vec();
    with.push("--allow-irregular");
    assert_eq!(code(&apercut(dir.path(), &with)), 0);
    let o = apercut(dir.path(), &["check-window", "--kind", "euclidean", "--window=-1,1"]);
    assert_eq!(code(&o), 3);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["boundary_witnesses"].as_array().unwrap().len(), 2);
}

#[test]
fn analyze_one_dimensional_demo() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&apercut(dir.path(), &["generate", "--kind", "euclidean", "--out", "e.json"])), 0);
    let o = apercut(
        dir.path(),
        &["analyze", "--input", "e.json", "--K", "1,2,3", "--dg", "1", "--out", "r.json", "--csv", "k.csv"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&dir.path().join("r.json"));
    let rows = v["report"]["complexity"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(v["checklist"]["aperiodicity_evidence"], "EVIDENCE_ONLY");
    assert_eq!(v["checklist"]["flc_evidence"], "EVIDENCE_ONLY");
    assert_eq!(v["checklist"]["supported"], true);
    let csv = std::fs::read_to_string(dir.path().join("k.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn analyze_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&apercut(dir.path(), &["analyze", "--input", "missing.json"])), 2);
    apercut(dir.path(), &["generate", "--kind", "euclidean", "--out", "e.json"]);
    let o = apercut(dir.path(), &["analyze", "--input", "e.json", "--erosion", "500"]);
    assert_eq!(code(&o), 4);
    let text = std::fs::read_to_string(dir.path().join("e.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["content_hash"] = Value::String("f".repeat(64));
    std::fs::write(dir.path().join("bad.json"), v.to_string()).unwrap();
    assert_eq!(code(&apercut(dir.path(), &["analyze", "--input", "bad.json"])), 5);
}

#[test]
fn bounds_growth_cover() {
    let dir = tempfile::tempdir().unwrap();
    let o = apercut(dir.path(), &["bounds", "--dg", "1", "--dimx", "1"]);
    assert_eq!(stdout(&o).trim(), "43");
    let o = apercut(dir.path(), &["bounds", "--dg", "4", "--group", "h1z"]);
    assert_eq!(stdout(&o).trim(), "234255");

    let o = apercut(dir.path(), &["growth", "--group", "h1z", "--kmax", "0"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<String> = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(String::from).collect();
    assert_eq!(rows, vec!["k,count", "0,1"]);

    let o = apercut(dir.path(), &["cover", "--group", "z1", "--a", "10", "--n", "3"]);
    assert_eq!(code(&o), 0);
    let json_start = stdout(&o).find('{').unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)[json_start..]).unwrap();
    let rep = &v["reports"][0];
    assert_eq!(rep["covered"], true);
    assert!(rep["packing_size"].as_u64().unwrap() <= 11);
}

#[test]
fn budget_guard_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_apercut"))
        .current_dir(dir.path())
        .args(["growth", "--group", "h1z", "--kmax", "20"])
        .env("APERCUT_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(code(&o), 6);
    let o = apercut(dir.path(), &["--budget", "10", "cover", "--group", "z2", "--a", "3", "--n", "2"]);
    assert_eq!(code(&o), 6);
}
