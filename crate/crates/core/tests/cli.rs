use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_homotopy-forge"))
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let out = run(&full, None);
    assert_eq!(out.status.code(), Some(0));
    String::from_utf8(out.stdout).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn hexagon_is_not_contractible_at_unit_scale() {
    let hex = gen(&["circle", "--n", "6", "--radius", "1"]);
    let out = run(&["contractible", "--r", "1"], Some(&hex));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "no");
}

#[test]
fn square_has_tc_one_at_scale_two() {
    let sq = gen(&["circle", "--n", "4", "--radius", "1"]);
    let out = run(&["tc", "--r", "2"], Some(&sq));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kind"], "tc_report");
    assert_eq!(v["lower"], 1);
    assert_eq!(v["upper"], 1);
}

#[test]
fn tampered_planner_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "sq.json", &gen(&["circle", "--n", "4", "--radius", "1"]));
    let good = write(dir.path(), "p.json", "");
    let out = run(&["planner", "synth", "--space", &sq, "--r", "2", "--out", &good], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["verify", &good], None).status.code(), Some(0));
    assert_eq!(run(&["planner", "verify", &good], None).status.code(), Some(0));

    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&good).unwrap()).unwrap();
    let paths = doc["paths"].as_object_mut().unwrap();
    let path = paths.get_mut("c0|c1").unwrap().as_array_mut().unwrap();
    let last = path.len() - 1;
    path[last] = Value::String("c2".into());
    let bad = write(dir.path(), "bad.json", &(serde_json::to_string_pretty(&doc).unwrap() + "\n"));
    let out = run(&["verify", &bad], None);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("(c0, c1)"), "{stderr}");
}

#[test]
fn malformed_input_exits_three() {
    let out = run(&["contractible", "--r", "1"], Some("{not json"));
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("error"));
    let sq = gen(&["circle", "--n", "4"]);
    assert_eq!(run(&["pi1", "null", "--r", "2", "--loop", "c0,zz,c0"], Some(&sq)).status.code(), Some(3));
    assert_eq!(run(&["contractible", "--r", "-1"], Some(&sq)).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(3));
}

#[test]
fn non_canonical_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let sq = gen(&["circle", "--n", "4"]);
    let compact: Value = serde_json::from_str(&sq).unwrap();
    let path = write(dir.path(), "compact.json", &serde_json::to_string(&compact).unwrap());
    assert_eq!(run(&["verify", &path], None).status.code(), Some(1));
    let path = write(dir.path(), "pretty.json", &sq);
    assert_eq!(run(&["verify", &path], None).status.code(), Some(0));
}

#[test]
fn reports_replay_through_the_replay_flag() {
    let dir = tempfile::tempdir().unwrap();
    let hex = write(dir.path(), "hex.json", &gen(&["circle", "--n", "6"]));
    let tc = dir.path().join("tc.json");
    let tc = tc.to_str().unwrap();
    assert_eq!(run(&["tc", "--space", &hex, "--r", "1", "--out", tc], None).status.code(), Some(0));
    assert_eq!(run(&["tc", "--replay", tc], None).status.code(), Some(0));
    // a report of the wrong kind is an input error
    assert_eq!(run(&["cat", "--replay", tc], None).status.code(), Some(3));

    let mono = dir.path().join("mono.json");
    let mono = mono.to_str().unwrap();
    let out = run(&["monotonicity", "--space", &hex, "--scales", "0.5,1,2", "--out", mono], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["verify", mono, tc], None).status.code(), Some(0));
}

#[test]
fn loops_and_patches() {
    let sq = gen(&["circle", "--n", "4"]);
    let out = run(&["pi1", "null", "--r", "2", "--loop", "c0,c1,c2,c3,c0"], Some(&sq));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["kind"], "null_homotopy");
    let out = run(&["pi1", "lemma", "--r", "2", "--loop", "c1,c2,c1"], Some(&sq));
    assert_eq!(out.status.code(), Some(0));

    let hex = gen(&["circle", "--n", "6"]);
    let out = run(&["planner", "patch", "--r", "1", "--a", "c0,c1,c2", "--b", "c3,c4"], Some(&hex));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["domain"].as_array().unwrap().len(), 6);
    // the whole hexagon is not 1-categorical
    let out = run(&["planner", "patch", "--r", "1", "--a", "c0,c1,c2,c3,c4,c5", "--b", "c0"], Some(&hex));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn connectivity_and_cat() {
    let sq = gen(&["circle", "--n", "4"]);
    let out = run(&["connectivity", "--r", "1"], Some(&sq));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["components"].as_array().unwrap().len(), 4);
    let hex = gen(&["circle", "--n", "6"]);
    let out = run(&["cat", "--r", "1"], Some(&hex));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["upper"], 2);
}

#[test]
fn generators_emit_spaces() {
    for args in [&["interval", "--m", "3"][..], &["wedge"], &["hawaiian", "--k", "2", "--n", "4"]] {
        let v: Value = serde_json::from_str(&gen(args)).unwrap();
        assert_eq!(v["kind"], "space");
        assert_eq!(v["schema_version"], 1);
    }
}
