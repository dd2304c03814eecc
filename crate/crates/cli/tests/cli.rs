use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_simplex-ramsey"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, value: &Value) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn staircase() -> Value {
    json!({"dim": 2, "boxes": [
        [["1/8", "1/4"], ["3/8", "7/8"]],
        [["1/8", "1/2"], ["5/8", "7/8"]],
        [["1/8", "3/4"], ["13/16", "7/8"]]
    ]})
}

#[test]
fn pattern_examples() {
    let cases: [(&[&str], &str); 3] = [
        (&["pattern", "chain", "--base", "{{0,1,2}}", "--j", "1", "--k", "2", "--l", "2"], "{{0,3,5},{1,2,4}}"),
        (&["pattern", "grid", "--width", "1"], "{{0,1}}"),
        (&["pattern", "lemma1-extend", "--p", "{{0,1}}", "--k", "1"], "{{0,2},{1,3}}"),
    ];
    for (args, want) in cases {
        let out = run(args);
        assert!(out.status.success());
        assert_eq!(stdout_json(&out)["display"], want);
    }
    let out = run(&["pattern", "oplus", "--p", "{{0,1}}", "--q", "{{0,1}}", "--j1", "0", "--j2", "2", "--i", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["stages"].as_array().unwrap().len(), 2);
}

#[test]
fn parse_errors_are_usage_errors() {
    let out = run(&["pattern", "make", "--p", "{{0,1},{1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at 9"));
    let out = run(&["pattern", "insert", "--p", "{{0,1}}", "--q", "{{0,1}}", "--j", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn rank_reports() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.json", &json!({"dim": 2, "boxes": []}));
    let out = run(&["rank", "--input", &empty, "--cap", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["value"], 0);
    let stairs = write(dir.path(), "stairs.json", &staircase());
    let out = run(&["rank", "--input", &stairs, "--cap", "4", "--oracle"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!((v["value"].clone(), v["capped"].clone(), v["oracle"].clone()), (json!(3), json!(false), json!(3)));
    assert!(v["witness"].is_object());
    let out = run(&["rank", "--input", &dir.path().join("missing.json").to_string_lossy()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn match_and_essential() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(dir.path(), "job.json", &json!({"pattern": "{{0,2},{1,3}}", "set": staircase()}));
    let out = run(&["match", "--input", &job]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["copy"]["points"].as_array().unwrap().len(), 2);
    let out = run(&["essential", "--input", &job, "--depth", "2", "--min-gap", "1/4"]);
    let v = stdout_json(&out);
    assert_eq!(v["regions"].as_array().unwrap().len(), 10);
    assert_eq!(out.status.code(), Some(if v["all_found"] == json!(true) { 0 } else { 3 }));
    let covered = write(
        dir.path(),
        "covered.json",
        &json!({"pattern": "{{0,1}}", "set": {"dim": 2, "boxes": [[["0/1", "1/1"], ["0/1", "1/1"]]]}}),
    );
    let out = run(&["match", "--input", &covered]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout_json(&out)["copy"].is_null());
}

#[test]
fn homeomorphism_constructions() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write(dir.path(), "grid.json", &json!({"x": ["1/10", "3/10"], "y": ["2/10", "4/10"]}));
    let out = run(&["lemma2", "densify", "--input", &grid, "--n", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["images"], json!(["1/5", "3/5", "2/5", "4/5"]));
    let set = write(dir.path(), "set.json", &json!({"set": {"dim": 2, "boxes": []}}));
    let out = run(&["lemma2", "densify", "--input", &set, "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["dense"], true);
    let w = json!({"x0": "1/10", "pairs": [["2/10", "3/10"]], "y_end": "9/10"});
    let thin = write(dir.path(), "thin.json", &json!({"witness": w}));
    let out = run(&["lemma2", "thin", "--input", &thin, "--n", "1"]);
    assert!(out.status.success());
    let bp = &stdout_json(&out)["homeo"]["breakpoints"];
    assert_eq!(bp[1], json!(["1/10", "1/6"]));
    let with_set = write(
        dir.path(),
        "thin_set.json",
        &json!({"witness": w, "set": {"dim": 2, "boxes": [[["1/10", "1/5"], ["3/10", "9/10"]]]}}),
    );
    let out = run(&["lemma2", "thin", "--input", &with_set, "--n", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["violations"], json!([]));
}

#[test]
fn campaign_replay_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        &json!({"instance_count": 4, "pattern_size_max": 4, "depth": 2, "min_gap": "1/4", "seed": 11}),
    );
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (path, jobs) in [(&a, "1"), (&b, "3")] {
        let out = run(&["dichotomy", "--input", &cfg, "--jobs", jobs, "--output", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stderr).contains("copies"));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let report: Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    assert_eq!(report["config"]["seed"], 11);
    assert_eq!(report["instances"].as_array().unwrap().len(), 4);
}

#[test]
fn single_runs_signal_their_branch() {
    let dir = tempfile::tempdir().unwrap();
    let region = json!({"a": "1/4", "b": "3/4", "dim": 2});
    let covered = json!({"dim": 2, "boxes": [[["1/4", "3/4"], ["1/4", "3/4"]]]});
    let job = write(
        dir.path(),
        "run.json",
        &json!({"set": covered, "target": "{{0,3},{1,2}}", "region": region, "threshold": 3}),
    );
    let out = run(&["dichotomy", "--input", &job]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!((v["branch"].clone(), v["verified"].clone()), (json!("witness"), json!(true)));
    let job = write(
        dir.path(),
        "run3.json",
        &json!({"set": {"dim": 3, "boxes": []}, "target": "{{0,2,4},{1,3,5}}", "threshold": 2}),
    );
    let out = run(&["dichotomy", "--input", &job]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["branch"], "copy");
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["all_ok"], true);
}
