//! End-to-end runs of the binary against checked-in reports.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the files after an intended change.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_treespace"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn check_golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let got = String::from_utf8(out.stdout).unwrap();
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(got == want, "{name} differs from {args:?} output:\n{got}");
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn enumerate_reports() {
    check_golden("enumerate_n5.json", &["enumerate", "--n", "5"]);
    check_golden("enumerate_n4_nerve.json", &["enumerate", "--n", "4", "--space", "partition-nerve"]);
    check_golden("enumerate_n2.json", &["enumerate", "--n", "2"]);
    check_golden("enumerate_n4_list.txt", &["enumerate", "--n", "4", "--list", "--format", "text"]);
    let v = json(&["enumerate", "--n", "5"]);
    assert_eq!(v["top_simplices"], 105);
    let v = json(&["enumerate", "--n", "4", "--space", "partition-nerve"]);
    assert_eq!(v["f_vector"], serde_json::json!([13, 18]));
    let v = json(&["enumerate", "--n", "2"]);
    assert_eq!(v["empty"], true);
    assert!(v["notice"].as_str().unwrap().contains("empty"));
}

#[test]
fn character_reports() {
    check_golden("character_lie_3.json", &["character", "--module", "lie", "--n", "3"]);
    check_golden("character_hatlie_3.json", &["character", "--module", "hatlie", "--n", "3"]);
    check_golden("character_superlie_4.json", &["character", "--module", "superlie", "--n", "4"]);
    let v = json(&["character", "--module", "lie", "--n", "3"]);
    assert_eq!(v["values"], serde_json::json!({"1+1+1": 2, "2+1": 0, "3": -1}));
    let v = json(&["character", "--module", "hatlie", "--n", "3"]);
    assert_eq!(v["group"], "S4");
    assert_eq!(v["dimension"], 2);
}

#[test]
fn homology_reports() {
    check_golden("homology_n4.json", &["homology", "--n", "4"]);
    check_golden("homology_n4_nerve.json", &["homology", "--n", "4", "--space", "partition-nerve"]);
}

#[test]
fn whitehouse_report() {
    check_golden("whitehouse_n3.json", &["whitehouse", "--n", "3"]);
    let v = json(&["whitehouse", "--n", "3"]);
    assert_eq!(v["exactness"]["ranks"], serde_json::json!([6, 8, 2]));
    assert_eq!(v["exactness"]["exact"], true);
}

#[test]
fn cycle_export() {
    check_golden("cycle_n5.json", &["cycle", "--n", "5"]);
    let v = json(&["cycle", "--n", "5"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 105);
    assert_eq!(v["boundary_zero"], true);
    let census: Vec<(String, String, u64)> = v["census"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["sign"].as_str().unwrap().into(), c["shape"].as_str().unwrap().into(), c["count"].as_u64().unwrap()))
        .collect();
    assert!(census.contains(&("+".into(), "[*,[*,[*,[*,*]]]]".into(), 60)));
    assert!(census.contains(&("-".into(), "[[*,*],[*,[*,*]]]".into(), 30)));
    assert!(census.contains(&("-".into(), "[*,[[*,*],[*,*]]]".into(), 15)));
}

#[test]
fn verify_reports() {
    check_golden("verify_n4_quick.json", &["verify", "--n", "4", "--depth", "quick", "--no-timings"]);
    check_golden("verify_n5_full.json", &["verify", "--n", "5", "--depth", "full", "--no-timings"]);
    let v = json(&["verify", "--n", "5", "--depth", "full"]);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true && c["elapsed_ms"].is_u64()));
    assert!(checks.iter().any(|c| c["name"] == "∂F₅ = 0"));
    let v = json(&["verify", "--n", "4"]);
    let inc = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "incidence").unwrap();
    assert_eq!(inc["detail"], "histogram {3: 10}");
}

#[test]
fn normalize_report() {
    check_golden("normalize_super.json", &["normalize", "[[x1,x2],x3]", "--flavor", "super"]);
    let v = json(&["normalize", "[x2,x1]", "--flavor", "super"]);
    assert_eq!(v["result"], "[x1,x2]");
    let v = json(&["normalize", "[x2,x1]"]);
    assert_eq!(v["result"], "-[x1,x2]");
}

#[test]
fn complex_dump_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t5.json");
    let out = run(&["complex", "--n", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let ok = run(&["verify", "--complex", path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    // flip the sign of one boundary entry in the top degree
    let mut dump: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let entries = dump["boundaries"].as_array_mut().unwrap().last_mut().unwrap()["entries"].as_array_mut().unwrap();
    let e = entries[0].as_array_mut().unwrap();
    e[2] = serde_json::json!(-e[2].as_i64().unwrap());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&dump).unwrap()).unwrap();
    let out = run(&["verify", "--complex", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], false);
    assert!(v["checks"][0]["detail"].as_str().unwrap().contains("boundary of boundary is nonzero"));

    // truncated file
    std::fs::write(&bad, "{\"schema\": 1").unwrap();
    let out = run(&["verify", "--complex", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["enumerate", "--n", "40"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "9"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["normalize", "[a,[b"]).status.code(), Some(2));
    assert_eq!(run(&["character", "--n", "3", "--jobs", "2"]).status.code(), Some(0));
}

#[test]
fn output_is_byte_stable() {
    let a = run(&["homology", "--n", "5", "--format", "text"]).stdout;
    let b = run(&["homology", "--n", "5", "--format", "text"]).stdout;
    assert_eq!(a, b);
}
