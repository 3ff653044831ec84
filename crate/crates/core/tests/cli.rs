mod common;

use std::io::Write;
use std::process::{Command, Output};

fn dissoc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dissoc")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn lt8_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(common::LT8.as_bytes()).unwrap();
    f
}

#[test]
fn analyze_lt8() {
    let f = lt8_file();
    let out = dissoc(&["analyze", f.path().to_str().unwrap(), "--k", "3,2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["mds_count"], "3");
    assert_eq!(doc["alpha3"], 6);
    assert_eq!(doc["critical_edges"], serde_json::json!([["u1", "u2"], ["u3", "u4"]]));
    assert_eq!(doc["static_included"], serde_json::json!(["v1", "v2", "v3", "v4"]));
    let ks: Vec<_> = doc["kke"].as_array().unwrap().iter().map(|r| r["k"].as_u64().unwrap()).collect();
    assert_eq!(ks, vec![2, 3]);
    assert!(doc["theorem_checks"].as_object().unwrap().values().all(|v| v == "pass"));
}

#[test]
fn analyze_output_is_stable() {
    let f = lt8_file();
    let a = dissoc(&["analyze", f.path().to_str().unwrap()]);
    let b = dissoc(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn enumerate_lists_sets_in_order() {
    let f = lt8_file();
    let out = dissoc(&["enumerate", f.path().to_str().unwrap()]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "u1 u3 v1 v2 v3 v4\nu1 u4 v1 v2 v3 v4\nu2 u4 v1 v2 v3 v4\n"
    );
    let out = dissoc(&["enumerate", f.path().to_str().unwrap(), "--limit", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn bad_input_is_a_usage_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"a b\nb c\nc a\n").unwrap();
    assert_eq!(dissoc(&["analyze", f.path().to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(dissoc(&["analyze", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(dissoc(&["analyze", f.path().to_str().unwrap(), "--k", "1"]).status.code(), Some(1));
}

#[test]
fn extremal_sweep_for_seven() {
    let out = dissoc(&["extremal", "--n", "7", "--sweep"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["formula_value"], "4");
    assert_eq!(doc["match"], true);
    assert_eq!(doc["extremal_codes"].as_array().unwrap().len(), 2);
}

#[test]
fn extremal_without_sweep_lists_the_family() {
    let out = dissoc(&["extremal", "--n", "8"]);
    let doc = json(&out);
    assert_eq!(doc["formula_value"], "3");
    assert_eq!(doc["family"].as_array().unwrap().len(), 7);
    let out = dissoc(&["extremal", "--n", "4"]);
    assert_eq!(json(&out)["characterized"], false);
}

#[test]
fn verify_writes_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("summary.csv");
    let out = dissoc(&["verify", "--n-max", "8", "--jobs", "2", "--csv", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "n,trees,max_count,formula,match,failures");
    assert_eq!(lines[8], "8,23,3,3,true,0");
    assert!(String::from_utf8(out.stderr).unwrap().contains("elapsed"));
}

#[test]
fn gen_trees_blocks_parse_back() {
    let out = dissoc(&["gen-trees", "--n", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let blocks: Vec<_> = text.split("# tree ").filter(|b| !b.is_empty()).collect();
    assert_eq!(blocks.len(), 3);
    for b in blocks {
        let body: String = b.lines().skip(1).map(|l| format!("{l}\n")).collect();
        let t = dissociation::parse_edge_list(&body).unwrap();
        assert!(t.is_tree() && t.n() == 5);
    }
    assert_eq!(String::from_utf8(dissoc(&["gen-trees", "--n", "4", "--count-only"]).stdout).unwrap(), "2\n");
}

#[test]
fn exit_codes() {
    assert_eq!(dissoc(&[]).status.code(), Some(1));
    assert_eq!(dissoc(&["verify", "--n-max", "19"]).status.code(), Some(2));
    assert_eq!(dissoc(&["gen-trees", "--n", "23", "--count-only"]).status.code(), Some(2));
    assert_eq!(dissoc(&["--version"]).status.code(), Some(0));
}
