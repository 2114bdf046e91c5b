//! End-to-end runs of the `matchpoly` binary.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matchpoly"))
        .args(args)
        .env_remove("MATCHPOLY_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    (serde_json::from_str(&stdout(&o)).expect("valid json"), code(&o))
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn analyze_wheel_is_not_gorenstein() {
    let (v, c) = json(&["analyze", "--wheel", "6"]);
    assert_eq!(c, 0);
    assert_eq!(v["graph"]["name"], "W6");
    assert_eq!(v["gorenstein"]["verdict"], false);
    assert_eq!(v["gorenstein"]["witness"]["kind"], "degree_mismatch");
    assert_eq!(v["status"], "complete");
}

#[test]
fn analyze_five_cycle_is_type_b() {
    let (v, c) = json(&["analyze", "--cycle", "5"]);
    assert_eq!(c, 0);
    assert_eq!(v["gorenstein"]["verdict"], true);
    assert_eq!(v["gorenstein"]["class"], "type_b");
    assert_eq!(v["gorenstein"]["index_k"], 3);
    assert_eq!(v["bipartite"], false);
    assert!(v["hstar"].is_null());
}

#[test]
fn analyze_with_toggles() {
    let (v, c) = json(&["analyze", "--cycle", "4", "--hstar", "--idp", "--tmax", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["hstar"]["coefficients"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["hstar"]["palindromic"], true);
    assert_eq!(v["idp"]["certified"], true);
    assert_eq!(v["idp"]["t_max"], 3);
}

#[test]
fn analyze_missing_file_is_an_input_error() {
    let o = run(&["analyze", "--file", "missing.txt"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.txt"));
}

#[test]
fn analyze_reads_edge_lists() {
    let f = temp_file("# paw\n0 1\n1 2\n0 2\n2 3\n");
    let (v, c) = json(&["analyze", "--file", f.path().to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["graph"]["edges"], 4);
    assert_eq!(v["blocks"]["cut_vertices"], serde_json::json!([2]));
}

#[test]
fn analyze_splits_disconnected_graphs_into_components() {
    let f = temp_file("vertices 7\n0 1\n1 2\n0 2\n3 4\n4 5\n5 6\n3 6\n");
    let (v, c) = json(&["analyze", "--file", f.path().to_str().unwrap()]);
    assert_eq!(c, 0);
    assert!(v["gorenstein"].is_null());
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0]["gorenstein"]["class"], "type_c");
    assert_eq!(comps[1]["gorenstein"]["class"], "type_a");
}

#[test]
fn malformed_edge_list_is_an_input_error() {
    let f = temp_file("0 1\n1 x\n");
    assert_eq!(code(&run(&["analyze", "--file", f.path().to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["analyze"])), 2);
    assert_eq!(code(&run(&["analyze", "--wheel", "5", "--cycle", "4"])), 2);
}

#[test]
fn exhausted_budget_still_prints_the_report() {
    let o = run(&["analyze", "--wheel", "7", "--hstar", "--budget", "0"]);
    assert_eq!(code(&o), 3);
    let text = stdout(&o);
    assert!(text.contains("gorenstein: false"));
    assert!(text.contains("incomplete:"));

    let (v, c) = json(&["analyze", "--wheel", "7", "--hstar", "--budget", "0"]);
    assert_eq!(c, 3);
    assert_eq!(v["status"], "resource_exceeded");
    assert!(v["hstar"].is_null());
    assert_eq!(v["budget_seconds"], 0);
}

#[test]
fn budget_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_matchpoly"))
        .args(["hstar", "--wheel", "7"])
        .env("MATCHPOLY_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn hstar_prints_the_bracketed_list() {
    let o = run(&["hstar", "--wheel", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "[1, 3, 3, 1]\nunimodal: true, palindromic: true\n");

    let o = run(&["hstar", "--wheel", "6"]);
    assert!(stdout(&o).starts_with("[1, 25, 170, 386, 285, 57]\n"));
    assert!(stdout(&o).contains("palindromic: false"));

    let o = run(&["hstar", "--path", "2"]);
    assert!(stdout(&o).starts_with("[1]\n"));
}

#[test]
fn hstar_json_schema() {
    let (v, _) = json(&["hstar", "--wheel", "5"]);
    assert_eq!(v["coefficients"], serde_json::json!([1, 10, 29, 26, 5]));
    assert_eq!(v["dimension"], 8);
    assert_eq!(v["degree"], 4);
    assert_eq!(v["unimodal"], true);
}

#[test]
fn idp_certifies() {
    let cases: [&[&str]; 3] = [
        &["idp", "--chortling-c5", "--tmax", "4"],
        &["idp", "--wheel", "5", "--tmax", "4"],
        &["idp", "--cycle", "4", "--tmax", "3"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}");
        assert_eq!(stdout(&o), format!("IDP certified for t ≤ {}\n", args[args.len() - 1]));
    }
    let o = run(&["idp", "--chorded-c5", "--tmax", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn split_the_adjacent_slices_instance() {
    let f = temp_file("0 4 2\n3 4 1\n0 3 1\n1 4 1\n0 1 1\n");
    let o = run(&[
        "split",
        "--wheel",
        "5",
        "--weights-file",
        f.path().to_str().unwrap(),
        "--t",
        "4",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("4 matchings"));
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with("part ")).count(), 4);
    assert!(text.contains("trace:"));
}

#[test]
fn split_rejects_non_t_matchings() {
    let o = run(&["split", "--cycle", "3", "--weights", "1,1,1", "--t", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not a 2-matching"));
    assert!(stdout(&o).contains("odd structure {0, 1, 2}: weight 3 > 2"));

    let (v, c) = json(&["split", "--cycle", "3", "--weights", "1,1,1", "--t", "2"]);
    assert_eq!(c, 1);
    assert_eq!(v["t_matching"], false);
    assert_eq!(v["violations"][0]["kind"], "structure");
}

#[test]
fn split_dimension_mismatch_is_an_input_error() {
    assert_eq!(
        code(&run(&["split", "--cycle", "4", "--weights", "1,1", "--t", "2"])),
        2
    );
}

#[test]
fn split_single_edge_gives_copies() {
    let (v, c) = json(&["split", "--path", "2", "--weights", "3", "--t", "3"]);
    assert_eq!(c, 0);
    let parts = v["result"]["parts"].as_array().unwrap();
    assert_eq!(parts.len(), 3);
    assert!(parts.iter().all(|p| p["weights"] == serde_json::json!([1])));
}

#[test]
fn split_on_a_wheel_uses_the_wheel_construction() {
    let (v, c) = json(&["split", "--wheel", "5", "--weights", "1,1,1,1,1,1,1,1", "--t", "4"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["method"], "wheel");
    assert_eq!(v["result"]["fallback_used"], false);
}

#[test]
fn reports_are_deterministic() {
    let args = ["analyze", "--wheel", "5", "--hstar", "--idp", "--tmax", "3", "--json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stderr, second.stderr);

    let args = ["split", "--wheel", "6", "--weights", "1,1,1,1,1,1,1,1,1,1", "--t", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
