use std::process::{Command, Output};

use hlp_core::bruhatgraph::LabeledGraph;
use serde_json::Value;

fn hlp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlp")).args(args).env_remove("HLP_CAP").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = hlp(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

#[test]
fn table1_verdicts() {
    let v = json(&["table1"]);
    let rows = v["result"].as_array().unwrap();
    let got: Vec<(String, u64, String)> = rows
        .iter()
        .map(|r| {
            (
                r["subject"].as_str().unwrap().to_string(),
                r["positive_roots"].as_u64().unwrap(),
                r["verdict"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    let want = [("A2", 3, "yes"), ("B2", 4, "yes"), ("G2", 6, "yes"), ("B3", 9, "no"), ("C3", 9, "no"), ("F4", 24, "no")];
    assert_eq!(got.len(), 6);
    for (g, w) in got.iter().zip(want) {
        assert_eq!((g.0.as_str(), g.1, g.2.as_str()), w);
    }
    assert_eq!(v["seed"], 0x5eed);
}

#[test]
fn a2_graph_export() {
    let dot = stdout(&["export-graph", "--type", "A", "--rank", "2", "--format", "dot"]);
    let g = LabeledGraph::from_dot(&dot, 2).unwrap();
    assert_eq!((g.num_vertices(), g.num_edges()), (6, 8));
    let v = json(&["export-graph", "--type", "A2"]);
    assert_eq!(v["result"]["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(v["result"]["edges"].as_array().unwrap().len(), 8);
}

#[test]
fn parabolic_and_degenerate_exports() {
    let v = json(&["export-graph", "--type", "B3", "--parabolic", "2,3"]);
    assert_eq!(v["result"]["vertices"].as_array().unwrap().len(), 6);
    let v = json(&["export-graph", "--type", "A2", "--degenerate", "1,2"]);
    // P^2 x P^1: 2 * 2 + 3 * 1 edges
    assert_eq!(v["result"]["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(v["result"]["edges"].as_array().unwrap().len(), 7);
}

#[test]
fn b2_checks() {
    let v = json(&["check-hlp", "--type", "B2", "--prime", "3"]);
    assert_eq!(v["result"]["verdict"], "yes");
    assert!(v["result"]["witness"].is_object());
    let scan = stdout(&["finite-scan", "--type", "B2", "--prime", "5"]);
    assert!(scan.contains("no witness in F_5^2"), "{scan}");
}

#[test]
fn bad_primes_and_classical_families() {
    let v = json(&["parabolic-primes", "--type", "E7"]);
    assert_eq!(v["result"][0]["primes"], serde_json::json!([2, 3, 5, 7, 19, 23]));
    let csv = stdout(&["parabolic-primes", "--rank", "5", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("B5,1,25,10,9,2,"));
    assert!(lines[2].starts_with("C5,1,25,10,9,,"));
    assert!(lines[3].starts_with("D5,1,20,10,8,2,"));
}

#[test]
fn main_theorem_and_monomial() {
    let v = json(&["main-theorem", "--type", "G2", "--prime", "7"]);
    assert_eq!(v["result"]["report"]["verdict"], "yes");
    assert_eq!(v["result"]["consistent"], true);
    let v = json(&["check-hlp", "--type", "A3", "--prime", "7", "--ordering", "3,2,1"]);
    assert_eq!(v["result"]["ordering"], serde_json::json!([3, 2, 1]));
    let v = json(&["monomial", "--degrees", "2,2", "--prime", "2"]);
    assert_eq!(v["result"]["report"]["verdict"], "no");
    let v = json(&["monomial", "--degrees", "3,2", "--prime", "5"]);
    assert_eq!(v["result"]["sl2"]["summands"], serde_json::json!([[1, 1], [3, 1]]));
}

#[test]
fn identical_runs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = hlp(&["check-hlp", "--type", "G2", "--prime", "5", "--mode", "pit", "--format", "json", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!x.is_empty());
    assert_eq!(x, y);
    let v: Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(v["seed"], 0x5eed);
    let other = json(&["check-hlp", "--type", "G2", "--prime", "5", "--mode", "pit", "--seed", "7"]);
    assert_eq!(other["seed"], 7);
    assert_eq!(other["result"]["seed"], 7);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| hlp(args).status.code().unwrap();
    assert_eq!(code(&["check-hlp", "--type", "X2", "--prime", "3"]), 3);
    assert_eq!(code(&["check-hlp", "--type", "A2", "--prime", "4"]), 5);
    assert_eq!(code(&["table1", "--format", "dot"]), 2);
    assert_eq!(code(&["check-hlp", "--type", "A2"]), 2);
    assert_eq!(code(&["check-hlp", "--type", "A2", "--prime", "3", "--ordering", "1,1"]), 5);
    let capped = Command::new(env!("CARGO_BIN_EXE_hlp"))
        .args(["check-hlp", "--type", "A3", "--prime", "5"])
        .env("HLP_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(4));
    // a completed computation exits 0 whatever the verdict
    assert_eq!(code(&["check-hlp", "--type", "B3", "--prime", "5"]), 0);
}
