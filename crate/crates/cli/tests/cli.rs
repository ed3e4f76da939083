use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], dir: &Path) -> (Output, Vec<Value>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hamlocate")).args(args).current_dir(dir).output().unwrap();
    let lines = String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    (out, lines)
}

#[test]
fn solve_reports_a_verified_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let (out, json) = run(&["solve", "--family", "ec2", "--n", "200", "--seed", "7", "--x", "0", "--y", "1"], dir.path());
    assert!(out.status.success());
    let r = &json[0];
    assert_eq!(r["verified"], true);
    assert_eq!(r["method"], "ec2");
    assert_eq!(r["certificate"].as_array().unwrap().len(), 200);
}

#[test]
fn solve_then_verify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (out, _) = run(&["gen", "--family", "random-dirac", "--n", "12", "--seed", "2", "--out", "g.g6"], d);
    assert!(out.status.success());
    let (out, _) = run(&["solve", "--graph", "g.g6", "--x", "0", "--y", "5", "--out", "rep.json"], d);
    assert!(out.status.success());
    let (out, json) = run(&["verify", "g.g6", "rep.json", "--target", "6"], d);
    assert!(out.status.success());
    assert_eq!(json[0]["verdict"]["verdict"], "accept");

    // make consecutive vertices a non-edge
    let g = hamlocate::io::read_graph(&d.join("g.g6")).unwrap().graph;
    let rep: Value = serde_json::from_str(&std::fs::read_to_string(d.join("rep.json")).unwrap()).unwrap();
    let mut order: Vec<usize> = rep["certificate"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize).collect();
    let (i, j) = (0..12)
        .flat_map(|i| (0..12).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && !g.has_edge(order[i], order[(j + 1) % 12]) && (j + 1) % 12 != i)
        .expect("random Dirac graph on 12 vertices is not complete");
    order.swap(i, j);
    let cert = serde_json::json!({ "order": order, "x": 0, "y": 5, "claimed_distance": 6 });
    std::fs::write(d.join("bad.json"), cert.to_string()).unwrap();
    let (out, json) = run(&["verify", "g.g6", "bad.json", "--target", "6"], d);
    assert!(!out.status.success());
    assert_eq!(json[0]["verdict"]["verdict"], "reject");
    let msg = json[0]["message"].as_str().unwrap();
    assert!(msg.contains("not an edge") || msg.contains("distance"), "{msg}");
}

#[test]
fn census_summary_has_no_failures() {
    let dir = tempfile::tempdir().unwrap();
    let (out, json) = run(&["census", "--n", "6", "--to", "7", "--route", "both", "--out-dir", "c"], dir.path());
    assert!(out.status.success());
    let summaries: Vec<&Value> = json.iter().filter(|v| v.get("failures").is_some()).collect();
    assert_eq!(summaries.len(), 4);
    assert!(summaries.iter().all(|v| v["failures"] == 0));
    assert!(json.iter().filter(|v| v["route"] == "agreement").all(|v| v["disagreements"] == 0));
    assert!(dir.path().join("c/census-n7-dispatch.jsonl").exists());
    // rerun resumes from the files and reports the same
    let (out, again) = run(&["census", "--n", "6", "--to", "7", "--route", "both", "--out-dir", "c"], dir.path());
    assert!(out.status.success());
    assert_eq!(json, again);
}

#[test]
fn contract_and_input_errors_are_json() {
    let dir = tempfile::tempdir().unwrap();
    let (out, json) =
        run(&["solve", "--family", "sharpness-bipartite", "--n", "12", "--x", "0", "--y", "1"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json[0]["error"], "contract");
    let (out, json) = run(&["solve", "--graph", "missing.g6", "--x", "0", "--y", "1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json[0]["error"], "input");
    std::fs::write(dir.path().join("bad.txt"), "4\n0 1\n1 9 9\n").unwrap();
    let (out, json) = run(&["solve", "--graph", "bad.txt", "--x", "0", "--y", "1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(json[0]["message"].as_str().unwrap().contains("line 3"));
}

#[test]
fn labelled_edge_lists_accept_labels() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("6\n");
    let names = ["a", "b", "c", "d", "e", "f"];
    for i in 0..6 {
        for j in i + 1..6 {
            text += &format!("{} {}\n", names[i], names[j]);
        }
    }
    std::fs::write(dir.path().join("k6.txt"), text).unwrap();
    let (out, json) = run(&["solve", "--graph", "k6.txt", "--x", "b", "--y", "e"], dir.path());
    assert!(out.status.success());
    assert_eq!((json[0]["x"].as_u64(), json[0]["y"].as_u64()), (Some(1), Some(4)));
}

#[test]
fn bench_prints_one_row_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let (out, json) = run(&["bench", "--families", "ec1,ec2", "--sizes", "40,60", "--seeds", "1", "--json"], dir.path());
    assert!(out.status.success());
    assert_eq!(json.len(), 4);
    assert!(json.iter().all(|r| r["solved"] == 1));
}
