mod common;

use std::path::Path;
use std::process::{Command, Output};

use clmat::topology::NetworkGraph;
use common::f4;

fn clmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clmat")).args(args).output().unwrap()
}

fn write_f4(dir: &Path) -> String {
    let path = dir.join("f4.json");
    std::fs::write(&path, f4().to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_is_deterministic_and_loadable() {
    let a = clmat(&["gen", "-n", "12", "--seed", "5"]);
    let b = clmat(&["gen", "-n", "12", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let g = NetworkGraph::from_json_bytes(&a.stdout).unwrap();
    assert_eq!(g.node_count(), 12);
    assert_ne!(clmat(&["gen", "-n", "12", "--seed", "6"]).stdout, a.stdout);
}

#[test]
fn gen_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let out = clmat(&["gen", "-n", "5", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(NetworkGraph::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap().node_count(), 5);
}

#[test]
fn select_formats() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_f4(dir.path());

    let table = clmat(&["select", "-i", &input]);
    assert_eq!(table.status.code(), Some(0));
    let text = String::from_utf8(table.stdout).unwrap();
    assert!(text.contains("aggregator: C"), "{text}");

    let json = clmat(&["select", "-i", &input, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["chosen"], "C");

    let first = clmat(&["select", "-i", &input, "--tie", "paper-order", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["chosen"], "B");

    let dot = String::from_utf8(clmat(&["select", "-i", &input, "--format", "dot"]).stdout).unwrap();
    assert!(dot.starts_with("graph network {"));
    assert!(dot.contains("doublecircle"));
}

#[test]
fn trees_csv_lists_every_root() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_f4(dir.path());
    let out = clmat(&["trees", "-i", &input, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("root,tree_energy,tree_cost,total_distance,depth,spanning"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn csv_input_matches_json_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_f4(dir.path());
    let nodes = dir.path().join("nodes.csv");
    let edges = dir.path().join("edges.csv");
    std::fs::write(&nodes, "id,energy\nA,5\nB,4\nC,3\nD,6\n").unwrap();
    std::fs::write(&edges, "u,v,distance\nA,B,2\nB,C,1\nA,C,4\nC,D,2\nB,D,5\n").unwrap();
    let from_csv = clmat(&["select", "--edges", edges.to_str().unwrap(), "--nodes", nodes.to_str().unwrap()]);
    let from_json = clmat(&["select", "-i", &input]);
    assert_eq!(from_csv.status.code(), Some(0));
    assert_eq!(from_csv.stdout, from_json.stdout);
}

#[test]
fn simulate_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, common::connected_geometric(15, 3).to_json()).unwrap();
    let p = path.to_str().unwrap();
    let args = ["simulate", "-i", p, "--radio", "0.01,1e-5,2,0.005", "--rounds", "500"];
    let a = clmat(&args);
    let b = clmat(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().starts_with("round,aggregator,total_drained,alive,deaths\n"));
}

#[test]
fn compare_runs_policies() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_f4(dir.path());
    let out = clmat(&["compare", "-i", &input, "--radio", "0.01,1e-5,2,0.005", "--trials", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().contains("clmat"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    // usage error
    let out = clmat(&["select", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let input = write_f4(dir.path());
    assert_eq!(clmat(&["simulate", "-i", &input, "--policy", "nonsense"]).status.code(), Some(1));

    // data error: missing file, malformed JSON
    assert_eq!(clmat(&["select", "-i", dir.path().join("missing.json").to_str().unwrap()]).status.code(), Some(2));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(clmat(&["select", "-i", bad.to_str().unwrap()]).status.code(), Some(2));

    // no spanning candidate: two islands
    let split = dir.path().join("split.json");
    std::fs::write(
        &split,
        r#"{"nodes":[{"id":"a","energy":1},{"id":"b","energy":1},{"id":"c","energy":1}],"edges":[{"u":"a","v":"b","distance":1}]}"#,
    )
    .unwrap();
    let out = clmat(&["select", "-i", split.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error: "));

    assert_eq!(clmat(&["--help"]).status.code(), Some(0));
}
