use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critindep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {:?}", out))
}

fn analyze(name: &str) -> Value {
    let path = data(name);
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    json(&out)
}

#[test]
fn analyze_g_tb() {
    let r = analyze("g_tb.el");
    assert_eq!(r["d"], 0);
    assert_eq!(r["alpha_prime"], 1);
    assert_eq!(r["alpha"], 2);
    assert_eq!(r["classification"], "reducible");
    assert_eq!(r["is_ke"], false);
    assert_eq!(r["X"], serde_json::json!([0, 1]));
}

#[test]
fn analyze_named_graphs() {
    let c4 = analyze("c4.el");
    assert_eq!(c4["is_ke"], true);
    assert_eq!(c4["X"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(analyze("k3.el")["classification"], "irreducible");
    assert_eq!(analyze("c5.col")["X"], serde_json::json!([]));
}

#[test]
fn compact_json_is_one_line() {
    let path = data("p3.el");
    let out = run(&["analyze", "--json", path.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim_end().lines().count(), 1);
}

#[test]
fn decompose_writes_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let path = data("g_tb.el");
    let out = run(&[
        "decompose",
        path.to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let body = json(&out);
    assert_eq!(body["X_names"], serde_json::json!(["a", "b"]));
    assert_eq!(body["X_complement_names"], serde_json::json!(["t1", "t2", "t3"]));
    let read = |f: &str| std::fs::read_to_string(dir.path().join(f)).unwrap();
    assert_eq!(read("x.txt"), "0\n1\n");
    assert_eq!(read("x_complement.txt"), "2\n3\n4\n");
    assert_eq!(read("critical_set.txt"), "0\n");
    assert_eq!(read("matching.txt"), "1 0\n");
}

#[test]
fn decompose_p3_matches_center_to_an_end() {
    let path = data("p3.el");
    let body = json(&run(&["decompose", path.to_str().unwrap()]));
    assert_eq!(body["X"], serde_json::json!([0, 1, 2]));
    let pair = &body["matching_names"][0];
    assert_eq!(pair[0], "b");
    assert!(pair[1] == "a" || pair[1] == "c");
}

#[test]
fn decompose_c5_has_empty_x() {
    let path = data("c5.col");
    let body = json(&run(&["decompose", path.to_str().unwrap()]));
    assert_eq!(body["X"], serde_json::json!([]));
    assert_eq!(body["matching"], serde_json::json!([]));
}

#[test]
fn parse_errors_exit_2() {
    let path = data("self_loop.el");
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(run(&["analyze", "/nonexistent/graph.el"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3_with_null_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run(&["gen", "--kind", "er", "--n", "60", "--p", "0.3", "--seed", "5"]);
    assert!(gen.status.success());
    let path = dir.path().join("er.el");
    std::fs::write(&path, &gen.stdout).unwrap();
    let out = run(&["analyze", path.to_str().unwrap(), "--exact-budget", "1"]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
    assert_eq!(json(&out)["alpha"], Value::Null);
}

#[test]
fn mis_and_ke_commands() {
    let path = data("g_tb.el");
    let mis = json(&run(&["mis", path.to_str().unwrap()]));
    assert_eq!(mis["alpha"], 2);
    assert_eq!(mis["x_size"], 2);
    let path = data("c4.el");
    let ke = json(&run(&["ke", path.to_str().unwrap()]));
    assert_eq!(ke["is_ke"], true);
    assert_eq!(ke["classification"], "totally_reducible");
}

#[test]
fn gen_is_deterministic_and_parsable() {
    let a = run(&[
        "gen", "--kind", "er", "--n", "40", "--p", "0.2", "--seed", "9", "--format", "dimacs",
    ]);
    let b = run(&[
        "gen", "--kind", "er", "--n", "40", "--p", "0.2", "--seed", "9", "--format", "dimacs",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let g = critindep::parse_graph(&text, critindep::Format::Dimacs).unwrap();
    assert_eq!(g.n(), 40);
}

#[test]
fn oracle_check_random_corpus_is_clean() {
    let out = run(&["oracle-check", "--n", "8", "--count", "200", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let body = json(&out);
    assert_eq!(body["graphs"], 200);
    assert_eq!(body["violations"], 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 violations"));
}

#[test]
fn oracle_check_all_three_vertex_graphs() {
    let out = run(&["oracle-check", "--n", "3", "--count", "all-graphs"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["graphs"], 8);
}

#[test]
fn planted_bug_is_caught() {
    let out = run(&["oracle-check", "--n", "6", "--count", "10", "--plant-bug"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(json(&out)["violations"].as_u64().unwrap() > 0);
    // the offending graph is dumped in edge-list form
    assert!(String::from_utf8_lossy(&out.stderr).contains("6 "));
}

#[test]
fn bench_on_bipartite_instances_has_empty_residual() {
    let out = run(&["bench", "--n", "20", "--p", "0.2", "--count", "5", "--bipartite"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    for row in rows {
        assert_eq!(&row[4], "0");
        assert_eq!(&row[9], "true");
    }
}
