use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use semigroupoid::fixtures;
use semigroupoid::format::{to_json, Structure};
use semigroupoid::random::{copy_action, small_semilattices};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semigroupoid"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn fixture_file(dir: &TempDir, name: &str) -> PathBuf {
    let path = dir.path().join(format!("{name}.json"));
    let out = run(&["fixture", name, "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    path
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn analyze_b2_reports_the_witness() {
    let dir = TempDir::new().unwrap();
    let b2 = fixture_file(&dir, "b2");
    let out = run(&["analyze", "--input", p(&b2)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["e_unitary"]["e_unitary"], false);
    assert_eq!(v["e_unitary"]["witness_names"], serde_json::json!(["0", "a"]));
    assert_eq!(v["groupoid"], false);
    assert_eq!(v["idempotents"].as_array().unwrap().len(), 3);
}

#[test]
fn analyze_verify_all_passes_on_fixtures() {
    let dir = TempDir::new().unwrap();
    for name in fixtures::NAMES {
        let path = fixture_file(&dir, name);
        let out = run(&["analyze", "--verify-all", "--input", p(&path)]);
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(json(&out)["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    }
}

#[test]
fn ptheorem_on_chain2() {
    let dir = TempDir::new().unwrap();
    let chain = fixture_file(&dir, "chain2");
    let out = run(&["ptheorem", "--input", p(&chain)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["size"], 2);
    assert_eq!(v["isomorphism"].as_array().unwrap().len(), 2);
}

#[test]
fn ptheorem_rejects_b2() {
    let dir = TempDir::new().unwrap();
    let b2 = fixture_file(&dir, "b2");
    let out = run(&["ptheorem", "--input", p(&b2)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["e_unitary"], false);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let malformed = write(&dir, "bad.json", "{\"kind\": \"semigroupoid\", ");
    assert_eq!(code(&run(&["validate", "--input", p(&malformed)])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["validate", "--input", p(&missing)])), 2);
    let unknown = write(&dir, "unknown.json", r#"{"kind":"poset","elements":["a"],"leq":[["a","b"]]}"#);
    assert_eq!(code(&run(&["validate", "--input", p(&unknown)])), 2);
    let cycle = write(&dir, "cycle.json", r#"{"kind":"poset","elements":["a","b"],"leq":[["a","b"],["b","a"]]}"#);
    let out = run(&["validate", "--input", p(&cycle)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["valid"], false);
    let ok = fixture_file(&dir, "pair2");
    let out = run(&["validate", "--input", p(&ok)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["inverse"], true);
    assert_eq!(code(&run(&["enumerate", "--max-arrows", "6"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
}

#[test]
fn non_inverse_semigroupoid_fails_analysis() {
    let dir = TempDir::new().unwrap();
    // Left-zero semigroup on two elements: every element is a pseudoinverse
    // of every other.
    let text = r#"{"kind":"semigroupoid","objects":["u"],
        "arrows":[{"name":"a","dom":0,"cod":0},{"name":"b","dom":0,"cod":0}],
        "mul":[[0,0,0],[0,1,0],[1,0,1],[1,1,1]]}"#;
    let path = write(&dir, "lz.json", text);
    let out = run(&["validate", "--input", p(&path)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["inverse"], false);
    assert_eq!(code(&run(&["analyze", "--input", p(&path)])), 1);
}

#[test]
fn munn_then_globalize_and_semidirect() {
    let dir = TempDir::new().unwrap();
    let b2 = fixture_file(&dir, "b2");
    let munn = dir.path().join("munn.json");
    assert_eq!(code(&run(&["munn", "--input", p(&b2), "--output", p(&munn)])), 0);
    let out = run(&["validate", "--input", p(&munn)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["kind"], "action");

    let out = run(&["globalize", "--verify-all", "--input", p(&munn)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["contract"], "ok");
    // A global action is its own globalization.
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);

    let chain = fixture_file(&dir, "chain2");
    let chain_munn = dir.path().join("chain-munn.json");
    assert_eq!(code(&run(&["munn", "--input", p(&chain), "--output", p(&chain_munn)])), 0);
    let product = dir.path().join("product.json");
    assert_eq!(code(&run(&["semidirect", "--input", p(&chain_munn), "--output", p(&product)])), 0);
    let out = run(&["validate", "--input", p(&product)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["inverse"], true);
}

#[test]
fn seeded_globalization_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let s = fixture_file(&dir, "sa-chain2");
    let a = run(&["globalize", "--seed", "7", "--input", p(&s)]);
    let b = run(&["globalize", "--seed", "7", "--input", p(&s)]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert!(v["input"]["carrier"].as_array().is_some());
    assert!(!v["embedding"].as_array().unwrap().is_empty());
    let dot = run(&["globalize", "--seed", "7", "--format", "dot", "--input", p(&s)]);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("digraph order {"));
    assert_eq!(code(&run(&["globalize", "--input", p(&s)])), 2);
}

#[test]
fn triple_from_groupoid_action_and_back() {
    let dir = TempDir::new().unwrap();
    let g = fixtures::pair_groupoid(2);
    let action = copy_action(&g, &small_semilattices()[2]);
    let action_path = write(&dir, "action.json", &to_json(&Structure::Action(action)));
    let triple_path = dir.path().join("triple.json");
    let out = run(&["triple", "--input", p(&action_path), "--output", p(&triple_path)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let out = run(&["triple", "--input", p(&triple_path)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["e_unitary"], true);
    let out = run(&["export-dot", "--diagram", "order", "--input", p(&triple_path)]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("style=filled"));
}

#[test]
fn enumerate_counts() {
    let out = run(&["enumerate", "--max-arrows", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["count"], 4);
    let out = run(&["enumerate", "--max-arrows", "3", "--max-objects", "1", "--verify-all"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["count"], 8);
    assert_eq!(v["failed_checks"], serde_json::json!([]));
}

#[test]
fn export_dot_diagrams() {
    let dir = TempDir::new().unwrap();
    let pair = fixture_file(&dir, "pair2");
    let graph = run(&["export-dot", "--input", p(&pair)]);
    assert_eq!(code(&graph), 0);
    let text = String::from_utf8_lossy(&graph.stdout);
    assert!(text.starts_with("digraph semigroupoid {"));
    assert_eq!(text.matches(" -> ").count(), 4);
    let chain = fixture_file(&dir, "chain2");
    let order = run(&["export-dot", "--diagram", "order", "--input", p(&chain)]);
    assert!(String::from_utf8_lossy(&order.stdout).contains("\"f\" -> \"e\";"));
}

#[test]
fn files_are_canonical() {
    let dir = TempDir::new().unwrap();
    let b2 = fixture_file(&dir, "b2");
    let text = fs::read_to_string(&b2).unwrap();
    let again = semigroupoid::format::parse(&text).unwrap();
    assert_eq!(to_json(&again) + "\n", text);
}
