use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use ratmle::disctriple::TripleJson;
use ratmle::horn::HornPairJson;
use ratmle::stagedtree::builders::{coin, four_chain, independence};
use ratmle::stagedtree::{StagedTree, TableJson, TreeJson};

fn ratmle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratmle")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn write_tree(dir: &TempDir, name: &str, t: &StagedTree) -> PathBuf {
    write(dir, name, &serde_json::to_string(&t.to_json()).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const EQ4: &str = r#"{"H":[[-1,-1,-2,-2],[1,0,3,2],[1,3,0,2],[-1,-2,-1,-2]],"lambda":["2/3","-4/27","-4/27","1/27"]}"#;

#[test]
fn coin_mle_prints_fractions_and_decimals() {
    let dir = TempDir::new().unwrap();
    let f = write_tree(&dir, "coin.json", &coin());
    let o = ratmle(&["tree", "mle", s(&f), "--counts", "1,1,1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    for line in ["= 3/5 (0.6)", "= 2/5 (0.4)", "= 9/25 (0.36)", "= 6/25 (0.24)"] {
        assert!(text.contains(line), "{text}");
    }
    let o = ratmle(&["tree", "mle", s(&f), "--counts", "1,1,1", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["s_hat"], serde_json::json!(["3/5", "2/5"]));
    assert_eq!(v["p_hat"], serde_json::json!(["9/25", "6/25", "2/5"]));
}

#[test]
fn bad_column_sum_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", r#"{"H":[[1,0,0,1],[0,1,0,0],[-1,-1,0,0]],"lambda":["1","1","1","1"]}"#);
    let o = ratmle(&["horn", "check", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 3 sums to 1"), "{}", stderr(&o));
}

#[test]
fn malformed_counts_name_the_field() {
    let dir = TempDir::new().unwrap();
    let f = write_tree(&dir, "coin.json", &coin());
    let o = ratmle(&["tree", "mle", s(&f), "--counts", "1,x,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--counts[1]"));
    let o = ratmle(&["tree", "mle", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn horn_check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "eq4.json", EQ4);
    let o = ratmle(&["horn", "check", s(&good), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sigma"], serde_json::json!([-1, 1, 1, -1]));
    let unfriendly = write(&dir, "u.json", r#"{"H":[[1,0],[0,1],[-1,-1]],"lambda":["1","1"]}"#);
    assert_eq!(ratmle(&["horn", "check", s(&unfriendly)]).status.code(), Some(1));
}

#[test]
fn horn_eval_at_ones() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "eq4.json", EQ4);
    let o = ratmle(&["horn", "eval", s(&f), "--counts", "1,1,1,1", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], serde_json::json!(["2/3", "4/27", "4/27", "1/27"]));
    assert_eq!(v["sum"], "1");
}

#[test]
fn tree_to_triple_and_back() {
    let dir = TempDir::new().unwrap();
    let t = write_tree(&dir, "chain.json", &four_chain());
    let o = ratmle(&["tree", "horn", s(&t), "--format", "json"]);
    let full = write(&dir, "full.json", &stdout(&o));
    let o = ratmle(&["horn", "reduce", s(&full), "--format", "json"]);
    let reduced = write(&dir, "reduced.json", &stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["H"].as_array().unwrap().len(), 17);
    let o = ratmle(&["triple", "from-pair", s(&reduced)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let triple = write(&dir, "triple.json", &stdout(&o));
    assert_eq!(ratmle(&["triple", "check", s(&triple)]).status.code(), Some(0));
    let o = ratmle(&["triple", "to-pair", s(&triple)]);
    let back = write(&dir, "back.json", &stdout(&o));
    let o = ratmle(&["horn", "equal", s(&reduced), s(&back)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn identified_chain_is_the_independence_model() {
    let dir = TempDir::new().unwrap();
    let chain = write_tree(&dir, "chain.json", &four_chain());
    let o = ratmle(&["tree", "identify", s(&chain), "--florets", "f4,f5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let merged = write(&dir, "merged.json", &stdout(&o));
    let ind = write_tree(&dir, "ind.json", &independence(4, 4));
    assert_eq!(ratmle(&["tree", "equiv", s(&merged), s(&ind)]).status.code(), Some(0));
    assert_eq!(ratmle(&["tree", "equiv", s(&chain), s(&ind)]).status.code(), Some(1));
    let o = ratmle(&["tree", "identify", s(&chain), "--florets", "f4,f99"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_tree_is_reported() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "t.json",
        r#"{"nodes":["r","a","b"],"edges":[{"from":"r","to":"a","label":"s0"},{"from":"r","to":"c","label":"s1"}]}"#,
    );
    let o = ratmle(&["tree", "validate", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("edges[1].to"));
}

#[test]
fn discriminant_of_one_four_seven() {
    let o = ratmle(&["disc", "univariate", "1", "4", "7", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 9);
    let o = ratmle(&["disc", "trinomial", "1", "2", "1", "2"]);
    assert!(stdout(&o).contains("7 terms"));
}

#[test]
fn univariate_scan_summary() {
    let o = ratmle(&["scan", "univariate", "--bound", "17", "--format", "table"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("613 matrices, 7927 pairs, 123 triples (1.55%)"), "{}", stdout(&o));
}

#[test]
fn scan_output_is_identical_across_workers() {
    let a = ratmle(&["scan", "univariate", "--bound", "9", "--jobs", "1", "--format", "json"]);
    let b = ratmle(&["scan", "univariate", "--bound", "9", "--jobs", "4", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(ratmle(&["scan", "univariate", "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn resumed_scan_matches_a_fresh_one() {
    let dir = TempDir::new().unwrap();
    let ck = dir.path().join("ck.ndjson");
    let fresh = ratmle(&["scan", "univariate", "--bound", "9", "--format", "json"]);
    ratmle(&["scan", "univariate", "--bound", "9", "--limit", "20", "--resume", s(&ck)]);
    let lines = std::fs::read_to_string(&ck).unwrap().lines().count();
    assert_eq!(lines, 20);
    let resumed = ratmle(&["scan", "univariate", "--bound", "9", "--resume", s(&ck), "--format", "json"]);
    assert_eq!(fresh.stdout, resumed.stdout);
}

#[test]
fn verify_model_reports() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "eq4.json", EQ4);
    let o = ratmle(&["verify", "model", s(&f), "--seed", "7", "--trials", "10", "--samples", "20", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["failures"], serde_json::json!([]));
    let t = write_tree(&dir, "coin.json", &coin());
    let again = ratmle(&["verify", "model", s(&t), "--seed", "7", "--trials", "10", "--samples", "20"]);
    assert!(again.status.success());
    assert_eq!(again.stdout, ratmle(&["verify", "model", s(&t), "--seed", "7", "--trials", "10", "--samples", "20"]).stdout);
}

fn round_trip<T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug>(text: &str) {
    let a: T = serde_json::from_str(text).unwrap();
    let b: T = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn input_formats_round_trip() {
    round_trip::<TreeJson>(&serde_json::to_string(&four_chain().to_json()).unwrap());
    round_trip::<TreeJson>(r#"{"nodes":[0,1,2],"edges":[{"from":0,"to":1,"label":"a"},{"from":0,"to":2,"label":"b"}]}"#);
    round_trip::<HornPairJson>(EQ4);
    round_trip::<TableJson>(r#"{"dims":[2,2],"counts":[1,"2/3",3,4]}"#);
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "eq4.json", EQ4);
    let o = ratmle(&["triple", "from-pair", s(&f)]);
    round_trip::<TripleJson>(&stdout(&o));
}
