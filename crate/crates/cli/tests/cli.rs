use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn mguard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mguard")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K14_2SPLIT: &str = r#"{"n":7,"edges":[[0,1],[0,2],[1,2],[0,3],[0,4],[1,5],[1,6]]}"#;
const X3C_SAMPLE: &str = r#"{"q":3,"triples":[[0,1,2],[3,4,5],[1,2,4],[6,7,8],[5,6,7]]}"#;

#[test]
fn analyze_reports_values_and_methods() {
    let dir = tempfile::tempdir().unwrap();
    let k14 = write(dir.path(), "k14.json", K14_2SPLIT);
    let o = mguard(&["analyze", s(&k14), "--param", "medn", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["medn"], 3);
    assert_eq!(v["methods"]["medn"], "k14-2");

    let p5 = write(dir.path(), "p5.txt", "0 1\n1 2\n2 3\n3 4\n");
    let o = mguard(&["analyze", s(&p5), "--param", "medn,gamma", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["medn"].as_u64(), v["gamma"].as_u64()), (Some(3), Some(2)));
    let text = stdout(&mguard(&["analyze", s(&p5), "--param", "medn,gamma"]));
    assert!(text.contains("medn = 3 (oracle)"), "{text}");

    let c4 = write(dir.path(), "c4.json", r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]]}"#);
    let o = mguard(&["analyze", s(&c4), "--method", "k13"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a split graph"));

    let bad = write(dir.path(), "bad.txt", "0 0\n");
    assert_eq!(mguard(&["analyze", s(&bad)]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_is_exit_3_under_strict() {
    let dir = tempfile::tempdir().unwrap();
    let p5 = write(dir.path(), "p5.txt", "0 1\n1 2\n2 3\n3 4\n");
    let o = mguard(&["analyze", s(&p5), "--param", "medn", "--budget", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["budgetExceeded"]["medn"], true);
    assert!(v.get("medn").is_none());
    let o = mguard(&["analyze", s(&p5), "--param", "medn", "--budget", "3", "--strict"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(mguard(&["oracle", s(&p5), "--budget", "3"]).status.code(), Some(3));
}

#[test]
fn reduce_writes_documents() {
    let dir = tempfile::tempdir().unwrap();
    let x3c_sample = write(dir.path(), "x3c.json", X3C_SAMPLE);
    let o = mguard(&["reduce", "x3c", s(&x3c_sample)]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["graph"]["n"], 17);
    assert_eq!(v["vertexRoles"][14], "u");
    assert_eq!(v["predictions"]["coverBound"], 5);
    assert_eq!(v["certificates"], serde_json::json!([[0, 1, 3]]));

    let k3 = write(dir.path(), "k3.json", r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#);
    let out = dir.path().join("gp3.json");
    let o = mguard(&["reduce", "gp3", s(&k3), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["graph"]["n"], 12);
    assert_eq!(v["predictions"]["gamma"], 3);
    assert_eq!(v["predictions"]["medn"], 6);

    let tdm_sample = write(dir.path(), "tdm.json", r#"{"q":2,"triples":[[0,0,0],[0,1,0],[1,0,1]]}"#);
    let v: Value = serde_json::from_str(&stdout(&mguard(&["reduce", "3dm", s(&tdm_sample)]))).unwrap();
    assert_eq!(v["graph"]["n"], 36);
    assert_eq!(v["cliqueTree"]["pathProperty"], true);

    let bad = write(dir.path(), "bad.json", r#"{"q":1,"triples":[[0,3,0]]}"#);
    let o = mguard(&["reduce", "3dm", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_strategy_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let x3c_sample = write(dir.path(), "x3c.json", X3C_SAMPLE);
    let doc = dir.path().join("doc.json");
    let strat = dir.path().join("s.json");
    let o = mguard(&["reduce", "x3c", s(&x3c_sample), "-o", s(&doc), "--strategy-out", s(&strat)]);
    assert_eq!(o.status.code(), Some(0));

    let o = mguard(&["verify-strategy", s(&doc), s(&strat)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("proven, "), "{}", stdout(&o));

    // Drop one move from a rule with several.
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&strat).unwrap()).unwrap();
    let rules = v["rules"].as_array_mut().unwrap();
    let rule = rules.iter_mut().find(|r| r["moves"].as_array().unwrap().len() >= 2).unwrap();
    rule["moves"].as_array_mut().unwrap().pop();
    let corrupt = write(dir.path(), "bad.json", &v.to_string());
    let o = mguard(&["verify-strategy", s(&doc), s(&corrupt), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["result"], "counterexample");
    assert!(report["attack"].is_u64());

    let p5 = write(dir.path(), "p5.txt", "0 1\n1 2\n2 3\n3 4\n");
    assert_eq!(mguard(&["verify-strategy", s(&p5), s(&strat)]).status.code(), Some(2));
}

#[test]
fn analyze_can_emit_split_strategies() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", K14_2SPLIT);
    let strat = dir.path().join("s.json");
    assert_eq!(mguard(&["analyze", s(&g), "--strategy-out", s(&strat)]).status.code(), Some(0));
    assert_eq!(mguard(&["verify-strategy", s(&g), s(&strat)]).status.code(), Some(0));
}

#[test]
fn oracle_feasibility() {
    let dir = tempfile::tempdir().unwrap();
    let star = write(dir.path(), "star.txt", "0 1\n0 2\n0 3\n0 4\n");
    let o = mguard(&["oracle", s(&star), "--k", "2", "--json", "--winning-set"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["feasible"], true);
    assert!(v["configs"].as_array().unwrap().iter().all(|c| c[0] == 0));
    assert_eq!(mguard(&["oracle", s(&star), "--k", "1"]).status.code(), Some(1));
    assert_eq!(stdout(&mguard(&["oracle", s(&star), "--model", "one"])).trim(), "edn = 4");
}

#[test]
fn selftest_passes_and_is_deterministic() {
    let a = mguard(&["selftest", "--seed", "4"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = mguard(&["selftest", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_are_exit_2() {
    assert_eq!(mguard(&["reduce", "bogus", "x"]).status.code(), Some(2));
    assert_eq!(mguard(&["analyze", "/nonexistent/graph.json"]).status.code(), Some(2));
}
