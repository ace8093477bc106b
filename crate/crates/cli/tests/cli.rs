use std::io::Write;
use std::process::{Command, Output, Stdio};

use essx_cli::corpus::{case, generated_cases, CASES};
use essx_cli::report::replay_witness;
use essx_cli::{parse_document, run_command, RunOptions};
use serde_json::Value;

fn essx(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_essx"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn text(name: &str) -> &'static str {
    case(name).unwrap().text
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn worked_example_from_stdin() {
    let o = essx(&["e-cohomology", "--json"], text("worked_example"));
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    let inv: Vec<Value> = v["result"]["degrees"].as_array().unwrap().iter().map(|d| d["module"]["invariants"].clone()).collect();
    assert_eq!(inv, vec![serde_json::json!([4]), serde_json::json!([8]), serde_json::json!([])]);
    assert!(v.get("elapsed").is_none());
}

#[test]
fn range_flag_overrides_task() {
    let o = essx(&["e-cohomology", "--json", "--range", "-1..1"], text("worked_example"));
    let degrees: Vec<i64> = json_out(&o)["result"]["degrees"].as_array().unwrap().iter().map(|d| d["degree"].as_i64().unwrap()).collect();
    assert_eq!(degrees, vec![-1, 0, 1]);
}

#[test]
fn input_file_and_human_output() {
    let dir = std::env::temp_dir().join(format!("essx-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("e.json");
    std::fs::write(&path, text("essential_2z")).unwrap();
    let o = essx(&["essential", "--input", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.starts_with("essential: essential [true]"), "{out}");
    assert!(out.contains("ambient: Z"));
}

#[test]
fn exit_statuses() {
    assert_eq!(essx(&["check-morphism"], text("not_morphism")).status.code(), Some(1));
    assert_eq!(essx(&["e-split"], text("e_split_doubling")).status.code(), Some(1));
    let o = essx(&["check-morphism"], text("bad_shape"));
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("validation error at 4:"), "{err}");
    assert_eq!(essx(&["frobnicate"], "{}").status.code(), Some(2));
    assert_eq!(essx(&["snf", "--range", "3"], "{}").status.code(), Some(2));
    let o = essx(&["canon"], text("syntax_error"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("parse error at 3:"));
}

#[test]
fn r_cap_flag_starves_search() {
    assert_eq!(essx(&["extend"], text("extend_z2_z8")).status.code(), Some(0));
    assert_eq!(essx(&["extend", "--r-cap", "1"], text("extend_z2_z8")).status.code(), Some(1));
}

#[test]
fn verbose_adds_presentations() {
    let plain = json_out(&essx(&["canon", "--json"], text("snf_big")));
    let verbose = json_out(&essx(&["canon", "--json", "--verbose"], text("snf_big")));
    assert!(plain["result"]["module"].get("presentation").is_none());
    assert_eq!(verbose["result"]["module"]["presentation"]["generators"], 2);
}

#[test]
fn reports_are_deterministic() {
    let a = essx(&["probe-einjective", "--json", "--seed", "5"], text("probe_z"));
    let b = essx(&["probe-einjective", "--json", "--seed", "5"], text("probe_z"));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_out(&a)["seed"], 5);
}

#[test]
fn unit_ideal_warns() {
    let o = essx(&["gamma", "--json"], text("unit_ideal"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["warnings"].as_array().unwrap().len(), 1);
    assert!(String::from_utf8(o.stderr).unwrap().contains("warning"));
}

#[test]
fn every_emitted_witness_replays() {
    let mut docs: Vec<_> = CASES.iter().filter_map(|c| parse_document(c.text).ok().map(|d| (d, c.verb))).collect();
    docs.extend(generated_cases(11).into_iter().map(|(_, d, v, _)| (d, v)));
    let mut seen = 0;
    for (doc, verb) in &docs {
        if let Ok(r) = run_command(verb, doc, &RunOptions::default()) {
            let v = r.to_json();
            for w in v["witnesses"].as_array().unwrap() {
                assert_eq!(replay_witness(w), Ok(true), "{verb}: {w}");
                seen += 1;
            }
        }
    }
    assert!(seen > 20, "only {seen} witnesses");
}

#[test]
fn tampered_witness_is_rejected() {
    let doc = parse_document(text("extend_z2_z8")).unwrap();
    let r = run_command("extend", &doc, &RunOptions::default()).unwrap();
    let mut w = r.witnesses[0].clone();
    assert_eq!(replay_witness(&w), Ok(true));
    w["r"] = serde_json::json!(1);
    assert_eq!(replay_witness(&w), Ok(false));
}

#[test]
fn verify_corpus_starved() {
    let o = essx(&["verify-corpus", "--r-cap", "1"], "");
    assert_eq!(o.status.code(), Some(1));
    let out = String::from_utf8(o.stdout).unwrap();
    assert_eq!(out.lines().filter(|l| l.starts_with("[FAIL]")).count(), 2, "{out}");
}
