use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    p.to_str().unwrap().to_string()
}

fn apw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apw")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_c3_passes_and_is_not_tight() {
    let o = apw(&["check", &fixture("c3.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("PASS  Ap5'"));
    assert!(s.contains("prop  Ap4 = false  witness (a,b)"));
}

#[test]
fn classify_sl3_tau() {
    let o = apw(&["classify", "--relation", "tau", "--format", "machine", &fixture("sl3.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let props = v["properties"].as_array().unwrap();
    let get = |name: &str| props.iter().find(|p| p["name"] == name).unwrap().clone();
    assert_eq!(get("complement_positive")["value"], true);
    assert_eq!(get("constructive_cm")["value"], false);
    assert_eq!(get("constructive_cm")["witness"], "(a,b,a)");
}

#[test]
fn broken_axiom_exits_one() {
    let o = apw(&["check", &fixture("broken_ap1.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  Ap1  witness (a,a)"));
}

#[test]
fn quotient_output_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.json");
    let o = apw(&["quotient", "--kappa", "kappa", "--out", out.to_str().unwrap(), &fixture("c3.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = apw(&["check", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("data  elements: 2"));
}

#[test]
fn cayley_output_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = apw(&["cayley", "--out", out.to_str().unwrap(), &fixture("sl3.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(apw(&["check", out.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn isomorphism_with_mapping() {
    let o = apw(&["isomorphism", "--map", &fixture("sl3_to_2.json"), &fixture("sl3.json")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn report_goes_to_out_for_plain_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.txt");
    let o = apw(&["check", "--out", out.to_str().unwrap(), &fixture("c3.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(out).unwrap().contains("result: ok"));
}

#[test]
fn verify_is_deterministic() {
    let runs: Vec<Output> = [["1"], ["3"], ["3"]]
        .iter()
        .map(|w| apw(&["verify", "--max-size", "2", "--format", "machine", "--workers", w[0]]))
        .collect();
    for r in &runs {
        assert_eq!(r.status.code(), Some(0));
    }
    assert_eq!(runs[0].stdout, runs[1].stdout);
    assert_eq!(runs[1].stdout, runs[2].stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(apw(&["bogus"]).status.code(), Some(2));
    assert_eq!(apw(&["classify", "--map", "x", &fixture("c3.json")]).status.code(), Some(2));
    assert_eq!(apw(&["check", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(apw(&["classify", "--relation", "nope", &fixture("c3.json")]).status.code(), Some(2));
}
