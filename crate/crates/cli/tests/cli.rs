use std::process::{Command, Output};

use serde_json::Value;

fn ncforms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncforms")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn weyl_normal_form() {
    let o = ncforms(&["normalize", "--algebra", "weyl", "--n", "1", "p1*q1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "q1*p1 + h");
}

#[test]
fn differential_and_parse_identities() {
    let o = ncforms(&["d", "--algebra", "weyl", "--n", "1", "d(p1*q1) + p1*q1"]);
    assert_eq!(stdout(&o), "dp1*q1 + dq1*p1");
    let a = ncforms(&["normalize", "--n", "2", "x1*x1 + y2"]);
    let b = ncforms(&["normalize", "--n", "2", "x1^2 + dx2"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn primitive_round_trips_in_q_space() {
    let q = data("Q.json");
    let o = ncforms(&["--json", "primitive", "--algebra", "q", "--n", "2", "--Q", &q, "dx1*x2 + q*dx2*x1"]);
    let v = json(&o);
    assert_eq!(v["ok"], Value::Bool(true));
    assert_eq!(v["result"], "x1*x2");
    assert_eq!(v["remainder"], "0");

    let o = ncforms(&["--json", "primitive", "--algebra", "q", "--n", "2", "--Q", &q, "dx1*x2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["ok"], Value::Bool(false));
}

#[test]
fn qspace_subcommands() {
    let q = data("Q.json");
    let o = ncforms(&["qspace", "--n", "2", "--Q", &q, "partial", "2", "x1*x2"]);
    assert_eq!(stdout(&o), "q*x1");
    let o = ncforms(&["qspace", "--n", "2", "--Q", &q, "d", "x1*x2"]);
    assert_eq!(stdout(&o), "q*y2*x1 + y1*x2");
    let o = ncforms(&["qspace", "--n", "2", "--Q", &q, "partial", "3", "x1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ncforms(&["qspace", "--n", "2", "--Q", &data("Qz2.json"), "primitive", "y1@1*x2@0 + r*y2@0*x1@1"]);
    assert_eq!(stdout(&o), "r*x2@0*x1@1\nremainder: 0");
}

#[test]
fn contraction_and_partials() {
    let o = ncforms(&["contract", "--n", "1", "--field", "x1^2", "y1"]);
    assert_eq!(stdout(&o), "x1^2");
    let o = ncforms(&["partial", "--algebra", "weyl", "--n", "1", "--var", "q1", "p1*q1"]);
    assert_eq!(stdout(&o), "p1");
}

#[test]
fn complex_commands() {
    let o = ncforms(&["--json", "complex", "audit", "gl2-left"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["ok"], Value::Bool(true));
    let o = ncforms(&["complex", "discrete-d", "x^2"]);
    assert_eq!(stdout(&o), "2*dx*x + dx");
    let o = ncforms(&["complex", "discrete-primitive", "--variant", "forward", "dy*x + dx*y"]);
    assert_eq!(stdout(&o), "y*x");
    let o = ncforms(&["complex", "build", "aff1"]);
    let p: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(p["name"], "aff1");
}

#[test]
fn verify_passes_with_fixed_seed() {
    let o = ncforms(&["verify", "--suite", "cartan", "--seed", "7", "--cases", "50", "--max-deg", "4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_output_is_deterministic() {
    let args = ["--json", "verify", "--suite", "qspace", "--seed", "3", "--cases", "20"];
    let a = ncforms(&args);
    let b = ncforms(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["ok"], Value::Bool(true));
}

#[test]
fn broken_presentation_yields_minimal_counterexample() {
    let o = ncforms(&["--json", "verify", "--suite", "confluence", "--system", &data("nonconfluent.json")]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["ok"], Value::Bool(false));
    assert_eq!(v["counterexample"]["input"], "y^2*x");
    let o = ncforms(&["--json", "complex", "audit", "--system", &data("nonconfluent.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["counterexample"]["input"], "y^2*x");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ncforms(&["normalize", "--algebra", "weyl", "p1*"]).status.code(), Some(2));
    assert_eq!(ncforms(&["normalize", "--algebra", "nope", "x1"]).status.code(), Some(2));
    assert_eq!(ncforms(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(ncforms(&["frobnicate"]).status.code(), Some(2));
}
