use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinhecke")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn normalize_commutation() {
    let o = run(&["normalize", "--algebra", "dahca", "--n", "2", "--expr", "y1*x1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x1*y1 - u*s12 - u*s12*c1*c2");
}

#[test]
fn json_report_shape() {
    let o = run(&["--format", "json", "center-check", "--algebra", "sdaha", "--n", "2", "--expr", "xi1^2 + xi2^2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "spinhecke-report/1");
    assert_eq!(v["command"], "center-check");
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["status"] == "pass"));
}

#[test]
fn failing_check_exits_one() {
    let o = run(&["center-check", "--algebra", "sdaha", "--n", "2", "--expr", "t1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn bad_input_exits_two() {
    let o = run(&["normalize", "--algebra", "dahca", "--n", "2", "--expr", "y1 *"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["normalize", "--algebra", "nosuch", "--n", "2", "--expr", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["normalize", "--algebra", "dahca", "--n", "2", "--expr", "x3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "verify-relations", "--algebra", "trigdahca", "--n", "2", "--trials", "30", "--seed", "7"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["--format", "json", "map", "--name", "Psi", "--n", "2", "--expr", "xi1*y2 + t1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn morphism_and_module_commands() {
    let o = run(&["verify-morphisms", "--name", "PhiTr", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify-modules", "--algebra", "sdaha", "--n", "2", "--degree-bound", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["map", "--name", "Phi", "--n", "2", "--expr", "x1"]);
    assert_eq!(stdout(&o).trim(), "w*c1*xi1");
    let o = run(&["cocycle-table", "--n", "3"]);
    assert_eq!(stdout(&o).lines().count(), 36);
}

#[test]
fn specialized_u() {
    let o = run(&["normalize", "--algebra", "dahca", "--n", "2", "--u", "0", "--expr", "y1*x1"]);
    assert_eq!(stdout(&o).trim(), "x1*y1");
}
