use std::path::PathBuf;
use std::process::{Command, Output};

fn urysohn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_urysohn")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_reports_size_or_violation() {
    let ok = urysohn(&["validate", &fixture("star.metric")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "ok: 5 points\n");
    let bad = urysohn(&["validate", &fixture("bad_triangle.metric")]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(stderr(&bad), "error: metric: triangle inequality fails: d(a, c) > d(a, b) + d(b, c)\n");
    let missing = urysohn(&["validate", "/nonexistent/x.metric"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn dist_and_ext_round_trip() {
    let out = urysohn(&["dist", "(0)", "(1, 3/2^1, 0, 1)"]);
    assert_eq!(stdout(&out).trim(), "3/2^1");
    let ext = urysohn(&["ext", "(0)", "1/2^1"]);
    assert_eq!(ext.status.code(), Some(0));
    let p = stdout(&ext).trim().to_string();
    assert_eq!(stdout(&urysohn(&["dist", &p, "(0)"])).trim(), "1/2^1");
}

#[test]
fn bad_input_is_a_usage_error() {
    let o = urysohn(&["dist", "(0", "(0)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: "));
    let o = urysohn(&["ext", "(0)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = urysohn(&["approx", "homotopy", "--t", "3/2^1", "(0)", "(0)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn inadmissible_constraints_fail_validation() {
    let far = stdout(&urysohn(&["ext", "(0)", "2"])).trim().to_string();
    let o = urysohn(&["ext", "(0)", "1/2^2", &far, "1/2^2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn axioms_flag_the_broken_instance() {
    assert_eq!(urysohn(&["axioms", "--budget", "50"]).status.code(), Some(0));
    assert_eq!(urysohn(&["axioms", "--instance", "broken", "--budget", "50"]).status.code(), Some(1));
}

#[test]
fn backforth_and_diverge_verify() {
    let o = urysohn(&["backforth", "--rounds", "3", "--block", "1"]);
    assert!(stdout(&o).contains("identity"), "{}", stdout(&o));
    let o = urysohn(&["diverge", "--upto", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified"));
}
