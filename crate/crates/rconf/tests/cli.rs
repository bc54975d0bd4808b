use std::io::Write;
use std::process::{Command, Output, Stdio};

use rconf::commands::{rb3_input, PresentInput, TraceJson};
use rconf::report::ReproReport;
use serde_json::Value;

fn rconf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rconf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn trace_builtin_json() {
    let o = rconf(&["trace", "--builtin", "gamma3"]);
    assert_eq!(o.status.code(), Some(0));
    let t: TraceJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.word, ["x1", "x2", "x1"]);
    assert_eq!(t.permutation, [3, 2, 1]);
    assert!(t.min_separation > 0.0 && t.steps > 0);
}

#[test]
fn trace_loop_file() {
    let dir = std::env::temp_dir().join(format!("rconf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("beta.loop");
    let text = rconf_core::loops::print(&rconf_core::loops::builtin("beta3").unwrap());
    std::fs::write(&path, text).unwrap();
    let o = rconf(&["trace", "--loop", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(o.status.code(), Some(0));
    let t: TraceJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.permutation, [2, 1, 3]);
}

#[test]
fn only_runs_one_check() {
    let o = rconf(&["--json", "reproduce", "--only", "trace.gamma3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = ReproReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.checks.len(), 1);
    assert_eq!(r.checks[0].name, "trace.gamma3");
    assert!(r.all_pass());
}

#[test]
fn report_round_trips() {
    let o = rconf(&["--json", "reproduce", "--only", "sij", "--timings"]);
    let text = stdout(&o);
    let r = ReproReport::from_json(&text).unwrap();
    assert_eq!(r.checks.len(), 3);
    assert!(r.checks.iter().all(|c| c.elapsed_ms.is_some() && !c.anchor.is_empty()));
    assert_eq!(r.to_json().trim_end(), text.trim_end());
    assert_eq!(ReproReport::from_json(&r.to_json()).unwrap(), r);
}

#[test]
fn reports_are_deterministic() {
    let args = ["--json", "--seed", "7", "reproduce", "--only", "prop.membership"];
    let a = rconf(&args);
    let b = rconf(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = ReproReport::from_json(&stdout(&a)).unwrap();
    assert_eq!(r.seed, 7);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(rconf(&["bogus"]).status.code(), Some(2));
    assert_eq!(rconf(&["trace", "--builtin", "nope"]).status.code(), Some(2));
    assert_eq!(rconf(&["reproduce", "--only", "nothing.here"]).status.code(), Some(2));
    assert_eq!(rconf(&["member", "[1, 2"]).status.code(), Some(2));
    assert_eq!(rconf(&["sij", "--m", "3"]).status.code(), Some(2));
}

#[test]
fn computation_errors_exit_one() {
    assert_eq!(rconf(&["realfib", "counterexample", "--degree", "3"]).status.code(), Some(1));
}

#[test]
fn member_verdicts() {
    let o = rconf(&["--json", "member", "[0, -3, 0, 1]"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["in_rc"], true);
    let o = rconf(&["--json", "member", "[0, -300, 0, 4]"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["in_c"], true);
    assert_eq!(v["in_qc"], true);
    let o = rconf(&["--json", "member", "--points", "[0, 1, 1/2]"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["in_qf"], false);
    let o = rconf(&["member", "--points", "[0, 1, 5]"]);
    assert_eq!(stdout(&o).trim(), "in QF");
}

#[test]
fn sij_output() {
    let o = rconf(&["sij", "--m", "3", "--i", "1", "--j", "2"]);
    assert_eq!(stdout(&o).trim(), "S_1,2 = 2*z1 + 2*z2 - 4*z3");
    let o = rconf(&["--json", "sij", "--m", "4", "--all"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["polys"].as_array().unwrap().len(), 6);
}

#[test]
fn present_preset_and_input() {
    let o = rconf(&["present", "--preset", "rb3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 5);
    assert_eq!(v["relators"].as_array().unwrap().len(), 4);
    assert_eq!(v["index"], 6);
    assert_eq!(v["definitions"][1]["word"], "alpha gamma alpha^-1 beta^-1");
    let input = PresentInput { transversal: None, simplify: false, ..rb3_input() };
    let mut child = Command::new(env!("CARGO_BIN_EXE_rconf"))
        .args(["present", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(serde_json::to_string(&input).unwrap().as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 13);
    assert_eq!(v["trivial"], 5);
    assert_eq!(v["transversal"][0], "1");
}

#[test]
fn realfib_outputs() {
    let o = rconf(&["realfib", "minmax", "--poly", "[-3, 0, 3]"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exact"]["m"], "-2");
    assert_eq!(v["exact"]["M"], "2");
    let o = rconf(&["realfib", "ev0", "--poly", "[0, -3, 0, 1]"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ev0"], 0.5);
    let o = rconf(&["realfib", "counterexample", "--degree", "4"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["in_qc_real"], false);
    assert!(v["gap"].as_f64().unwrap() > std::f64::consts::PI.powi(3) / 4.0 - 0.01);
}
