//! End-to-end tests against the built binary: exit codes, output shapes,
//! canonical JSON, and job-count determinism.

use std::process::{Command, Output};

fn eigenone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigenone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn lemmas_small_bound_passes() {
    let out = eigenone(&["lemmas", "--max-m", "9"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("all identities hold"));
}

#[test]
fn lemmas_rejects_even_bound() {
    let out = eigenone(&["lemmas", "--max-m", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lemmas_json_round_trips() {
    let out = eigenone(&["lemmas", "--max-m", "9", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let parsed: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(serde_json::to_string(&parsed).unwrap(), text.trim());
    assert_eq!(parsed["report_version"], 1);
    assert_eq!(parsed["ok"], true);
}

#[test]
fn spectrum_third_exterior_power() {
    let out = eigenone(&["spectrum", "-e", "a:6:phi(9)", "-w", "fund:3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("mod 9: {1,2,3,4,5,6,7,8}"), "got: {text}");
    assert!(text.contains("has_one=false"));
}

#[test]
fn spectrum_spin_case_label() {
    let out = eigenone(&["spectrum", "-e", "b:11:phi(5)+phi(9)+1", "-w", "spin"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("spin_case=Case3(9)"));
}

#[test]
fn spectrum_refuses_char2_top_weight_with_hint() {
    let out = eigenone(&["spectrum", "-e", "c:10:phi(5)+phi(9)", "-w", "fund:5", "-p", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("si-delta"));
}

#[test]
fn spectrum_criterion_si_delta() {
    let out = eigenone(&[
        "spectrum", "-e", "c:10:phi(5)+phi(9)", "-w", "fund:5", "-p", "2", "--criterion", "si-delta",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("si=2 delta=0 eig1_absent=true"));
}

#[test]
fn spectrum_rejects_bad_element() {
    let out = eigenone(&["spectrum", "-e", "a:6:phi(5)", "-w", "fund:3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_small_window_passes() {
    let out = eigenone(&["classify", "--theorem", "th1", "--ranks", "5..6", "--max-order", "9"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("result: ok"));
    assert!(text.contains("th1(2): 1"));
}

#[test]
fn classify_rejects_unknown_theorem_and_bad_ranks() {
    let out = eigenone(&["classify", "--theorem", "th99"]);
    assert_eq!(out.status.code(), Some(2));
    let out = eigenone(&["classify", "--theorem", "th1", "--ranks", "six..7"]);
    assert_eq!(out.status.code(), Some(2));
    let out = eigenone(&["classify", "--theorem", "th1", "--max-order", "44"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_json_is_canonical_and_job_invariant() {
    let args = ["classify", "--theorem", "th3-spin", "--ranks", "3..5", "--format", "json"];
    let one = eigenone(&args.iter().chain(&["--jobs", "1"]).copied().collect::<Vec<_>>());
    let four = eigenone(&args.iter().chain(&["--jobs", "4"]).copied().collect::<Vec<_>>());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));

    let text = stdout(&one);
    let parsed: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(serde_json::to_string(&parsed).unwrap(), text.trim());
    assert_eq!(parsed["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn classify_char2_table_regeneration() {
    let out = eigenone(&["classify", "--theorem", "th2-char2-spin", "--ranks", "2..5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("th2(D)(1) m=3"));
    assert!(text.contains("result: ok"));
}
