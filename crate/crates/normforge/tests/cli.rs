//! End-to-end tests of the command-line binary: argument handling, report
//! formats, exit codes, environment fallback, and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_normforge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("NORMFORGE_SEED").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("normforge-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn list_prints_the_full_registry() {
    let out = run(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("thm_2_5 proven all_norms"));
    assert!(text.contains("conj_4 conjecture"));
    assert!(text.contains("ex_2_8 counterexample_demo op_norm"));
    assert_eq!(text.lines().count(), 35);
}

#[test]
fn demo_reports_the_violation_and_exits_zero() {
    let out = run(&["demo"]);
    assert!(out.status.success(), "demo must exit 0");
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["record"], "header");
    assert_eq!(header["command"], "demo");
    let check: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(check["record"], "check");
    assert_eq!(check["verdict"], "violated");
    let violation: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(violation["record"], "VIOLATION");
    assert_eq!(violation["statement"], "ex_2_8");
}

#[test]
fn verify_on_a_proven_statement_holds_everywhere_and_exits_zero() {
    let out = run(&["verify", "--statement", "thm_1_1b", "--trials", "1000", "--seed", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut checks = 0;
    for line in text.lines() {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        match value["record"].as_str().unwrap() {
            "header" => {
                assert_eq!(value["seed"], 7);
                assert_eq!(value["trials"], 1000);
            }
            "check" => {
                checks += 1;
                assert_eq!(value["verdict"], "holds", "trial {}", value["trial"]);
            }
            other => panic!("unexpected record {other}"),
        }
    }
    assert_eq!(checks, 1000);
}

#[test]
fn verify_on_the_demo_statement_reports_violated_but_exits_zero() {
    let out = run(&["verify", "--statement", "ex_2_8", "--trials", "1", "--seed", "0"]);
    assert!(out.status.success(), "counterexample demo violation is not an error");
    let text = stdout(&out);
    assert!(text.lines().count() >= 3, "expected header + check + VIOLATION");
    assert!(text.contains("\"record\":\"VIOLATION\""));
}

#[test]
fn bad_selector_and_unwritable_path_exit_one() {
    let out = run(&["verify", "--statement", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("nonsense"), "stderr: {err}");

    let out = run(&[
        "verify", "--statement", "eq_1", "--trials", "1",
        "--out", "/nonexistent-normforge-dir/report.jsonl",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn hunting_a_proven_statement_requires_self_test() {
    let out = run(&["hunt", "--statement", "thm_1_1b", "--restarts", "1", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("self-test"), "stderr: {err}");

    let out = run(&[
        "hunt", "--statement", "thm_1_1b", "--restarts", "1", "--steps", "1", "--self-test",
        "--seed", "3",
    ]);
    assert!(out.status.success());
}

#[test]
fn hunt_writes_a_deterministic_report() {
    let path_a = temp_path("hunt-a.json");
    let path_b = temp_path("hunt-b.json");
    let args = |path: &PathBuf| {
        vec![
            "hunt".to_string(),
            "--statement".into(), "q4".into(),
            "--dims".into(), "2..6".into(),
            "--restarts".into(), "5".into(),
            "--steps".into(), "25".into(),
            "--seed".into(), "11".into(),
            "--out".into(), path.display().to_string(),
        ]
    };
    let out = bin().args(args(&path_a)).output().unwrap();
    assert!(out.status.success());
    let out = bin().args(args(&path_b)).output().unwrap();
    assert!(out.status.success());
    let a = std::fs::read(&path_a).unwrap();
    let b = std::fs::read(&path_b).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "repeated hunts with one config must write identical bytes");
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["config"]["statement"], "q4");
    assert_eq!(report["wall_clock_ms"], 0, "persisted reports normalize the wall clock");
    std::fs::remove_file(path_a).ok();
    std::fs::remove_file(path_b).ok();
}

#[test]
fn seed_env_var_is_a_fallback_and_the_flag_wins() {
    let from_env = bin()
        .args(["verify", "--statement", "eq_1", "--trials", "1"])
        .env("NORMFORGE_SEED", "5150")
        .output()
        .unwrap();
    let header: serde_json::Value =
        serde_json::from_str(stdout(&from_env).lines().next().unwrap()).unwrap();
    assert_eq!(header["seed"], 5150);

    let flag_wins = bin()
        .args(["verify", "--statement", "eq_1", "--trials", "1", "--seed", "6"])
        .env("NORMFORGE_SEED", "5150")
        .output()
        .unwrap();
    let header: serde_json::Value =
        serde_json::from_str(stdout(&flag_wins).lines().next().unwrap()).unwrap();
    assert_eq!(header["seed"], 6);

    let invalid_env = bin()
        .args(["verify", "--statement", "eq_1", "--trials", "1"])
        .env("NORMFORGE_SEED", "not-a-seed")
        .output()
        .unwrap();
    assert_eq!(invalid_env.status.code(), Some(1));
}

#[test]
fn out_file_matches_stdout_and_csv_has_the_stable_schema() {
    let args = ["verify", "--statement", "cor_2_6", "--trials", "9", "--dims", "2..3", "--seed", "4"];
    let to_stdout = run(&args);
    assert!(to_stdout.status.success());

    let path = temp_path("verify.jsonl");
    let out = bin().args(args).arg("--out").arg(&path).env_remove("NORMFORGE_SEED").output().unwrap();
    assert!(out.status.success());
    let file_body = std::fs::read_to_string(&path).unwrap();

    // Where the report lives must not change what it says: the file and the
    // stdout stream carry identical bytes.
    assert_eq!(stdout(&to_stdout), file_body);

    let csv = std::fs::read_to_string(path.with_extension("csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "statement_id,trial,dim,function,margin,verdict");
    assert_eq!(lines.count(), 9);
    std::fs::remove_file(&path).ok();
    std::fs::remove_file(path.with_extension("csv")).ok();
}

#[test]
fn rerunning_a_report_header_reproduces_the_body() {
    // The header record carries the complete configuration; feeding it back
    // as flags must reproduce every following byte.
    let first = run(&["verify", "--statement", "conj_2", "--trials", "7", "--dims", "1..4", "--seed", "21"]);
    assert!(first.status.success());
    let text = stdout(&first);
    let header: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();

    let dims = format!(
        "{}..{}",
        header["dims"][0].as_u64().unwrap(),
        header["dims"][1].as_u64().unwrap()
    );
    let second = run(&[
        "verify",
        "--statement", header["statement"].as_str().unwrap(),
        "--trials", &header["trials"].as_u64().unwrap().to_string(),
        "--dims", &dims,
        "--seed", &header["seed"].as_u64().unwrap().to_string(),
    ]);
    assert_eq!(text, stdout(&second));
}

#[test]
fn worker_count_never_changes_output_bytes() {
    let base = [
        "verify", "--statement", "all", "--trials", "6", "--dims", "1..5", "--seed", "99",
    ];
    let one = bin().args(base).args(["--workers", "1"]).env_remove("NORMFORGE_SEED").output().unwrap();
    let eight = bin().args(base).args(["--workers", "8"]).env_remove("NORMFORGE_SEED").output().unwrap();
    assert!(one.status.success() && eight.status.success());
    assert_eq!(stdout(&one), stdout(&eight), "worker count leaked into report bytes");
    let checks = stdout(&one).lines().filter(|l| l.contains("\"record\":\"check\"")).count();
    assert_eq!(checks, 35 * 6, "one check record per statement per trial");
}
