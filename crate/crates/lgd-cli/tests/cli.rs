//! End-to-end checks against the real binary: golden output, determinism,
//! and the exit-code contract.

use std::process::{Command, Output};

fn lgd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgd"))
        .args(args)
        .env_remove("LGD_THREADS")
        .output()
        .expect("binary runs")
}

#[test]
fn table_matches_committed_golden_file() {
    let out = lgd(&["table", "--p-max", "23", "--format", "json", "--no-meta"]);
    assert!(out.status.success());
    let golden = include_bytes!("golden/table_pmax23.json");
    assert_eq!(
        out.stdout,
        golden,
        "table output drifted from the golden file:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn repeated_runs_are_byte_identical_without_meta() {
    let a = lgd(&["min-degree", "--p", "13", "--no-meta"]);
    let b = lgd(&["min-degree", "--p", "13", "--no-meta"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_inert_exit_zero_on_pass() {
    let out = lgd(&["verify", "inert", "--p", "3", "--budget", "0"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "lgd/1");
    assert_eq!(v["all_passed"], true);
}

#[test]
fn usage_errors_exit_two_and_print_to_stderr() {
    for args in [
        vec!["nonsense"],
        vec!["table", "--frobnicate"],
        vec!["verify", "unknown-lemma", "--p", "3"],
        vec!["class-number"],
        vec!["h1star", "--p", "4"],
    ] {
        let out = lgd(&args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
        assert!(
            out.stdout.is_empty(),
            "usage errors keep stdout clean: {args:?}"
        );
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn gonality_text_output() {
    let out = lgd(&["gonality", "--p", "13", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("fails"), "{text}");
}

#[test]
fn lgd_threads_env_does_not_change_output() {
    let one = Command::new(env!("CARGO_BIN_EXE_lgd"))
        .args(["verify", "reduce-to-c", "--p", "3", "--n", "1", "--no-meta"])
        .env("LGD_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_lgd"))
        .args(["verify", "reduce-to-c", "--p", "3", "--n", "1", "--no-meta"])
        .env("LGD_THREADS", "8")
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}
