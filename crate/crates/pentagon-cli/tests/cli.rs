//! Exit-code and wire-format contract for the `pentagon` binary.
//!
//! 0 = pair / success, 1 = I/O or parse failure, 2 = precondition violated,
//! 3 = induced C5 certificate.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pentagon"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("pentagon-cli-test-{}-{name}", std::process::id()));
    p
}

fn write_fixture(name: &str, content: &str) -> PathBuf {
    let path = tmp(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

const PETERSEN_JSON: &str = r#"{"n":10,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0],[0,5],[1,6],[2,7],[3,8],[4,9],[5,7],[7,9],[9,6],[6,8],[8,5]]}"#;

#[test]
fn dichotomy_pair_exits_zero_with_schema() {
    let input = write_fixture("edgeless16.dimacs", "p edge 16 0\n");
    let out = run(&[
        "dichotomy",
        "--input",
        input.to_str().unwrap(),
        "--c",
        "1/2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "pair");
    assert_eq!(v["branch"], "W-N0");
    assert_eq!(v["A"].as_array().unwrap().len(), 8);
    assert_eq!(v["density"]["num"], 0);
}

#[test]
fn dichotomy_c5_exits_three() {
    // generate the C5-rich fixture through the binary itself
    let graph_path = tmp("dense2048.dimacs");
    let gen = run(&[
        "gen",
        "--family",
        "gnp",
        "--n",
        "2048",
        "--p",
        "1/32",
        "--seed",
        "0",
        "--out",
        graph_path.to_str().unwrap(),
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let out = run(&[
        "dichotomy",
        "--input",
        graph_path.to_str().unwrap(),
        "--c",
        "1/64",
    ]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "c5");
    assert_eq!(v["cycle"].as_array().unwrap().len(), 5);
}

#[test]
fn dichotomy_precondition_exits_two_and_names_the_vertex() {
    let input = write_fixture(
        "k5.dimacs",
        "p edge 5 10\ne 1 2\ne 1 3\ne 1 4\ne 1 5\ne 2 3\ne 2 4\ne 2 5\ne 3 4\ne 3 5\ne 4 5\n",
    );
    let out = run(&[
        "dichotomy",
        "--input",
        input.to_str().unwrap(),
        "--c",
        "1/2",
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(
        msg.contains("vertex 0") && msg.contains("closed degree 5") && msg.contains("5/16"),
        "message should name the offending vertex: {msg}"
    );
}

#[test]
fn parse_failure_exits_one() {
    let input = write_fixture("garbage.dimacs", "this is not dimacs\n");
    let out = run(&[
        "dichotomy",
        "--input",
        input.to_str().unwrap(),
        "--c",
        "1/2",
    ]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");

    let missing = tmp("does-not-exist.dimacs");
    let out = run(&[
        "dichotomy",
        "--input",
        missing.to_str().unwrap(),
        "--c",
        "1/2",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pipeline_petersen_both_paths() {
    let input = write_fixture("petersen.json", PETERSEN_JSON);
    // default: valid report, exit 0
    let out = run(&[
        "pipeline",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "json",
        "--verify-level",
        "full",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // Petersen contains C5s, so the full input scan must flag the report
    assert_eq!(v["verified"], false);
    assert!(v["s_size"].as_u64().unwrap() >= 2);

    // no-trivial-branch: certificate, exit 3
    let out = run(&[
        "pipeline",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "json",
        "--no-trivial-branch",
    ]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "c5");
}

#[test]
fn pipeline_k64_reports_the_clique() {
    let mut text = String::from("p edge 64 2016\n");
    for u in 1..=64 {
        for v in (u + 1)..=64 {
            text.push_str(&format!("e {u} {v}\n"));
        }
    }
    let input = write_fixture("k64.dimacs", &text);
    let out = run(&[
        "pipeline",
        "--input",
        input.to_str().unwrap(),
        "--verify-level",
        "full",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["omega"], 64);
    assert_eq!(v["s_size"], 64);
    assert_eq!(v["verified"], true);
}

#[test]
fn pipeline_chordal_fixture_verifies() {
    let graph_path = tmp("chordal500.dimacs");
    let gen = run(&[
        "gen",
        "--family",
        "chordal",
        "--n",
        "500",
        "--degree-cap",
        "16",
        "--seed",
        "42",
        "--out",
        graph_path.to_str().unwrap(),
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let out = run(&[
        "pipeline",
        "--input",
        graph_path.to_str().unwrap(),
        "--verify-level",
        "full",
        "--trace",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines().collect::<Vec<_>>();
    let report: serde_json::Value = serde_json::from_str(lines.pop().unwrap()).unwrap();
    assert_eq!(report["verified"], true);
    // --trace streamed at least one node line before the report
    assert!(!lines.is_empty());
    let node: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert!(node["n_local"].is_number());
}

#[test]
fn gen_is_deterministic_across_processes() {
    let a = run(&[
        "gen", "--family", "split", "--n", "100", "--p", "1/8", "--seed", "5",
    ]);
    let b = run(&[
        "gen", "--family", "split", "--n", "100", "--p", "1/8", "--seed", "5",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn experiment_csv_is_deterministic_and_rechecks() {
    let out1 = tmp("exp1.csv");
    let out2 = tmp("exp2.csv");
    let run1 = run(&[
        "experiment",
        "soundness",
        "--seed",
        "11",
        "--trials",
        "25",
        "--out",
        out1.to_str().unwrap(),
        "--recheck",
    ]);
    assert_eq!(run1.status.code(), Some(0), "{run1:?}");
    let run2 = run(&[
        "experiment",
        "soundness",
        "--seed",
        "11",
        "--trials",
        "25",
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert_eq!(run2.status.code(), Some(0));
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b, "same command line and seed must give identical bytes");
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("experiment,family,n,seed,c,outcome,branch"));
    assert_eq!(text.lines().count(), 26); // header + 25 rows
    assert!(String::from_utf8_lossy(&run1.stderr).contains("recheck: 25 rows"));
}

#[test]
fn experiment_respects_thread_bound() {
    let out = tmp("exp-threads.csv");
    let run1 = bin()
        .args([
            "experiment",
            "delta",
            "--trials",
            "1",
            "--out",
            out.to_str().unwrap(),
        ])
        .env("PENTAGON_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(run1.status.code(), Some(0), "{run1:?}");
}
