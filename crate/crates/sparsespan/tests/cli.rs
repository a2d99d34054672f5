//! End-to-end command-line checks: every subcommand, round trips through
//! files, and the documented exit codes.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sparsespan"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("sparsespan-cli-{}-{name}", std::process::id()));
    p
}

#[test]
fn generate_verify_sparsify_roundtrip() {
    let graph_file = tmp("t.txt");
    let out_file = tmp("t_sparse.txt");
    let report_file = tmp("t_report.txt");

    let st = bin()
        .args(["generate", "--family", "random_tournament", "--params", "n=250,k=1"])
        .args(["--seed", "5", "-o", graph_file.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(st.success());

    let st = bin()
        .args(["verify", "--mode", "vertex", "-k", "1", "-i", graph_file.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(0));

    let st = bin()
        .args(["sparsify", "--mode", "vertex", "-k", "1"])
        .args(["-i", graph_file.to_str().unwrap()])
        .args(["-o", out_file.to_str().unwrap()])
        .args(["--report", report_file.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(0));

    let report = std::fs::read_to_string(&report_file).unwrap();
    assert!(report.contains("verified: true"));
    let st = bin()
        .args(["verify", "--mode", "vertex", "-k", "1", "-i", out_file.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(0));

    for f in [&graph_file, &out_file, &report_file] {
        let _ = std::fs::remove_file(f);
    }
}

#[test]
fn verify_false_exits_one() {
    let graph_file = tmp("dk.txt");
    bin()
        .args(["generate", "--family", "dk", "--params", "k=2,n=6"])
        .args(["-o", graph_file.to_str().unwrap()])
        .status()
        .unwrap();
    let st = bin()
        .args(["verify", "--mode", "vertex", "-k", "3", "-i", graph_file.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(1));
    let _ = std::fs::remove_file(&graph_file);
}

#[test]
fn input_errors_exit_two() {
    let st = bin()
        .args(["generate", "--family", "no_such_family", "-o", "/dev/null"])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(2));

    let st = bin()
        .args(["verify", "--mode", "vertex", "-k", "1", "-i", "/nonexistent/file"])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(2));
}

#[test]
fn minimal_and_hkd_commands() {
    let graph_file = tmp("g.txt");
    bin()
        .args(["generate", "--family", "g_family", "--params", "n1=3,n2=3,k=1,delta=1"])
        .args(["-o", graph_file.to_str().unwrap()])
        .status()
        .unwrap();

    let out = bin()
        .args(["hkd", "-k", "1", "-i", graph_file.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "h: 9");

    let out = bin()
        .args(["minimal", "--mode", "vertex", "-k", "1", "-i", graph_file.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("minimal_edges:"));
    let _ = std::fs::remove_file(&graph_file);
}

#[test]
fn bench_runs_suite() {
    let suite_file = tmp("suite.txt");
    let csv_file = tmp("bench.csv");
    std::fs::write(
        &suite_file,
        "family=random_tournament n=250 k=1 seed=1 mode=vertex\n\
         family=doubled_tree n=20 k=2 seed=3 mode=arc\n",
    )
    .unwrap();
    let st = bin()
        .args(["bench", "--suite", suite_file.to_str().unwrap()])
        .args(["--jobs", "2", "--csv", csv_file.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(0));
    let csv = std::fs::read_to_string(&csv_file).unwrap();
    assert_eq!(csv.lines().count(), 3); // header + two rows
    assert!(csv.lines().nth(1).unwrap().contains("full-pipeline"));
    assert!(csv.lines().nth(2).unwrap().contains("minimal-fallback"));
    for f in [&suite_file, &csv_file] {
        let _ = std::fs::remove_file(f);
    }
}
