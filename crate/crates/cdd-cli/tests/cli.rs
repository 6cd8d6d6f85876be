//! End-to-end tests of the `cdd` binary: flags, exit codes and output
//! formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn example5() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/example5.txt")
}

fn cdd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn solve_exact_sequence_single_machine() {
    let file = example5();
    let output = cdd(&[
        "solve",
        "--instance",
        file.to_str().unwrap(),
        "--h",
        "16/21",
        "--mode",
        "exact-sequence",
        "--sequence",
        "1,2,3,4,5",
        "--machines",
        "1",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("best total: 81"), "{text}");
    assert!(text.contains("machine 1: job 1 @ 11"), "{text}");
}

#[test]
fn solve_exact_sequence_two_machines() {
    let file = example5();
    let output = cdd(&[
        "solve",
        "--instance",
        file.to_str().unwrap(),
        "--h",
        "32/21",
        "--mode",
        "exact-sequence",
        "--sequence",
        "1,2,3,4,5",
        "--machines",
        "2",
    ]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("best total: 32"));
}

#[test]
fn bad_flag_exits_2_with_usage() {
    let output = cdd(&["solve", "--no-such-flag"]);
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(err.to_lowercase().contains("usage"), "{err}");
}

#[test]
fn missing_sequence_for_exact_mode_exits_2() {
    let file = example5();
    let output = cdd(&[
        "solve",
        "--instance",
        file.to_str().unwrap(),
        "--h",
        "0.4",
        "--mode",
        "exact-sequence",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn entry_index_selects_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.txt");
    // Second entry is a single job finishing exactly at the due date.
    std::fs::write(&path, "2\n2\n3 1 1\n4 1 1\n1\n5 2 3\n").unwrap();
    let output = cdd(&[
        "solve",
        "--instance",
        path.to_str().unwrap(),
        "--index",
        "2",
        "--h",
        "1",
        "--mode",
        "exact-sequence",
        "--sequence",
        "1",
    ]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("best total: 0"));

    let output = cdd(&[
        "solve",
        "--instance",
        path.to_str().unwrap(),
        "--index",
        "3",
        "--h",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn malformed_instance_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.txt");
    std::fs::write(&path, "1\n3\n6 7 9\n5 9\n").unwrap();
    let output = cdd(&[
        "solve",
        "--instance",
        path.to_str().unwrap(),
        "--h",
        "0.4",
    ]);
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(err.contains("token"), "{err}");
}

#[test]
fn infeasible_job_exits_3() {
    // Job 3's feasibility row is all zeros: no machine may run it.
    let dir = tempfile::tempdir().unwrap();
    let mask = dir.path().join("mask.txt");
    std::fs::write(&mask, "1 1\n1 1\n0 0\n1 1\n1 1\n").unwrap();
    let file = example5();
    let output = cdd(&[
        "solve",
        "--instance",
        file.to_str().unwrap(),
        "--h",
        "0.8",
        "--machines",
        "2",
        "--mode",
        "exact-sequence",
        "--sequence",
        "1,2,3,4,5",
        "--feasibility",
        mask.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn feasibility_mask_steers_the_assignment() {
    // Job 1 may only run on machine 2; the greedy assignment must respect
    // that even while seeding.
    let dir = tempfile::tempdir().unwrap();
    let mask = dir.path().join("mask.txt");
    std::fs::write(&mask, "0 1\n1 1\n1 1\n1 1\n1 1\n").unwrap();
    let file = example5();
    let output = cdd(&[
        "solve",
        "--instance",
        file.to_str().unwrap(),
        "--h",
        "32/21",
        "--machines",
        "2",
        "--mode",
        "exact-sequence",
        "--sequence",
        "1,2,3,4,5",
        "--feasibility",
        mask.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("machine 2: job 1"), "{text}");
}

#[test]
fn solve_json_round_trips_through_gantt() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("result.json");
    let file = example5();
    let output = cdd(&[
        "solve",
        "--instance",
        file.to_str().unwrap(),
        "--h",
        "16/21",
        "--mode",
        "exact-sequence",
        "--sequence",
        "1,2,3,4,5",
        "--out",
        json_path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(json["result"]["best_total"], 81);
    assert_eq!(json["config"]["h"], "16/21");
    assert_eq!(json["instance"]["due_date"], 16);

    let text_out = cdd(&[
        "gantt",
        "--result",
        json_path.to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert!(text_out.status.success());
    let text = stdout(&text_out);
    assert!(text.contains("job 1 [5,11)"), "{text}");
    assert!(text.contains("job 2 [11,16)*"), "{text}");

    let svg_path = dir.path().join("chart.svg");
    let svg_out = cdd(&[
        "gantt",
        "--result",
        json_path.to_str().unwrap(),
        "--format",
        "svg",
        "--out",
        svg_path.to_str().unwrap(),
    ]);
    assert!(svg_out.status.success());
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("D=16"));
}

#[test]
fn gantt_rejects_malformed_and_empty_results() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let output = cdd(&["gantt", "--result", bad.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));

    let empty = dir.path().join("empty.json");
    std::fs::write(
        &empty,
        serde_json::json!({
            "config": {
                "instance_path": "x", "index": 1, "h": "0.4", "machines": 1,
                "mode": "exact-sequence", "seed": 1, "sequence": null, "anneal": null
            },
            "instance": { "jobs": 0, "due_date": 5, "machines": 1, "total_processing": 0 },
            "result": { "best_total": 0, "sequence": [], "machines": [] }
        })
        .to_string(),
    )
    .unwrap();
    let output = cdd(&["gantt", "--result", empty.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn bench_requires_seeds_and_writes_table() {
    let file = example5();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rows.csv");
    let output = cdd(&[
        "bench",
        "--instances",
        file.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2), "missing --seeds must fail");

    let output = cdd(&[
        "bench",
        "--instances",
        file.to_str().unwrap(),
        "--h-list",
        "0.2,0.8",
        "--seeds",
        "1",
        "--iterations",
        "300",
        "--table",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("h=0.2"), "{text}");
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("n,k,h,m,seed,best_total,iterations_used,wall_ms\n"));
    assert_eq!(csv.lines().count(), 3);
    for line in csv.lines().skip(1) {
        assert!(line.ends_with(",0"), "wall_ms should be zero without --timing: {line}");
    }
}

#[test]
fn check_shift_suite_passes() {
    let output = cdd(&["check", "--trials", "40", "--suite", "shift", "--seed", "5"]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("suite shift: 40/40 pass"));
}

#[test]
fn check_global_suite_rejects_oversized_max_n() {
    let output = cdd(&["check", "--max-n", "12", "--suite", "global"]);
    assert_eq!(output.status.code(), Some(2));
    let output = cdd(&["check", "--max-n", "7", "--suite", "parallel"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn anneal_over_two_machines_reaches_the_greedy_optimum() {
    let file = example5();
    let output = cdd(&[
        "solve",
        "--instance",
        file.to_str().unwrap(),
        "--h",
        "32/21",
        "--machines",
        "2",
        "--seed",
        "1",
        "--iterations",
        "500",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    // 32 is what the fixed worked-example order reaches; other orders of
    // this instance assign {1,3,5}/{2,4} differently, and the search may
    // only match or beat it.
    let total: i64 = text
        .lines()
        .find_map(|line| line.strip_prefix("best total: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(total <= 32, "{text}");
}
