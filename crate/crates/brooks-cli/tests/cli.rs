//! End-to-end runs of the installed binary: every subcommand, every
//! documented exit code, byte-stable output, and the color -> verify
//! round trip.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_brooks"))
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn color_verify_round_trip() {
    let graph = tmp("petersen.col");
    let sol = tmp("petersen.sol");
    let gen = run(&["gen", "named", "petersen"]);
    assert!(gen.status.success());
    std::fs::write(&graph, &gen.stdout).unwrap();
    for algo in ["a", "b", "auto"] {
        let color = run(&["color", graph.to_str().unwrap(), "--algorithm", algo]);
        assert_eq!(color.status.code(), Some(0), "algo {algo}");
        let text = stdout_of(&color);
        assert_eq!(text.lines().count(), 10);
        assert!(text.lines().all(|l| l.starts_with("s ")));
        std::fs::write(&sol, &color.stdout).unwrap();
        let verify = run(&["verify", graph.to_str().unwrap(), sol.to_str().unwrap()]);
        assert_eq!(verify.status.code(), Some(0), "algo {algo}");
    }
}

#[test]
fn json_output_is_byte_stable_and_complete() {
    let graph = tmp("prism.col");
    let gen = run(&["gen", "named", "prism"]);
    std::fs::write(&graph, &gen.stdout).unwrap();
    let a = run(&["color", graph.to_str().unwrap(), "--json"]);
    let b = run(&["color", graph.to_str().unwrap(), "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&a)).unwrap();
    assert_eq!(v["palette"], 3);
    assert!(v["colors"].as_array().unwrap().len() == 6);
    assert!(v["components"][0]["class"].is_string());
    assert!(v["instrumentation"]["edges_examined"].as_u64().unwrap() > 0);
    assert_eq!(v["fallbacks"], 0);
    assert!(v.get("trace").is_none());
}

#[test]
fn trace_nests_under_json_when_asked() {
    let graph = tmp("k33.col");
    let gen = run(&["gen", "named", "k33"]);
    std::fs::write(&graph, &gen.stdout).unwrap();
    let out = run(&["color", graph.to_str().unwrap(), "--json", "--trace"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert!(!v["trace"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_input_exits_two() {
    let bad = tmp("bad.col");
    std::fs::write(&bad, "p edge 3 1\ne 1 99\n").unwrap();
    let out = run(&["color", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = run(&["color", "no-such-file.col"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn stdin_requires_explicit_format() {
    let mut child = bin()
        .args(["color", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"p edge 2 1\ne 1 2\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stdin_colors_with_format_flag() {
    let mut child = bin()
        .args(["color", "-", "--format", "dimacs"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "s 0 1\ns 1 2\ns 2 3\n");
}

#[test]
fn verify_reports_first_violation() {
    let graph = tmp("c5.col");
    std::fs::write(&graph, "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 5\n").unwrap();
    let good = tmp("c5-good.sol");
    std::fs::write(&good, "s 0 1\ns 1 2\ns 2 1\ns 3 2\ns 4 3\n").unwrap();
    let ok = run(&["verify", graph.to_str().unwrap(), good.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    let bad = tmp("c5-bad.sol");
    std::fs::write(&bad, "s 0 1\ns 1 2\ns 2 1\ns 3 2\ns 4 1\n").unwrap();
    let viol = run(&["verify", graph.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(viol.status.code(), Some(1));
    assert!(stdout_of(&viol).contains("edge (0, 4)"));

    let partial = tmp("c5-part.sol");
    std::fs::write(&partial, "s 0 1\ns 2 2\n").unwrap();
    let unc = run(&["verify", graph.to_str().unwrap(), partial.to_str().unwrap()]);
    assert_eq!(unc.status.code(), Some(1));
    assert!(stdout_of(&unc).contains("vertex 1 is uncolored"));
}

#[test]
fn greedy_refuses_regular_graph_with_exit_three() {
    let graph = tmp("pet2.col");
    let gen = run(&["gen", "named", "petersen"]);
    std::fs::write(&graph, &gen.stdout).unwrap();
    let out = run(&["color", graph.to_str().unwrap(), "--algorithm", "greedy"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gen_is_seed_deterministic_and_env_seeded() {
    let a = run(&["gen", "regular", "12", "3", "--seed", "5"]);
    let b = run(&["gen", "regular", "12", "3", "--seed", "5"]);
    let c = run(&["gen", "regular", "12", "3", "--seed", "6"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let env = bin()
        .args(["gen", "regular", "12", "3"])
        .env("BROOKS_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn gen_case_emits_parsable_instances() {
    for case in ["ham-path", "split", "final-maneuver-(i)"] {
        let out = run(&["gen", "case", case, "--format", "edgelist"]);
        assert!(out.status.success(), "case {case}");
        let text = stdout_of(&out);
        let header: Vec<usize> = text
            .lines()
            .next()
            .unwrap()
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        assert_eq!(text.lines().count(), header[1] + 1);
    }
    let unknown = run(&["gen", "case", "kempe-cascade"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn chromatic_matches_known_values() {
    for (name, chi) in [("petersen", "3"), ("k33", "2"), ("bowtie", "3")] {
        let graph = tmp(&format!("chrom-{name}.col"));
        let gen = run(&["gen", "named", name]);
        std::fs::write(&graph, &gen.stdout).unwrap();
        let out = run(&["chromatic", graph.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(stdout_of(&out).trim(), chi, "{name}");
    }
}

#[test]
fn bench_emits_exact_header_and_valid_rows() {
    let out = run(&[
        "bench", "--delta", "3", "--sizes", "32,64", "--repeats", "3", "--seed", "11",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,m,delta,algorithm,wall_time_ns,edges_examined,path_edge_examinations,valid"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8); // 3 runs + 1 median row per size
    for row in &rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 8);
        assert_eq!(cols[2], "3");
        assert_eq!(cols[7], "true");
        cols[4].parse::<u64>().unwrap();
    }
    assert_eq!(rows[3].split(',').nth(3), Some("median"));
    assert_eq!(rows[7].split(',').nth(3), Some("median"));
    let descending = run(&["bench", "--delta", "3", "--sizes", "64,32"]);
    assert_eq!(descending.status.code(), Some(2));
}

#[test]
fn edgelist_format_round_trips_through_color() {
    let graph = tmp("cycle.edges");
    std::fs::write(&graph, "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    let out = run(&["color", graph.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["palette"], 3);
    assert_eq!(v["components"][0]["class"], "OddCycle");
}
