use std::path::Path;
use std::process::{Command, Output};

use osp_core::io::{read_results, write_generator_config, GeneratorConfig, RESULTS_HEADER};

const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/appendix-a1");

fn osp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_osp"))
        .args(args)
        .env("OSP_WORKERS", "2")
        .output()
        .unwrap()
}

fn code(args: &[&str]) -> i32 {
    osp(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = osp(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_then_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x");
    assert_eq!(code(&["generate", "--n", "10", "--k", "2", "--a", "2", "--seed", "1", "-o", s(&x)]), 0);
    assert_eq!(code(&["bounds", s(&x)]), 0);
}

#[test]
fn generate_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tiny.toml");
    std::fs::write(&cfg, write_generator_config(&GeneratorConfig::tiny(6, 3))).unwrap();
    let (a, b) = (dir.path().join("a.toml"), dir.path().join("b.toml"));
    stdout(&["generate", s(&cfg), "-o", s(&a)]);
    stdout(&["generate", s(&cfg), "--seed", "3", "-o", s(&b)]);
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert_eq!(text.matches("[[job]]").count(), 6);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&[]), 1);
    assert_eq!(code(&["bogus"]), 1);
    assert_eq!(code(&["anneal", FIXTURE, "--seed", "x"]), 1);
    assert_eq!(code(&["bounds", "/nonexistent/instance"]), 1);
    let out = osp(&["greedy"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn infeasible_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "format = \"osp-solution\"\nversion = 1\n\n[[batch]]\nmachine = 1\njobs = [1, 2]\nstart = 0\nprocessing_time = 5\n").unwrap();
    let out = osp(&["evaluate", FIXTURE, s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("violation"));

    let broken = dir.path().join("broken.toml");
    std::fs::write(&broken, "format = \"osp-instance\"\n").unwrap();
    assert_eq!(code(&["bounds", s(&broken)]), 2);
}

#[test]
fn budget_errors_exit_3() {
    assert_eq!(code(&["oracle", FIXTURE]), 3);
    assert_eq!(code(&["oracle", FIXTURE, "--max-jobs", "10", "--node-budget", "10"]), 3);
}

#[test]
fn oracle_solution_evaluates_to_the_same_cost() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("opt.toml");
    let solved = stdout(&["oracle", FIXTURE, "--max-jobs", "10", "--no-prune", "-o", s(&sol)]);
    let checked = stdout(&["evaluate", FIXTURE, s(&sol)]);
    assert!(checked.starts_with("objective = 0.80220"));
    assert!(solved.starts_with(&checked));
}

#[test]
fn anneal_writes_traces_and_results() {
    let dir = tempfile::tempdir().unwrap();
    let (trace, results, sol) = (
        dir.path().join("trace.csv"),
        dir.path().join("results.csv"),
        dir.path().join("sol.toml"),
    );
    let out = stdout(&[
        "anneal", FIXTURE, "--seed", "5", "--replicates", "3", "--trace", s(&trace),
        "--results", s(&results), "-o", s(&sol),
    ]);
    assert_eq!(out.matches("[[replicate]]").count(), 3);
    let rows = read_results(&std::fs::read_to_string(&results).unwrap()).unwrap();
    assert_eq!(rows.iter().map(|r| r.seed).collect::<Vec<_>>(), [Some(5), Some(6), Some(7)]);
    assert!(rows.iter().all(|r| r.method == "anneal" && r.instance == "appendix-a1"));
    assert!(std::fs::read_to_string(&trace).unwrap().lines().count() > 3);
    assert_eq!(code(&["evaluate", FIXTURE, s(&sol)]), 0);
}

#[test]
fn bench_emits_one_row_per_run() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..3 {
        let p = dir.path().join(format!("i{seed}.toml"));
        stdout(&["generate", "--n", "8", "--seed", &seed.to_string(), "-o", s(&p)]);
    }
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let table = stdout(&["bench", s(dir.path()), "--replicates", "2", "--time-limit", "1"]);
    assert!(table.starts_with(&RESULTS_HEADER.join(",")));
    let rows = read_results(&table).unwrap();
    assert_eq!(rows.len(), 3 * (2 + 2));
    let methods: Vec<_> = rows[..4].iter().map(|r| (r.method.as_str(), r.seed)).collect();
    assert_eq!(methods, [("bounds", None), ("greedy", None), ("anneal", Some(0)), ("anneal", Some(1))]);
    assert!(rows.iter().all(|r| r.objective >= r.lb));
}

#[test]
fn bad_worker_count_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_osp"))
        .args(["anneal", FIXTURE, "--replicates", "1"])
        .env("OSP_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
