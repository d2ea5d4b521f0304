//! End-to-end tests driving the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_graybox"))
}

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn write_tmp(name: &str, content: &str) -> PathBuf {
    let path = tmp(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("process exited with a code")
}

fn strip_wall(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.remove("wall");
            for x in map.values_mut() {
                strip_wall(x);
            }
        }
        serde_json::Value::Array(items) => {
            for x in items.iter_mut() {
                strip_wall(x);
            }
        }
        _ => {}
    }
}

fn json_without_wall(text: &str) -> String {
    let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
    strip_wall(&mut v);
    serde_json::to_string(&v).unwrap()
}

const TINY_LOP: &str = "2\n0 5\n3 0\n";
const ONE_JOB: &str = "1\n2\n3\n1\n";

#[test]
fn eval_lop_identity_and_reversal() {
    let inst = write_tmp("eval_tiny.lop", TINY_LOP);
    let inst = inst.to_str().unwrap();
    assert_eq!(run_ok(&["eval", "--problem", "lop", "--instance", inst]), "5\n");
    let reversed =
        run_ok(&["eval", "--problem", "lop", "--instance", inst, "--solution", "2 1"]);
    assert_eq!(reversed, "3\n");
}

#[test]
fn eval_single_job_schedule() {
    let inst = write_tmp("eval_one.smtwtp", ONE_JOB);
    assert_eq!(
        run_ok(&["eval", "--problem", "smtwtp", "--instance", inst.to_str().unwrap()]),
        "3\n"
    );
}

#[test]
fn generate_is_deterministic_and_parses_back() {
    let args =
        ["generate", "--problem", "smtwtp", "--size", "7", "--seed", "3"];
    let first = run_ok(&args);
    let second = run_ok(&args);
    assert_eq!(first, second);

    let inst = write_tmp("gen_back.smtwtp", &first);
    let fitness =
        run_ok(&["eval", "--problem", "smtwtp", "--instance", inst.to_str().unwrap()]);
    fitness.trim().parse::<f64>().unwrap();
}

#[test]
fn hillclimb_reports_a_non_increasing_trajectory() {
    let inst = run_ok(&["generate", "--problem", "lop", "--size", "12", "--seed", "8"]);
    let inst = write_tmp("hc_traj.lop", &inst);
    let args = [
        "hillclimb",
        "--problem",
        "lop",
        "--instance",
        inst.to_str().unwrap(),
        "--seed",
        "5",
    ];
    let first = run_ok(&args);
    let second = run_ok(&args);
    assert_eq!(json_without_wall(&first), json_without_wall(&second));

    let record: serde_json::Value = serde_json::from_str(&first).unwrap();
    let trajectory = record["trajectory"].as_array().unwrap();
    assert!(!trajectory.is_empty());
    let fitnesses: Vec<f64> =
        trajectory.iter().map(|p| p["fitness"].as_f64().unwrap()).collect();
    for pair in fitnesses.windows(2) {
        assert!(pair[1] <= pair[0], "trajectory rose: {pair:?}");
    }
    assert_eq!(record["best_fitness"].as_f64().unwrap(), *fitnesses.last().unwrap());
    assert_eq!(record["moves"].as_u64().unwrap() as usize, trajectory.len() - 1);
}

#[test]
fn hillclimb_respects_a_move_budget() {
    let inst = run_ok(&["generate", "--problem", "lop", "--size", "20", "--seed", "2"]);
    let inst = write_tmp("hc_budget.lop", &inst);
    let out = run_ok(&[
        "hillclimb",
        "--problem",
        "lop",
        "--instance",
        inst.to_str().unwrap(),
        "--seed",
        "1",
        "--budget",
        "4",
    ]);
    let record: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(record["moves"].as_u64().unwrap() <= 4);
}

fn fitness_line(report: &str, prefix: &str) -> f64 {
    report
        .lines()
        .find_map(|l| l.strip_prefix(prefix))
        .unwrap_or_else(|| panic!("missing {prefix:?} in {report}"))
        .trim()
        .parse()
        .unwrap()
}

#[test]
fn px_echoes_identical_parents() {
    let inst = run_ok(&["generate", "--problem", "lop", "--size", "9", "--seed", "6"]);
    let inst = write_tmp("px_same.lop", &inst);
    let parent = "1 2 3 4 5 6 7 8 9";
    let report = run_ok(&[
        "px",
        "--problem",
        "lop",
        "--instance",
        inst.to_str().unwrap(),
        "--parent-a",
        parent,
        "--parent-b",
        parent,
    ]);
    assert!(report.contains("0 active"), "expected no active components: {report}");
    let a = fitness_line(&report, "parent a fitness:");
    let off = fitness_line(&report, "offspring fitness:");
    assert_eq!(a, off);
}

#[test]
fn px_offspring_beats_neither_parent_backwards() {
    for seed in ["3", "4", "5"] {
        let inst = run_ok(&["generate", "--problem", "lop", "--size", "11", "--seed", seed]);
        let inst = write_tmp(&format!("px_rand_{seed}.lop"), &inst);
        let report = run_ok(&[
            "px",
            "--problem",
            "lop",
            "--instance",
            inst.to_str().unwrap(),
            "--seed",
            seed,
        ]);
        let a = fitness_line(&report, "parent a fitness:");
        let b = fitness_line(&report, "parent b fitness:");
        let off = fitness_line(&report, "offspring fitness:");
        assert!(off <= a.min(b), "offspring {off} worse than parents {a}, {b}");
    }
}

#[test]
fn fourier_check_reports_the_expected_verdicts() {
    let function = write_tmp(
        "fc_fn.walsh",
        "walsh 3\n100 1.0\n010 -2.0\n001 3.0\n110 1.5\n111 0.25\n",
    );
    let moves = write_tmp("fc_pairs.txt", "110 001\n001 010\n000 111\n");
    let out = run_ok(&[
        "fourier-check",
        "--function",
        function.to_str().unwrap(),
        "--moves",
        moves.to_str().unwrap(),
    ]);
    assert_eq!(
        out,
        "110 001 non-interacting\n001 010 interacting\n000 111 non-interacting\n"
    );
}

#[test]
fn fourier_check_accepts_a_value_table() {
    // x1 XOR x2 as a plain table: only the 11 spectrum line is nonzero, so
    // flips of variable 1 and variable 2 interact while variable 3 is free.
    let function = write_tmp("fc_table.fn", "table 3\n0 1 1 0 0 1 1 0\n");
    let moves = write_tmp("fc_table_pairs.txt", "100 010\n100 001\n");
    let out = run_ok(&[
        "fourier-check",
        "--function",
        function.to_str().unwrap(),
        "--moves",
        moves.to_str().unwrap(),
    ]);
    assert_eq!(out, "100 010 interacting\n100 001 non-interacting\n");
}

const BLOCK_PB: &str = "4 2 2\n2 1 2\n3 1 4 1\n2 3 4\n2 7 1 5\n";

#[test]
fn decompose_splits_across_blocks() {
    let inst = write_tmp("dec_blocks.pb", BLOCK_PB);
    let inst = inst.to_str().unwrap();
    let split =
        run_ok(&["decompose", "--problem", "pb", "--instance", inst, "--move", "1010"]);
    assert_eq!(split, "split 1000 0010\n");
    let whole =
        run_ok(&["decompose", "--problem", "pb", "--instance", inst, "--move", "1100"]);
    assert_eq!(whole, "none\n");
}

#[test]
fn decompose_lists_parent_components() {
    let inst = run_ok(&["generate", "--problem", "lop", "--size", "6", "--seed", "9"]);
    let inst = write_tmp("dec_parents.lop", &inst);
    let report = run_ok(&[
        "decompose",
        "--problem",
        "lop",
        "--instance",
        inst.to_str().unwrap(),
        "--parent-a",
        "2 1 3 4 5 6",
        "--parent-b",
        "1 2 3 4 6 5",
    ]);
    assert!(report.starts_with("components:"), "unexpected report: {report}");
    assert!(report.contains("window 0..1"), "missing first window: {report}");
    assert!(report.contains("window 4..5"), "missing second window: {report}");
}

#[test]
fn ils_csv_has_the_documented_header() {
    let inst = run_ok(&["generate", "--problem", "lop", "--size", "10", "--seed", "1"]);
    let inst = write_tmp("ils_csv.lop", &inst);
    let out = run_ok(&[
        "ils",
        "--problem",
        "lop",
        "--instance",
        inst.to_str().unwrap(),
        "--seed",
        "3",
        "--budget",
        "50",
        "--replications",
        "2",
        "--format",
        "csv",
    ]);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "replication,problem,instance,seed,alpha,budget,moves,best_fitness,px_calls,hill_climb_ms,perturb_ms,crossover_ms,total_ms"
    );
    assert_eq!(lines.count(), 2);
}

#[test]
fn parallel_replications_match_serial_ones() {
    let inst = run_ok(&["generate", "--problem", "pb", "--size", "14", "--seed", "4", "--k", "2"]);
    let inst = write_tmp("ils_par.pb", &inst);
    let base = [
        "ils",
        "--problem",
        "pb",
        "--instance",
        inst.to_str().unwrap(),
        "--seed",
        "11",
        "--budget",
        "60",
        "--replications",
        "3",
    ];
    let serial = run_ok(&base);
    let mut with_parallel: Vec<&str> = base.to_vec();
    with_parallel.push("--parallel");
    let parallel = run_ok(&with_parallel);
    assert_eq!(json_without_wall(&serial), json_without_wall(&parallel));
}

#[test]
fn missing_instance_is_a_usage_error() {
    assert_eq!(
        exit_code(&["eval", "--problem", "lop", "--instance", "/nonexistent/x.lop"]),
        2
    );
}

#[test]
fn bad_flags_are_usage_errors() {
    let inst = write_tmp("usage_tiny.lop", TINY_LOP);
    let inst = inst.to_str().unwrap();
    assert_eq!(exit_code(&["eval", "--problem", "nope", "--instance", inst]), 2);
    assert_eq!(
        exit_code(&[
            "ils",
            "--problem",
            "lop",
            "--instance",
            inst,
            "--alpha",
            "1.5"
        ]),
        2
    );
    assert_eq!(
        exit_code(&[
            "hillclimb",
            "--problem",
            "lop",
            "--instance",
            inst,
            "--widths",
            "4"
        ]),
        2
    );
}

#[test]
fn malformed_instance_is_a_parse_error() {
    let inst = write_tmp("parse_bad.lop", "2\n0 5\n3\n");
    assert_eq!(
        exit_code(&["eval", "--problem", "lop", "--instance", inst.to_str().unwrap()]),
        3
    );
}

#[test]
fn oversized_function_is_a_capacity_error() {
    let wide = format!("walsh 70\n{} 1.0\n", "1".repeat(70));
    let function = write_tmp("cap_fn.walsh", &wide);
    let moves = write_tmp("cap_pairs.txt", "");
    assert_eq!(
        exit_code(&[
            "fourier-check",
            "--function",
            function.to_str().unwrap(),
            "--moves",
            moves.to_str().unwrap(),
        ]),
        4
    );
}

#[test]
fn output_file_matches_stdout() {
    let inst = write_tmp("out_tiny.lop", TINY_LOP);
    let via_stdout =
        run_ok(&["eval", "--problem", "lop", "--instance", inst.to_str().unwrap()]);
    let target = tmp("out_fitness.txt");
    run_ok(&[
        "eval",
        "--problem",
        "lop",
        "--instance",
        inst.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read_to_string(&target).unwrap(), via_stdout);
}
