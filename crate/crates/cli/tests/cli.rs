use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bruteforge::bpt::{verify_coloring, Coloring, ColoringVerdict};
use bruteforge::logic::parse_dimacs;
use bruteforge::sat::{check_certificate, Certificate};

const CORE_GOLDEN_EVOLVE: &str = include_str!("../../core/tests/golden/evolve_n3_seed0.jsonl");
const GOLDEN_BPT_20: &str = include_str!("golden/bpt_20.cnf");

fn bruteforge(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bruteforge"))
        .args(args)
        .current_dir(dir)
        .env_remove("BRUTEFORGE_JOBS")
        .env_remove("CAPSET_GENERATOR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bpt_solve_writes_a_valid_coloring() {
    let dir = tempfile::tempdir().unwrap();
    let o = bruteforge(dir.path(), &["bpt", "solve", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("bpt_5.coloring")).unwrap();
    let f = Coloring::parse(&text, 5).unwrap();
    assert_eq!(verify_coloring(&f, 5), Ok(ColoringVerdict::Valid));

    let o = bruteforge(dir.path(), &["bpt", "solve", "25", "--coloring", "c25.txt"]);
    assert_eq!(o.status.code(), Some(0));
    let f = Coloring::parse(&fs::read_to_string(dir.path().join("c25.txt")).unwrap(), 25).unwrap();
    assert_eq!(verify_coloring(&f, 25), Ok(ColoringVerdict::Valid));
}

#[test]
fn capset_exact_prints_the_maximum() {
    let dir = tempfile::tempdir().unwrap();
    let o = bruteforge(dir.path(), &["capset", "exact", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "4");
    let o = bruteforge(dir.path(), &["capset", "exact", "--n", "3", "-o", "cap3.txt"]);
    assert_eq!(stdout(&o).trim(), "9");
    let v = bruteforge(dir.path(), &["capset", "verify", "cap3.txt"]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn missing_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = bruteforge(dir.path(), &["eq", "check", "missing.prf"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.prf"));
    assert_eq!(bruteforge(dir.path(), &["sat", "solve", "nope.cnf"]).status.code(), Some(2));
    assert_eq!(bruteforge(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(bruteforge(dir.path(), &["capset", "exact"]).status.code(), Some(2));
}

#[test]
fn output_paths_are_checked_before_work() {
    let dir = tempfile::tempdir().unwrap();
    let o = bruteforge(dir.path(), &["bpt", "encode", "30", "-o", "no/such/dir/x.cnf"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bruteforge(dir.path(), &["--log", "no/dir/log.jsonl", "capset", "exact", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
}

#[test]
fn sat_exit_codes_and_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let unsat = "p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n";
    fs::write(dir.path().join("u.cnf"), unsat).unwrap();
    let o = bruteforge(dir.path(), &["sat", "solve", "u.cnf", "--cert", "u.rup"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("s UNSATISFIABLE"));
    let cert = Certificate::parse(&fs::read_to_string(dir.path().join("u.rup")).unwrap()).unwrap();
    assert_eq!(check_certificate(&parse_dimacs(unsat).unwrap(), &cert), Ok(true));

    fs::write(dir.path().join("s.cnf"), "p cnf 3 2\n1 -2 0\n2 3 0\n").unwrap();
    let o = bruteforge(dir.path(), &["sat", "solve", "s.cnf", "--model", "s.model", "--cubes", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("s SATISFIABLE"));
    let model = fs::read_to_string(dir.path().join("s.model")).unwrap();
    assert!(model.starts_with('v') && model.trim_end().ends_with(" 0"));

    fs::write(dir.path().join("bad.cnf"), "p cnf 1 1\n1 x 0\n").unwrap();
    assert_eq!(bruteforge(dir.path(), &["sat", "solve", "bad.cnf"]).status.code(), Some(2));
}

#[test]
fn bpt_encode_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.cnf", "b.cnf"] {
        let o = bruteforge(dir.path(), &["bpt", "encode", "20", "-o", name]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(fs::read_to_string(dir.path().join(name)).unwrap(), GOLDEN_BPT_20);
    }
    let o = bruteforge(dir.path(), &["bpt", "encode", "20"]);
    assert_eq!(stdout(&o), GOLDEN_BPT_20);
}

#[test]
fn evolve_log_matches_golden_file_for_any_job_count() {
    let dir = tempfile::tempdir().unwrap();
    for (jobs, log) in [("1", "j1.jsonl"), ("4", "j4.jsonl")] {
        let o = bruteforge(
            dir.path(),
            &["--seed", "0", "--jobs", jobs, "capset", "evolve", "--n", "3", "--evals", "5000", "--log", log],
        );
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("best score 9 "));
        assert_eq!(fs::read_to_string(dir.path().join(log)).unwrap(), CORE_GOLDEN_EVOLVE);
    }
}

#[test]
fn evolve_reads_config_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("run.toml"), "n = 3\nseed = 4\nevals = 300\nbatch = 4\ntarget = 9\n").unwrap();
    let o = bruteforge(dir.path(), &["capset", "evolve", "--config", "run.toml", "--log", "a.jsonl", "-o", "best.txt"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let a = fs::read_to_string(dir.path().join("a.jsonl")).unwrap();
    assert!(a.lines().count() <= 300);
    assert_eq!(bruteforge(dir.path(), &["capset", "verify", "best.txt"]).status.code(), Some(0));

    let o = bruteforge(dir.path(), &["--seed", "5", "capset", "evolve", "--config", "run.toml", "--evals", "40", "--log", "b.jsonl"]);
    assert_eq!(o.status.code(), Some(0));
    let b = fs::read_to_string(dir.path().join("b.jsonl")).unwrap();
    assert!(b.lines().count() <= 40);
    assert_ne!(a.lines().next(), b.lines().next());

    fs::write(dir.path().join("bad.toml"), "n = 3\ncolour = 1\n").unwrap();
    let o = bruteforge(dir.path(), &["capset", "evolve", "--config", "bad.toml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn evolve_with_external_generator() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = r#"read line; echo '{"expr":"v[0] + v[1]"}'"#;
    let o = bruteforge(
        dir.path(),
        &["capset", "evolve", "--n", "2", "--evals", "20", "--generator", cmd, "--log", "ext.jsonl"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let log = fs::read_to_string(dir.path().join("ext.jsonl")).unwrap();
    assert!(log.contains(r#""expr":"v[0] + v[1]""#));

    let o = bruteforge(
        dir.path(),
        &["capset", "evolve", "--n", "2", "--evals", "12", "--generator", "echo not-json", "--log", "bad.jsonl"],
    );
    assert_eq!(o.status.code(), Some(0));
    let log = fs::read_to_string(dir.path().join("bad.jsonl")).unwrap();
    assert!(log.contains("\"error\""));
}

#[test]
fn capset_verify_rejects_a_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("line.txt"), "00\n11\n22\n").unwrap();
    assert_eq!(bruteforge(dir.path(), &["capset", "verify", "line.txt"]).status.code(), Some(1));
    fs::write(dir.path().join("junk.txt"), "0a\n").unwrap();
    assert_eq!(bruteforge(dir.path(), &["capset", "verify", "junk.txt"]).status.code(), Some(2));
    let o = bruteforge(dir.path(), &["capset", "greedy", "--n", "2", "--expr", "0"]);
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn eq_prove_then_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = bruteforge(dir.path(), &["eq", "prove", "--axioms", "boolean", "--goal", "x v x = x", "-o", "idem.prf"]);
    assert_eq!(o.status.code(), Some(0));
    let first = fs::read_to_string(dir.path().join("idem.prf")).unwrap();
    assert!(first.starts_with("axioms boolean\ngoal x v x = x\n"));
    let o = bruteforge(dir.path(), &["eq", "check", "idem.prf"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid"));

    bruteforge(dir.path(), &["eq", "prove", "--axioms", "boolean", "--goal", "x v x = x", "-o", "again.prf"]);
    assert_eq!(fs::read_to_string(dir.path().join("again.prf")).unwrap(), first);

    // flip the direction of the last step
    let mut lines: Vec<String> = first.lines().map(str::to_string).collect();
    let last = lines.pop().unwrap();
    let flipped = if last.ends_with("->") { last.replace(" ->", " <-") } else { last.replace(" <-", " ->") };
    lines.push(flipped);
    fs::write(dir.path().join("bad.prf"), lines.join("\n") + "\n").unwrap();
    let o = bruteforge(dir.path(), &["eq", "check", "bad.prf"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid"));
}

#[test]
fn eq_prove_reports_timeout() {
    let dir = tempfile::tempdir().unwrap();
    let o = bruteforge(
        dir.path(),
        &[
            "eq", "prove", "--axioms", "robbins", "--use", "R1,R2,R3",
            "--goal", "(x v x) v -(-((x v x) v x) v x) = x v x", "--budget", "2000",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("timeout:"));
    let o = bruteforge(dir.path(), &["eq", "prove", "--axioms", "robbins", "--use", "R9", "--goal", "x = x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eq_axiom_files_and_completion() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("monoid.ax"),
        "signature group\nA1: (x * y) * z = x * (y * z)\nA2: e * x = x\nA3: x * e = x\n",
    )
    .unwrap();
    let o = bruteforge(dir.path(), &["eq", "complete", "--axioms", "monoid.ax"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("x * y * z -> x * (y * z)"));

    let o = bruteforge(dir.path(), &["eq", "complete", "--axioms", "group"]);
    assert!(stdout(&o).starts_with("complete: 10 rules"));

    fs::write(dir.path().join("comm.ax"), "signature group\nC: x * y = y * x\n").unwrap();
    let o = bruteforge(dir.path(), &["eq", "complete", "--axioms", "comm.ax"]);
    assert_eq!(o.status.code(), Some(1));

    let o = bruteforge(dir.path(), &["eq", "prove", "--axioms", "monoid.ax", "--goal", "(e * a) * e = a", "-o", "m.prf"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(bruteforge(dir.path(), &["eq", "check", "m.prf"]).status.code(), Some(0));
}

#[test]
fn eq_prove_exists_finds_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let o = bruteforge(
        dir.path(),
        &["eq", "prove", "--axioms", "group", "--goal", "x * a = e", "--exists", "--budget", "3000", "-o", "w.prf"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("i(a)"));
    assert_eq!(bruteforge(dir.path(), &["eq", "check", "w.prf"]).status.code(), Some(0));
}

#[test]
fn classify_files_and_inline_formulas() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("goldbach.f"),
        "forall n. even(n) & n > 2 -> exists p < n. exists q < n. prime(p) & prime(q) & p + q = n\n",
    )
    .unwrap();
    let o = bruteforge(dir.path(), &["classify", "goldbach.f"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Pi(1)");
    let o = bruteforge(dir.path(), &["classify", "-e", "∀x ∃y. x < y", "--prenex"]);
    assert_eq!(stdout(&o), "Pi(2)\nforall x. exists y. x < y\n");
    assert_eq!(bruteforge(dir.path(), &["classify", "-e", "forall x. ("]).status.code(), Some(2));
}

#[test]
fn bpt_scan_and_json_log() {
    let dir = tempfile::tempdir().unwrap();
    let o = bruteforge(dir.path(), &["--log", "scan.jsonl", "bpt", "scan", "--max", "30", "--step", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("no threshold up to 30"));
    let log = fs::read_to_string(dir.path().join("scan.jsonl")).unwrap();
    let rec: serde_json::Value = serde_json::from_str(log.trim()).unwrap();
    assert_eq!(rec["command"], "bpt scan");
    assert!(rec["threshold"].is_null());
}
