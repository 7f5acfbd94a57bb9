use anyhow::{Context, Result};
use serde_json::json;

use bruteforge::logic::{parse_dimacs, Cnf};
use bruteforge::sat::{solve_cubes, solve_with, Learning, SolveError, SolverConfig, Verdict};

use crate::args::{LearningArg, SatCmd, SatSolveArgs};
use crate::io::{self, RunLog};
use crate::Exit;

pub fn run(cmd: &SatCmd, log: &mut RunLog) -> Result<Exit> {
    match cmd {
        SatCmd::Solve(a) => solve(a, log),
    }
}

pub fn config(learning: LearningArg, max_conflicts: Option<u64>) -> SolverConfig {
    SolverConfig {
        learning: match learning {
            LearningArg::FirstUip => Learning::FirstUip,
            LearningArg::Decisions => Learning::Decisions,
        },
        max_conflicts,
    }
}

fn solve(a: &SatSolveArgs, log: &mut RunLog) -> Result<Exit> {
    io::check_readable(&a.file)?;
    for out in [&a.cert, &a.model].into_iter().flatten() {
        io::check_writable(out)?;
    }
    let cnf: Cnf = parse_dimacs(&io::read(&a.file)?)
        .with_context(|| format!("{} is not valid DIMACS", a.file.display()))?;
    let cfg = config(a.learning, a.max_conflicts);
    let verdict = match a.cubes {
        Some(k) => solve_cubes(&cnf, k, cfg),
        None => solve_with(&cnf, cfg),
    };
    let verdict = match verdict {
        Ok(v) => v,
        Err(SolveError::BudgetExhausted { conflicts }) => {
            println!("s UNKNOWN");
            eprintln!("conflict budget exhausted after {conflicts} conflicts");
            log.record(json!({"command": "sat solve", "result": "UNKNOWN", "conflicts": conflicts}));
            return Ok(Exit::Negative);
        }
    };
    match verdict {
        Verdict::Satisfiable(model) => {
            let line = model_line(&model.lits().iter().map(|l| l.to_dimacs()).collect::<Vec<_>>());
            println!("s SATISFIABLE");
            print!("{line}");
            if let Some(out) = &a.model {
                io::write_atomic(out, &line)?;
            }
            log.record(json!({"command": "sat solve", "result": "SAT", "vars": cnf.num_vars()}));
            Ok(Exit::Ok)
        }
        Verdict::Unsatisfiable(cert) => {
            println!("s UNSATISFIABLE");
            if let Some(out) = &a.cert {
                io::write_atomic(out, &cert.to_text())?;
            }
            log.record(json!({"command": "sat solve", "result": "UNSAT", "certificate_lines": cert.len()}));
            Ok(Exit::Negative)
        }
    }
}

fn model_line(codes: &[i32]) -> String {
    let mut s = String::from("v");
    for c in codes {
        s.push_str(&format!(" {c}"));
    }
    s.push_str(" 0\n");
    s
}
