use std::path::PathBuf;

use anyhow::Result;
use serde_json::json;

use bruteforge::bpt::{encode, find_threshold, solve_bound, BptError, BptResult, ThresholdOutcome};
use bruteforge::logic::write_dimacs;
use bruteforge::sat::{SolveError, SolverConfig};

use crate::args::BptCmd;
use crate::io::{self, RunLog};
use crate::Exit;

pub fn run(cmd: &BptCmd, jobs: usize, log: &mut RunLog) -> Result<Exit> {
    match cmd {
        BptCmd::Encode { m, output } => {
            if let Some(out) = output {
                io::check_writable(out)?;
            }
            let enc = encode(*m);
            let text = write_dimacs(&enc.cnf);
            match output {
                Some(out) => {
                    io::write_atomic(out, &text)?;
                    println!(
                        "m={m}: {} variables, {} clauses written to {}",
                        enc.cnf.num_vars(),
                        enc.cnf.len(),
                        out.display()
                    );
                }
                None => print!("{text}"),
            }
            log.record(json!({"command": "bpt encode", "m": m, "vars": enc.cnf.num_vars(), "clauses": enc.cnf.len()}));
            Ok(Exit::Ok)
        }
        BptCmd::Solve { m, coloring, cert } => {
            let coloring = coloring
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("bpt_{m}.coloring")));
            io::check_writable(&coloring)?;
            if let Some(c) = cert {
                io::check_writable(c)?;
            }
            match solve_bound(*m, SolverConfig::default()).map_err(solve_failure)? {
                BptResult::Colorable(c) => {
                    io::write_atomic(&coloring, &c.to_text())?;
                    println!("m={m}: colorable, coloring written to {}", coloring.display());
                    log.record(json!({"command": "bpt solve", "m": m, "result": "colorable"}));
                    Ok(Exit::Ok)
                }
                BptResult::Forced(certificate) => {
                    if let Some(c) = cert {
                        io::write_atomic(c, &certificate.to_text())?;
                    }
                    println!("m={m}: no valid 2-coloring ({} certificate lines)", certificate.len());
                    log.record(json!({"command": "bpt solve", "m": m, "result": "forced", "certificate_lines": certificate.len()}));
                    Ok(Exit::Negative)
                }
            }
        }
        BptCmd::Scan { max, step, cert } => {
            if let Some(c) = cert {
                io::check_writable(c)?;
            }
            match find_threshold(*max, *step, jobs, SolverConfig::default()).map_err(solve_failure)? {
                ThresholdOutcome::Threshold { m, certificate } => {
                    if let Some(c) = cert {
                        io::write_atomic(c, &certificate.to_text())?;
                    }
                    println!("threshold {m}: {{1..{}}} is colorable, {{1..{m}}} is not", m - 1);
                    log.record(json!({"command": "bpt scan", "max": max, "threshold": m}));
                    Ok(Exit::Ok)
                }
                ThresholdOutcome::AllSatisfiable { max_m, colorings } => {
                    println!("no threshold up to {max_m} ({} bounds colored)", colorings.len());
                    log.record(json!({"command": "bpt scan", "max": max, "threshold": null}));
                    Ok(Exit::Negative)
                }
            }
        }
    }
}

fn solve_failure(e: BptError) -> anyhow::Error {
    match e {
        BptError::Solve(SolveError::BudgetExhausted { conflicts }) => {
            anyhow::anyhow!("solver gave up after {conflicts} conflicts")
        }
        other => anyhow::anyhow!("internal check failed: {other}"),
    }
}

