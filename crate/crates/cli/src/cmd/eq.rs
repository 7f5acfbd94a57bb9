use std::path::Path;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use serde_json::json;

use bruteforge::equational::{
    check_proof_detailed, kb_complete, parse_goal, prove, prove_exists, AxiomSet, CompletionError,
    ExistsOutcome, ProofDocument, ProveOutcome, ProverConfig,
};
use bruteforge::search::Budget;

use crate::args::{EqCmd, EqProveArgs};
use crate::io::{self, RunLog};
use crate::Exit;

const BUILTIN: [&str; 3] = ["robbins", "boolean", "group"];

/// A built-in set name or the path of an axiom file.
pub fn load_axioms(name: &str) -> Result<AxiomSet> {
    if BUILTIN.contains(&name) {
        return Ok(AxiomSet::builtin(name)?);
    }
    let path = Path::new(name);
    if !path.is_file() {
        bail!("`{name}` is neither a built-in axiom set ({}) nor a file", BUILTIN.join(", "));
    }
    AxiomSet::parse(&io::read(path)?).with_context(|| format!("cannot parse {name}"))
}

pub fn run(cmd: &EqCmd, log: &mut RunLog) -> Result<Exit> {
    match cmd {
        EqCmd::Prove(a) => run_prove(a, log),
        EqCmd::Check { file, axioms } => {
            io::check_readable(file)?;
            let text = io::read(file)?;
            let set_ref = match axioms {
                Some(s) => s.clone(),
                None => ProofDocument::axioms_ref(&text)?,
            };
            let set = load_axioms(&set_ref)?;
            let doc = ProofDocument::parse(&text, &set)
                .with_context(|| format!("cannot parse {}", file.display()))?;
            let verdict = check_proof_detailed(&doc.proof, &set.axioms, &doc.goal);
            log.record(json!({
                "command": "eq check",
                "goal": doc.goal.to_string(),
                "steps": doc.proof.len(),
                "valid": verdict.is_ok(),
            }));
            match verdict {
                Ok(()) => {
                    println!("valid: {} steps prove {}", doc.proof.len(), doc.goal);
                    Ok(Exit::Ok)
                }
                Err(e) => {
                    println!("invalid: {e}");
                    Ok(Exit::Negative)
                }
            }
        }
        EqCmd::Complete { axioms, budget } => {
            let set = load_axioms(axioms)?;
            match kb_complete(&set.axioms, &set.precedence, *budget) {
                Ok(c) => {
                    println!("complete: {} rules after {} steps", c.rules.len(), c.steps);
                    for r in &c.rules {
                        println!("{}", r.rule);
                    }
                    log.record(json!({"command": "eq complete", "result": "complete", "rules": c.rules.len(), "steps": c.steps}));
                    Ok(Exit::Ok)
                }
                Err(CompletionError::ProofTooLong(e)) => bail!("{e}"),
                Err(e) => {
                    println!("failed: {e}");
                    let rules = match &e {
                        CompletionError::Unorientable { rules, .. }
                        | CompletionError::BudgetExhausted { rules, .. } => rules.clone(),
                        CompletionError::ProofTooLong(_) => Vec::new(),
                    };
                    for r in &rules {
                        println!("{r}");
                    }
                    log.record(json!({"command": "eq complete", "result": "failed", "error": e.to_string()}));
                    Ok(Exit::Negative)
                }
            }
        }
    }
}

fn run_prove(a: &EqProveArgs, log: &mut RunLog) -> Result<Exit> {
    if let Some(out) = &a.output {
        io::check_writable(out)?;
    }
    let full = load_axioms(&a.axioms)?;
    let set = if a.use_ids.is_empty() {
        full.clone()
    } else {
        let ids: Vec<&str> = a.use_ids.iter().map(String::as_str).collect();
        full.restrict(&ids)?
    };
    let (goal, _) = parse_goal(&a.goal, &set.signature).context("bad goal")?;
    let config = ProverConfig {
        max_inferences: a.budget,
        max_time: a.time.map(Duration::from_secs_f64),
        ..ProverConfig::default()
    };

    let (instance, proof, stats) = if a.exists {
        let budget = Budget::candidates(a.candidates);
        match prove_exists(&goal, &set, &config, &budget)? {
            ExistsOutcome::Proved {
                witness,
                instance,
                proof,
                candidates,
            } => {
                println!("witness {witness} after {candidates} candidates");
                (instance, proof, None)
            }
            ExistsOutcome::Exhausted { candidates } => {
                println!("no witness among {candidates} candidates");
                log.record(json!({"command": "eq prove", "goal": goal.to_string(), "result": "exhausted", "candidates": candidates}));
                return Ok(Exit::Negative);
            }
        }
    } else {
        match prove(&goal, &set, &config)? {
            ProveOutcome::Proved { proof, stats } => (goal.clone(), proof, Some(stats)),
            ProveOutcome::Timeout { stats } => {
                println!("timeout: {stats}");
                log.record(json!({
                    "command": "eq prove",
                    "goal": goal.to_string(),
                    "result": "timeout",
                    "generated": stats.generated,
                    "kept": stats.kept,
                }));
                return Ok(Exit::Negative);
            }
        }
    };

    let doc = ProofDocument {
        axioms: a.axioms.clone(),
        goal: instance,
        proof,
    };
    let text = doc.to_text();
    println!("proved {} in {} steps", doc.goal, doc.proof.len());
    if let Some(s) = &stats {
        println!("{s}");
    }
    match &a.output {
        Some(out) => io::write_atomic(out, &text)?,
        None => print!("{}", doc.proof.to_text()),
    }
    log.record(json!({
        "command": "eq prove",
        "goal": doc.goal.to_string(),
        "result": "proved",
        "steps": doc.proof.len(),
    }));
    Ok(Exit::Ok)
}
