use std::path::Path;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::json;

use bruteforge::capset::{
    evolve, exact_cap, greedy, is_cap, CapSetCandidate, EvolveConfig, Generator, PriorityExpr,
};

use crate::args::{CapsetCmd, Cli, EvolveArgs};
use crate::io::{self, RunLog};
use crate::Exit;

pub fn run(cmd: &CapsetCmd, cli: &Cli, log: &mut RunLog) -> Result<Exit> {
    match cmd {
        CapsetCmd::Verify { file } => {
            io::check_readable(file)?;
            let set = CapSetCandidate::parse(&io::read(file)?)
                .with_context(|| format!("cannot parse {}", file.display()))?;
            let ok = is_cap(&set);
            if ok {
                println!("cap set of size {} in dimension {}", set.len(), set.n);
            } else {
                println!("not a cap set: three of the {} vectors are collinear", set.len());
            }
            log.record(json!({"command": "capset verify", "n": set.n, "size": set.len(), "cap": ok}));
            Ok(if ok { Exit::Ok } else { Exit::Negative })
        }
        CapsetCmd::Greedy { n, expr, output } => {
            if let Some(out) = output {
                io::check_writable(out)?;
            }
            let e = PriorityExpr::parse(expr).context("bad priority expression")?;
            let set = greedy(&e, *n)?;
            write_set(output.as_deref(), &set)?;
            println!("{}", set.len());
            log.record(json!({"command": "capset greedy", "n": n, "expr": e.to_string(), "size": set.len()}));
            Ok(Exit::Ok)
        }
        CapsetCmd::Exact { n, max_nodes, output } => {
            if let Some(out) = output {
                io::check_writable(out)?;
            }
            let r = exact_cap(*n, max_nodes.unwrap_or(u64::MAX))?;
            write_set(output.as_deref(), &r.witness)?;
            log.record(json!({"command": "capset exact", "n": n, "size": r.size, "exact": r.exact, "nodes": r.nodes}));
            if r.exact {
                println!("{}", r.size);
                Ok(Exit::Ok)
            } else {
                println!("at least {} (node budget exhausted after {} nodes)", r.size, r.nodes);
                Ok(Exit::Negative)
            }
        }
        CapsetCmd::Evolve(a) => run_evolve(a, cli, log),
    }
}

fn write_set(out: Option<&Path>, set: &CapSetCandidate) -> Result<()> {
    if let Some(out) = out {
        io::write_atomic(out, &set.to_text())?;
    }
    Ok(())
}

/// Settings file for `capset evolve`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct EvolveFile {
    n: Option<usize>,
    seed: Option<u64>,
    evals: Option<usize>,
    batch: Option<usize>,
    capacity: Option<usize>,
    tournament: Option<usize>,
    target: Option<usize>,
    generator: Option<String>,
    timeout_ms: Option<u64>,
}

fn run_evolve(a: &EvolveArgs, cli: &Cli, log: &mut RunLog) -> Result<Exit> {
    if let Some(out) = &a.output {
        io::check_writable(out)?;
    }
    let file: EvolveFile = match &a.config {
        Some(path) => {
            io::check_readable(path)?;
            toml::from_str(&io::read(path)?)
                .with_context(|| format!("bad config {}", path.display()))?
        }
        None => EvolveFile::default(),
    };
    let Some(n) = a.n.or(file.n) else {
        bail!("dimension missing: pass --n or set n in the config");
    };
    let seed = cli.seed.or(file.seed).unwrap_or(0);
    let evals = a.evals.or(file.evals).unwrap_or(1000);
    let mut cfg = EvolveConfig::new(n, seed, evals);
    if let Some(b) = file.batch {
        cfg.batch = b;
    }
    if let Some(c) = file.capacity {
        cfg.capacity = c;
    }
    if let Some(t) = file.tournament {
        cfg.tournament = t;
    }
    cfg.target = a.target.or(file.target);
    cfg.jobs = cli.jobs.max(1);
    let command = a.generator.clone().or(file.generator);
    if let Some(command) = command.filter(|c| c != "baseline") {
        cfg.generator = Generator::External {
            command,
            timeout: Duration::from_millis(file.timeout_ms.unwrap_or(10_000)),
        };
    }

    let outcome = evolve(&cfg)?;
    log.extend_raw(&outcome.log_jsonl());
    let best = &outcome.best;
    let set = greedy(&best.expr, n)?;
    write_set(a.output.as_deref(), &set)?;
    println!(
        "best score {} after {} evaluations: {}",
        best.score, outcome.evaluations, best.expr
    );
    Ok(Exit::Ok)
}
