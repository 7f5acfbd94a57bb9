mod args;
mod cmd;
mod io;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// How a command that ran to completion ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok,
    /// UNSAT where a model was sought, a timeout, an invalid proof, not a cap.
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Exit::Ok) => ExitCode::SUCCESS,
        Ok(Exit::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Exit> {
    if let Some(log) = &cli.log {
        io::check_writable(log)?;
    }
    let jobs = cli.jobs.max(1);
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| anyhow::anyhow!("cannot start {jobs} worker threads: {e}"))?;
    let mut log = io::RunLog::default();
    let exit = match &cli.command {
        Command::Sat(c) => cmd::sat::run(c, &mut log)?,
        Command::Bpt(c) => cmd::bpt::run(c, jobs, &mut log)?,
        Command::Capset(c) => cmd::capset::run(c, cli, &mut log)?,
        Command::Eq(c) => cmd::eq::run(c, &mut log)?,
        Command::Classify(c) => cmd::classify::run(c, &mut log)?,
    };
    log.finish(cli.log.as_deref())?;
    Ok(exit)
}
