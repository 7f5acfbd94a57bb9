use anyhow::{Context, Result};
use serde_json::json;

use bruteforge::hierarchy::{classify, parse_formula, prenexify};

use crate::args::ClassifyArgs;
use crate::io::{self, RunLog};
use crate::Exit;

pub fn run(a: &ClassifyArgs, log: &mut RunLog) -> Result<Exit> {
    let text = match (&a.file, &a.formula) {
        (_, Some(f)) => f.clone(),
        (Some(path), None) => {
            io::check_readable(path)?;
            io::read(path)?
        }
        (None, None) => unreachable!("clap requires one of them"),
    };
    let formula = parse_formula(text.trim()).context("cannot parse formula")?;
    let class = classify(&formula);
    println!("{class}");
    if a.prenex {
        println!("{}", prenexify(&formula));
    }
    log.record(json!({"command": "classify", "formula": formula.to_string(), "class": class.to_string()}));
    Ok(Exit::Ok)
}
