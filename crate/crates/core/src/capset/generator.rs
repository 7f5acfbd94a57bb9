use std::io::{BufRead, BufReader, Write};
use std::process::{Command, Stdio};
use std::sync::mpsc;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::expr::{BinOp, PriorityExpr};

/// Programs above this many nodes are not proposed.
pub const MAX_EXPR_SIZE: usize = 40;

/// A parent handed to a generator: program text and its score.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parent {
    pub expr: String,
    pub score: usize,
}

fn random_leaf(rng: &mut ChaCha8Rng) -> PriorityExpr {
    match rng.gen_range(0..6) {
        0 | 1 => PriorityExpr::Lit(rng.gen_range(-2..=3)),
        2 => PriorityExpr::Dim,
        _ => PriorityExpr::digit(rng.gen_range(0..8)),
    }
}

/// A random program of at most the given depth.
pub fn random_expr(rng: &mut ChaCha8Rng, depth: usize) -> PriorityExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return random_leaf(rng);
    }
    if rng.gen_bool(0.15) {
        return PriorityExpr::Digit(Box::new(random_expr(rng, depth - 1)));
    }
    let op = BinOp::ALL[rng.gen_range(0..BinOp::ALL.len())];
    let a = random_expr(rng, depth - 1);
    let b = random_expr(rng, depth - 1);
    PriorityExpr::bin(op, a, b)
}

/// Replaces a random subtree of `a` with a random subtree of `b`. The
/// result's leaves all come from the two parents.
pub fn crossover(a: &PriorityExpr, b: &PriorityExpr, rng: &mut ChaCha8Rng) -> PriorityExpr {
    let at = rng.gen_range(0..a.size());
    let donor = b
        .node(rng.gen_range(0..b.size()))
        .expect("index below size")
        .clone();
    a.replace_node(at, &donor)
}

/// One random edit: subtree replacement, constant perturbation, wrapping in
/// a new operator, hoisting a child, or swapping an operator.
pub fn mutate(e: &PriorityExpr, rng: &mut ChaCha8Rng) -> PriorityExpr {
    let at = rng.gen_range(0..e.size());
    let node = e.node(at).expect("index below size").clone();
    let replacement = match rng.gen_range(0..5) {
        0 => random_expr(rng, 2),
        1 => match node {
            PriorityExpr::Lit(k) => PriorityExpr::Lit(k.wrapping_add(if rng.gen_bool(0.5) { 1 } else { -1 })),
            _ => random_leaf(rng),
        },
        2 => {
            let op = BinOp::ALL[rng.gen_range(0..BinOp::ALL.len())];
            let other = random_expr(rng, 1);
            if rng.gen_bool(0.5) {
                PriorityExpr::bin(op, node, other)
            } else {
                PriorityExpr::bin(op, other, node)
            }
        }
        3 => match node {
            PriorityExpr::Digit(inner) => *inner,
            PriorityExpr::Bin(_, a, b) => {
                if rng.gen_bool(0.5) {
                    *a
                } else {
                    *b
                }
            }
            leaf => PriorityExpr::Digit(Box::new(leaf)),
        },
        _ => match node {
            PriorityExpr::Bin(_, a, b) => {
                PriorityExpr::Bin(BinOp::ALL[rng.gen_range(0..BinOp::ALL.len())], a, b)
            }
            _ => random_leaf(rng),
        },
    };
    e.replace_node(at, &replacement)
}

/// The built-in generator: seeded mutation and crossover of one or two
/// parents. The same parents and seed always give the same program.
pub fn propose(parents: &[PriorityExpr], seed: u64) -> PriorityExpr {
    assert!(!parents.is_empty(), "at least one parent required");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..16 {
        let mut child = if parents.len() >= 2 && rng.gen_bool(0.4) {
            crossover(&parents[0], &parents[1], &mut rng)
        } else {
            mutate(&parents[0], &mut rng)
        };
        while rng.gen_bool(0.3) {
            child = mutate(&child, &mut rng);
        }
        if child.size() <= MAX_EXPR_SIZE && !parents.contains(&child) {
            return child;
        }
    }
    random_expr(&mut rng, 3)
}

/// Mixes a run seed with generation and slot numbers (splitmix64 rounds).
pub fn derive_seed(run_seed: u64, generation: u64, slot: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(mix(mix(run_seed) ^ generation) ^ slot)
}

#[derive(Serialize)]
struct Request<'a> {
    parents: &'a [Parent],
    seed: u64,
}

#[derive(Deserialize)]
struct Reply {
    expr: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeneratorError {
    #[error("could not start generator: {0}")]
    Spawn(String),
    #[error("generator did not reply within {0:?}")]
    Timeout(Duration),
    #[error("generator closed its output without a reply")]
    NoReply,
    #[error("malformed reply: {0}")]
    Malformed(String),
}

/// Runs `command` through the shell, writes one JSON request line
/// `{"parents":[{"expr":..,"score":..}],"seed":..}` to its stdin and reads
/// one JSON reply line `{"expr":..}` from its stdout.
pub fn external_propose(
    command: &str,
    parents: &[Parent],
    seed: u64,
    timeout: Duration,
) -> Result<PriorityExpr, GeneratorError> {
    let mut child = Command::new("sh")
        .arg("-c")
        .arg(command)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| GeneratorError::Spawn(e.to_string()))?;
    let request = serde_json::to_string(&Request { parents, seed }).expect("request serializes");
    if let Some(mut stdin) = child.stdin.take() {
        // a generator that exits early surfaces below as a missing reply
        let _ = writeln!(stdin, "{request}");
    }
    let stdout = child.stdout.take().expect("piped stdout");
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let mut line = String::new();
        let read = BufReader::new(stdout).read_line(&mut line);
        let _ = tx.send(read.map(|_| line));
    });
    let reply = rx.recv_timeout(timeout);
    let _ = child.kill();
    let _ = child.wait();
    let line = match reply {
        Ok(Ok(line)) if !line.trim().is_empty() => line,
        Ok(_) => return Err(GeneratorError::NoReply),
        Err(_) => return Err(GeneratorError::Timeout(timeout)),
    };
    let reply: Reply =
        serde_json::from_str(line.trim()).map_err(|e| GeneratorError::Malformed(e.to_string()))?;
    PriorityExpr::parse(&reply.expr).map_err(|e| GeneratorError::Malformed(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proposals_are_reproducible() {
        let parent = vec![PriorityExpr::digit(0)];
        for seed in [0, 1, 42, u64::MAX] {
            assert_eq!(propose(&parent, seed).to_string(), propose(&parent, seed).to_string());
        }
    }

    #[test]
    fn crossover_leaves_come_from_parents() {
        let a = PriorityExpr::digit(0);
        let b = PriorityExpr::digit(1);
        let pool: Vec<PriorityExpr> = a.leaves().into_iter().chain(b.leaves()).collect();
        for seed in 0..200 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let child = crossover(&a, &b, &mut rng);
            assert!(child.leaves().iter().all(|l| pool.contains(l)), "{child}");
        }
    }

    #[test]
    fn seeds_differ_across_slots() {
        assert_ne!(derive_seed(0, 1, 0), derive_seed(0, 1, 1));
        assert_ne!(derive_seed(0, 1, 0), derive_seed(0, 2, 0));
        assert_eq!(derive_seed(7, 3, 5), derive_seed(7, 3, 5));
    }
}
