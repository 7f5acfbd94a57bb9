use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::expr::PriorityExpr;
use super::generator::{derive_seed, external_propose, propose, random_expr, Parent};
use super::greedy::{check_dim, greedy_indices, DimensionError, Space, MAX_GREEDY_DIM};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Baseline,
    /// Shell command speaking the one-line JSON request/reply protocol.
    External { command: String, timeout: Duration },
}

impl Generator {
    fn id(&self) -> &'static str {
        match self {
            Generator::Baseline => "baseline",
            Generator::External { .. } => "external",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolveConfig {
    pub n: usize,
    pub capacity: usize,
    pub generator: Generator,
    pub seed: u64,
    /// Total number of programs scored, including the initial population.
    pub eval_budget: usize,
    /// Programs proposed per generation.
    pub batch: usize,
    pub tournament: usize,
    /// Stop as soon as the best score reaches this value.
    pub target: Option<usize>,
    /// Worker threads for scoring; does not affect results.
    pub jobs: usize,
}

impl EvolveConfig {
    pub fn new(n: usize, seed: u64, eval_budget: usize) -> EvolveConfig {
        EvolveConfig {
            n,
            capacity: 32,
            generator: Generator::Baseline,
            seed,
            eval_budget,
            batch: 8,
            tournament: 3,
            target: None,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub generator: &'static str,
    pub generation: u64,
}

/// A scored program; the score is the size of its greedy cap set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub expr: PriorityExpr,
    pub score: usize,
    pub provenance: Provenance,
}

/// One run-log line. Successful proposals carry `expr` and `score`; rejected
/// generator replies carry `error`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogRecord {
    pub generation: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub score: Option<usize>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Bounded population with elitism: a newcomer replaces the oldest of the
/// lowest-scoring members only if it scores at least as well, so the best
/// score present never drops.
#[derive(Clone, Debug)]
pub struct Population {
    capacity: usize,
    members: Vec<(u64, Candidate)>,
    next_id: u64,
}

impl Population {
    pub fn new(capacity: usize) -> Population {
        Population {
            capacity: capacity.max(1),
            members: Vec::new(),
            next_id: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn members(&self) -> impl Iterator<Item = &Candidate> {
        self.members.iter().map(|(_, c)| c)
    }

    /// Highest score; among equals the most recently inserted.
    pub fn best(&self) -> Option<&Candidate> {
        self.members
            .iter()
            .max_by_key(|(id, c)| (c.score, *id))
            .map(|(_, c)| c)
    }

    /// Returns whether the candidate was admitted.
    pub fn insert(&mut self, cand: Candidate) -> bool {
        if self.members.iter().any(|(_, c)| c.expr == cand.expr) {
            return false;
        }
        let id = self.next_id;
        self.next_id += 1;
        if self.members.len() < self.capacity {
            self.members.push((id, cand));
            return true;
        }
        let worst = self
            .members
            .iter()
            .enumerate()
            .min_by_key(|(_, (id, c))| (c.score, *id))
            .map(|(i, _)| i)
            .expect("population is full, hence nonempty");
        if cand.score >= self.members[worst].1.score {
            self.members[worst] = (id, cand);
            true
        } else {
            false
        }
    }

    /// Tournament of size `k`: highest score wins, ties go to the newer member.
    pub fn select(&self, k: usize, rng: &mut ChaCha8Rng) -> &Candidate {
        let mut winner: Option<&(u64, Candidate)> = None;
        for _ in 0..k.max(1) {
            let pick = &self.members[rng.gen_range(0..self.members.len())];
            winner = match winner {
                Some(w) if (w.1.score, w.0) >= (pick.1.score, pick.0) => Some(w),
                _ => Some(pick),
            };
        }
        &winner.expect("nonempty population").1
    }
}

#[derive(Clone, Debug)]
pub struct EvolveOutcome {
    pub best: Candidate,
    pub log: Vec<LogRecord>,
    /// Best score after each generation, starting with generation 0.
    pub best_history: Vec<usize>,
    pub evaluations: usize,
}

impl EvolveOutcome {
    /// The run log as JSON lines.
    pub fn log_jsonl(&self) -> String {
        self.log
            .iter()
            .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvolveError {
    #[error(transparent)]
    Dimension(#[from] DimensionError),
    #[error("evaluation budget must be at least 1")]
    EmptyBudget,
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

struct Slot {
    seed: u64,
    parents: Vec<Candidate>,
}

/// Evolutionary search over priority programs.
///
/// Each generation the coordinator draws parents by tournament for every
/// slot, the generator proposes one program per slot, programs are scored
/// (in parallel for the baseline generator), and results are logged and
/// offered to the population in slot order. Per-slot seeds derive from
/// `(seed, generation, slot)`, so logs are identical for any `jobs`.
pub fn evolve(config: &EvolveConfig) -> Result<EvolveOutcome, EvolveError> {
    check_dim(config.n, MAX_GREEDY_DIM)?;
    if config.eval_budget == 0 {
        return Err(EvolveError::EmptyBudget);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| EvolveError::Pool(e.to_string()))?;
    pool.install(|| run(config))
}

fn run(config: &EvolveConfig) -> Result<EvolveOutcome, EvolveError> {
    let space = Space::new(config.n);
    let score = |e: &PriorityExpr| greedy_indices(e, &space).len();
    let mut population = Population::new(config.capacity);
    let mut log = Vec::new();
    let mut history = Vec::new();
    let mut evaluations = 0usize;

    // generation 0: the constant program plus random programs
    let initial: Vec<(u64, PriorityExpr)> = (0..config.batch.max(1).min(config.eval_budget))
        .map(|slot| {
            let seed = derive_seed(config.seed, 0, slot as u64);
            let expr = if slot == 0 {
                PriorityExpr::Lit(0)
            } else {
                random_expr(&mut ChaCha8Rng::seed_from_u64(seed), 3)
            };
            (seed, expr)
        })
        .collect();
    let scored: Vec<usize> = initial.par_iter().map(|(_, e)| score(e)).collect();
    for ((seed, expr), s) in initial.into_iter().zip(scored) {
        evaluations += 1;
        log.push(LogRecord {
            generation: 0,
            expr: Some(expr.to_string()),
            score: Some(s),
            seed,
            error: None,
        });
        population.insert(Candidate {
            expr,
            score: s,
            provenance: Provenance {
                generator: "seed",
                generation: 0,
            },
        });
    }
    let best_score = |p: &Population| p.best().map_or(0, |c| c.score);
    history.push(best_score(&population));

    let mut generation = 0u64;
    while evaluations < config.eval_budget
        && config.target.is_none_or(|t| best_score(&population) < t)
    {
        generation += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, generation, u64::MAX));
        let slots: Vec<Slot> = (0..config.batch.max(1).min(config.eval_budget - evaluations))
            .map(|slot| {
                let first = population.select(config.tournament, &mut rng).clone();
                let mut parents = vec![first];
                if population.len() >= 2 {
                    let second = population.select(config.tournament, &mut rng).clone();
                    if second.expr != parents[0].expr {
                        parents.push(second);
                    }
                }
                Slot {
                    seed: derive_seed(config.seed, generation, slot as u64),
                    parents,
                }
            })
            .collect();

        let proposals: Vec<Result<PriorityExpr, String>> = match &config.generator {
            Generator::Baseline => slots
                .par_iter()
                .map(|s| {
                    let exprs: Vec<PriorityExpr> = s.parents.iter().map(|p| p.expr.clone()).collect();
                    Ok(propose(&exprs, s.seed))
                })
                .collect(),
            Generator::External { command, timeout } => slots
                .iter()
                .map(|s| {
                    let parents: Vec<Parent> = s
                        .parents
                        .iter()
                        .map(|p| Parent {
                            expr: p.expr.to_string(),
                            score: p.score,
                        })
                        .collect();
                    external_propose(command, &parents, s.seed, *timeout).map_err(|e| e.to_string())
                })
                .collect(),
        };
        let scores: Vec<Option<usize>> = proposals
            .par_iter()
            .map(|p| p.as_ref().ok().map(&score))
            .collect();

        for ((slot, proposal), s) in slots.iter().zip(proposals).zip(scores) {
            evaluations += 1;
            match proposal {
                Ok(expr) => {
                    let s = s.expect("scored");
                    log.push(LogRecord {
                        generation,
                        expr: Some(expr.to_string()),
                        score: Some(s),
                        seed: slot.seed,
                        error: None,
                    });
                    population.insert(Candidate {
                        expr,
                        score: s,
                        provenance: Provenance {
                            generator: config.generator.id(),
                            generation,
                        },
                    });
                }
                Err(error) => log.push(LogRecord {
                    generation,
                    expr: None,
                    score: None,
                    seed: slot.seed,
                    error: Some(error),
                }),
            }
        }
        history.push(best_score(&population));
    }

    let best = population.best().expect("initial population is nonempty").clone();
    Ok(EvolveOutcome {
        best,
        log,
        best_history: history,
        evaluations,
    })
}
