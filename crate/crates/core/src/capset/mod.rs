//! Cap sets in `(Z/3)^n`: the cap predicate, the `{0,1}^n` construction,
//! priority-driven greedy construction, an exact branch-and-bound oracle for
//! small `n`, and an evolutionary search over priority programs.

mod evolve;
mod exact;
mod expr;
mod generator;
mod greedy;
mod vector;

pub use evolve::{
    evolve, Candidate, EvolveConfig, EvolveError, EvolveOutcome, Generator, LogRecord, Population,
    Provenance,
};
pub use exact::{exact_cap, ExactCap, MAX_EXACT_DIM};
pub use expr::{BinOp, ExprError, PriorityExpr};
pub use generator::{
    crossover, derive_seed, external_propose, mutate, propose, random_expr, GeneratorError, Parent,
    MAX_EXPR_SIZE,
};
pub use greedy::{greedy, greedy_with_limit, score, DimensionError, MAX_GREEDY_DIM};
pub use vector::{binary_cap, is_cap, CapSetCandidate, Vec3, VectorError};
