//! Unit-equational reasoning: unification, the lexicographic path order,
//! rewriting, critical pairs, Knuth-Bendix completion, replayable equational
//! proofs, and a budgeted saturation prover with the Robbins, Boolean-algebra
//! and group axioms built in.

mod axioms;
mod complete;
mod critical;
mod equation;
mod lpo;
mod proof;
mod prover;
mod rewrite;
mod subst;

pub use axioms::{parse_goal, Axiom, AxiomError, AxiomSet};
pub use complete::{critical_pairs_unjoined, kb_complete, CompletedRule, Completion, CompletionError};
pub use critical::superpose;
pub use equation::{Equation, RewriteRule, RuleError};
pub use lpo::{lpo_compare, lpo_gt, Precedence, PrecedenceError};
pub use proof::{
    check_proof, check_proof_detailed, format_position, parse_position, Direction, EqProof,
    ProofCheckError, ProofDocument, ProofParseError, ProofStep, ProofTooLong, StepError,
};
pub use prover::{prove, prove_exists, ExistsOutcome, ProveOutcome, ProveStats, ProverConfig};
pub use rewrite::{is_reducible, rewrite, rewrite_bounded, rewrite_root};
pub use subst::{canonical_vars, match_term, mgu, shift_vars, Substitution};
