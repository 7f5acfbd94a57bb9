//! Generate-and-test proof discovery: a CDCL SAT solver with checkable
//! refutations, the Boolean Pythagorean triples encoding, a cap-set
//! laboratory with evolutionary priority-program search, a unit-equational
//! prover built on Knuth-Bendix completion, and a syntactic
//! arithmetical-hierarchy classifier.

pub mod bpt;
pub mod capset;
pub mod equational;
pub mod hierarchy;
pub mod logic;
pub mod sat;
pub mod search;
