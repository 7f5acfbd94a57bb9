//! Shared syntax: first-order terms over small algebraic signatures, and
//! propositional clauses, CNF formulas and assignments with DIMACS I/O.

mod cnf;
mod dimacs;
mod signature;
mod symbol;
mod term;

pub use cnf::{Assignment, Clause, Cnf, Lit, PartialAssignmentError, VarBoundError};
pub use dimacs::{parse_dimacs, write_clause_line, write_dimacs, DimacsError};
pub use signature::Signature;
pub use symbol::Symbol;
pub use term::{parse_term, Position, Term, TermError, Var};
