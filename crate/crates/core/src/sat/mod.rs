//! Propositional satisfiability: unit propagation, resolution, a CDCL
//! solver and reverse-unit-propagation refutation certificates.

mod certificate;
mod cubes;
mod propagate;
mod resolve;
mod solver;

pub use certificate::{check_certificate, Certificate, CertificateError};
pub use cubes::{cubes, solve_cubes};
pub use propagate::{unit_propagate, PropagationStatus};
pub use resolve::{resolve, ResolveError};
pub use solver::{solve, solve_with, Learning, SolveStats, Solver, SolverConfig};

use crate::logic::{Assignment, Cnf, PartialAssignmentError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A total assignment satisfying every clause.
    Satisfiable(Assignment),
    Unsatisfiable(Certificate),
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Satisfiable(_))
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            Verdict::Satisfiable(m) => Some(m),
            Verdict::Unsatisfiable(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Unsatisfiable(c) => Some(c),
            Verdict::Satisfiable(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("conflict budget exhausted after {conflicts} conflicts")]
    BudgetExhausted { conflicts: u64 },
}

/// True iff every clause has a true literal under the total assignment `a`.
pub fn verify_model(cnf: &Cnf, a: &Assignment) -> Result<bool, PartialAssignmentError> {
    if a.num_vars() < cnf.num_vars() {
        return Err(PartialAssignmentError(a.num_vars() + 1));
    }
    if let Some(v) = (1..=cnf.num_vars()).find(|&v| a.get(v).is_none()) {
        return Err(PartialAssignmentError(v));
    }
    Ok(cnf.clauses().iter().all(|c| c.is_satisfied_by(a)))
}
