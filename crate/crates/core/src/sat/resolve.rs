use crate::logic::{Clause, Lit};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolveError {
    #[error("pivot {pivot} must occur positively in the first clause and negatively in the second")]
    PivotAbsent { pivot: u32 },
}

/// Binary resolution on `pivot`: from `C ∨ p` and `¬p ∨ D` derive `C ∨ D`.
pub fn resolve(c1: &Clause, c2: &Clause, pivot: u32) -> Result<Clause, ResolveError> {
    if pivot == 0 || !c1.contains(Lit::pos(pivot)) || !c2.contains(Lit::neg(pivot)) {
        return Err(ResolveError::PivotAbsent { pivot });
    }
    let left = c1.lits().iter().filter(|l| **l != Lit::pos(pivot));
    let right = c2.lits().iter().filter(|l| **l != Lit::neg(pivot));
    Ok(Clause::new(left.chain(right).copied()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_instance() {
        // (q ∨ p), (¬p ∨ r) ⊢ q ∨ r   with p=1, q=2, r=3
        let r = resolve(&Clause::from_dimacs(&[2, 1]), &Clause::from_dimacs(&[-1, 3]), 1).unwrap();
        assert_eq!(r, Clause::from_dimacs(&[2, 3]));
    }

    #[test]
    fn refutation_step() {
        let r = resolve(&Clause::from_dimacs(&[1]), &Clause::from_dimacs(&[-1]), 1).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn union_deduplicates() {
        let r = resolve(&Clause::from_dimacs(&[1, 2]), &Clause::from_dimacs(&[-1, 2]), 1).unwrap();
        assert_eq!(r, Clause::from_dimacs(&[2]));
    }

    #[test]
    fn pivot_must_be_present() {
        let err = resolve(&Clause::from_dimacs(&[-1, 2]), &Clause::from_dimacs(&[-1]), 1);
        assert_eq!(err, Err(ResolveError::PivotAbsent { pivot: 1 }));
        assert!(resolve(&Clause::from_dimacs(&[1]), &Clause::from_dimacs(&[1]), 1).is_err());
    }
}
