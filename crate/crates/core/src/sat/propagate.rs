use crate::logic::{Assignment, Cnf};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropagationStatus {
    /// Some clause has every literal false.
    Conflict,
    /// Fixpoint reached with no falsified clause.
    Stable,
}

/// Extends `a` by repeatedly satisfying unit clauses until nothing changes or
/// a clause is falsified.
///
/// This is the plain clause-scanning formulation; the solver uses its own
/// watched-literal propagation.
pub fn unit_propagate(cnf: &Cnf, a: &Assignment) -> (Assignment, PropagationStatus) {
    let mut out = if a.num_vars() >= cnf.num_vars() {
        a.clone()
    } else {
        let mut wider = Assignment::new(cnf.num_vars());
        for (v, b) in a.iter() {
            if let Some(b) = b {
                wider.set(v, b);
            }
        }
        wider
    };
    loop {
        let mut changed = false;
        for clause in cnf.clauses() {
            let mut unassigned = None;
            let mut open = 0;
            let mut satisfied = false;
            for &l in clause.lits() {
                match out.lit_value(l) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        open += 1;
                        unassigned = Some(l);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match open {
                0 => return (out, PropagationStatus::Conflict),
                1 => {
                    out.assign_lit(unassigned.expect("one open literal"));
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return (out, PropagationStatus::Stable);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Clause;

    // p=1, q=2, r=3, s=4
    fn phi0() -> Cnf {
        Cnf::new(
            4,
            vec![
                Clause::from_dimacs(&[1, 2]),
                Clause::from_dimacs(&[-1, 3]),
                Clause::from_dimacs(&[-3, 4]),
                Clause::from_dimacs(&[1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn propagation_chain_sets_p_r_s() {
        let (a, st) = unit_propagate(&phi0(), &Assignment::new(4));
        assert_eq!(st, PropagationStatus::Stable);
        assert_eq!(a.get(1), Some(true));
        assert_eq!(a.get(3), Some(true));
        assert_eq!(a.get(4), Some(true));
        assert_eq!(a.get(2), None);
    }

    #[test]
    fn immediate_clash() {
        let cnf = Cnf::new(1, vec![Clause::from_dimacs(&[1]), Clause::from_dimacs(&[-1])]).unwrap();
        assert_eq!(unit_propagate(&cnf, &Assignment::new(1)).1, PropagationStatus::Conflict);
    }

    #[test]
    fn no_units_is_identity() {
        let cnf = Cnf::new(2, vec![Clause::from_dimacs(&[1, 2]), Clause::from_dimacs(&[-1, -2])]).unwrap();
        let a = Assignment::new(2);
        assert_eq!(unit_propagate(&cnf, &a), (a, PropagationStatus::Stable));
    }

    #[test]
    fn empty_clause_is_a_conflict() {
        let cnf = Cnf::new(1, vec![Clause::empty()]).unwrap();
        assert_eq!(unit_propagate(&cnf, &Assignment::new(1)).1, PropagationStatus::Conflict);
    }
}
