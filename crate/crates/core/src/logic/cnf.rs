use std::fmt;

/// A propositional literal in DIMACS convention: `+v` or `-v` for a
/// variable id `v >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(i32);

impl Lit {
    pub fn new(var: u32, positive: bool) -> Lit {
        assert!(var >= 1 && var <= i32::MAX as u32, "variable id out of range");
        Lit(if positive { var as i32 } else { -(var as i32) })
    }

    pub fn pos(var: u32) -> Lit {
        Lit::new(var, true)
    }

    pub fn neg(var: u32) -> Lit {
        Lit::new(var, false)
    }

    /// From a nonzero DIMACS integer.
    pub fn from_dimacs(code: i32) -> Option<Lit> {
        (code != 0 && code != i32::MIN).then_some(Lit(code))
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn negate(self) -> Lit {
        Lit(-self.0)
    }

    /// Dense index `2(v-1) + sign` used by solver tables.
    pub(crate) fn index(self) -> usize {
        ((self.var() as usize - 1) << 1) | usize::from(!self.is_positive())
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        self.negate()
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A disjunction of literals with duplicates removed (first occurrence kept).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Clause {
    lits: Vec<Lit>,
    tautology: bool,
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Clause {
        let mut out: Vec<Lit> = Vec::new();
        let mut tautology = false;
        for l in lits {
            if out.contains(&l) {
                continue;
            }
            if out.contains(&!l) {
                tautology = true;
            }
            out.push(l);
        }
        Clause {
            lits: out,
            tautology,
        }
    }

    pub fn from_dimacs(codes: &[i32]) -> Clause {
        Clause::new(codes.iter().map(|&c| Lit::from_dimacs(c).expect("zero literal")))
    }

    pub fn empty() -> Clause {
        Clause::default()
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    /// True when the clause contains some variable in both polarities.
    pub fn is_tautology(&self) -> bool {
        self.tautology
    }

    pub fn contains(&self, l: Lit) -> bool {
        self.lits.contains(&l)
    }

    pub fn max_var(&self) -> u32 {
        self.lits.iter().map(|l| l.var()).max().unwrap_or(0)
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.lits.iter().any(|&l| a.lit_value(l) == Some(true))
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.lits)
    }
}

/// A conjunction of clauses over variables `1..=num_vars`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Cnf {
    num_vars: u32,
    clauses: Vec<Clause>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("literal {lit} exceeds the variable bound {num_vars}")]
pub struct VarBoundError {
    pub lit: i32,
    pub num_vars: u32,
}

impl Cnf {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Cnf, VarBoundError> {
        for c in &clauses {
            if let Some(&l) = c.lits().iter().find(|l| l.var() > num_vars) {
                return Err(VarBoundError {
                    lit: l.to_dimacs(),
                    num_vars,
                });
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    /// Builds a formula whose variable bound is the largest id used.
    pub fn from_clauses(clauses: Vec<Clause>) -> Cnf {
        let num_vars = clauses.iter().map(Clause::max_var).max().unwrap_or(0);
        Cnf { num_vars, clauses }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn push(&mut self, clause: Clause) -> Result<(), VarBoundError> {
        if let Some(&l) = clause.lits().iter().find(|l| l.var() > self.num_vars) {
            return Err(VarBoundError {
                lit: l.to_dimacs(),
                num_vars: self.num_vars,
            });
        }
        self.clauses.push(clause);
        Ok(())
    }

    /// Conjoins unit clauses, raising the variable bound if needed.
    pub fn with_units(&self, units: &[Lit]) -> Cnf {
        let mut out = self.clone();
        for &l in units {
            out.num_vars = out.num_vars.max(l.var());
            out.clauses.push(Clause::new([l]));
        }
        out
    }
}

/// A (possibly partial) truth assignment to variables `1..=num_vars`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("assignment leaves variable {0} unassigned")]
pub struct PartialAssignmentError(pub u32);

impl Assignment {
    pub fn new(num_vars: u32) -> Assignment {
        Assignment {
            values: vec![None; num_vars as usize],
        }
    }

    /// Total assignment from a list of values for variables 1, 2, ...
    pub fn from_values(values: &[bool]) -> Assignment {
        Assignment {
            values: values.iter().map(|&b| Some(b)).collect(),
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn get(&self, var: u32) -> Option<bool> {
        if var == 0 {
            return None;
        }
        self.values.get(var as usize - 1).copied().flatten()
    }

    /// Sets a variable. Panics when `var` is outside `1..=num_vars`.
    pub fn set(&mut self, var: u32, value: bool) {
        assert!(var >= 1 && var <= self.num_vars(), "variable {var} out of range");
        self.values[var as usize - 1] = Some(value);
    }

    pub fn unset(&mut self, var: u32) {
        if var >= 1 && var <= self.num_vars() {
            self.values[var as usize - 1] = None;
        }
    }

    pub fn assign_lit(&mut self, l: Lit) {
        self.set(l.var(), l.is_positive());
    }

    pub fn lit_value(&self, l: Lit) -> Option<bool> {
        self.get(l.var()).map(|v| v == l.is_positive())
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn assigned_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    /// Every assigned variable of `self` has the same value in `other`.
    pub fn is_subset_of(&self, other: &Assignment) -> bool {
        (1..=self.num_vars()).all(|v| match self.get(v) {
            None => true,
            Some(b) => other.get(v) == Some(b),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, Option<bool>)> + '_ {
        self.values.iter().enumerate().map(|(i, &b)| (i as u32 + 1, b))
    }

    /// Assigned variables as literals in variable order.
    pub fn lits(&self) -> Vec<Lit> {
        self.iter()
            .filter_map(|(v, b)| b.map(|b| Lit::new(v, b)))
            .collect()
    }

    pub fn require_total(&self) -> Result<(), PartialAssignmentError> {
        match self.values.iter().position(Option::is_none) {
            Some(i) => Err(PartialAssignmentError(i as u32 + 1)),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clause_dedup_and_tautology_flag() {
        let c = Clause::from_dimacs(&[1, 2, 1, -2]);
        assert_eq!(c.lits(), &[Lit::pos(1), Lit::pos(2), Lit::neg(2)]);
        assert!(c.is_tautology());
        assert!(!Clause::from_dimacs(&[1, 1, 2]).is_tautology());
    }

    #[test]
    fn cnf_rejects_out_of_bound_literals() {
        let err = Cnf::new(2, vec![Clause::from_dimacs(&[1, -3])]).unwrap_err();
        assert_eq!(err.lit, -3);
    }

    #[test]
    fn assignment_subset_and_totality() {
        let mut a = Assignment::new(3);
        a.set(2, true);
        let b = Assignment::from_values(&[false, true, true]);
        assert!(a.is_subset_of(&b));
        assert!(!a.is_total());
        assert_eq!(a.require_total(), Err(PartialAssignmentError(1)));
        assert!(b.is_total());
        assert_eq!(b.lit_value(Lit::neg(1)), Some(true));
    }
}
