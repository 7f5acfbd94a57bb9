use crate::logic::{Term, Var};

use super::equation::{Equation, RewriteRule};
use super::proof::{Just, J};
use super::subst::{canonical_vars, mgu, shift_vars, Substitution};

/// A rule-like pair with its justification; `lhs = rhs` is proved by `just`.
#[derive(Clone, Debug)]
pub(crate) struct Oriented {
    pub lhs: Term,
    pub rhs: Term,
    pub just: J,
}

impl Oriented {
    pub fn from_just(just: &J) -> Oriented {
        Oriented {
            lhs: just.lhs.clone(),
            rhs: just.rhs.clone(),
            just: just.clone(),
        }
    }

    pub fn reversed(&self) -> Oriented {
        Oriented::from_just(&Just::sym(&self.just))
    }
}

/// All critical pairs from unifying `inner.lhs` with non-variable subterms of
/// `outer.lhs`, each justifying `outer.rhs σ = outer.lhs[inner.rhs]_p σ`.
/// The inner rule is renamed apart first. With `same` set, the root overlap
/// of a rule with itself is skipped.
pub(crate) fn overlaps(outer: &Oriented, inner: &Oriented, same: bool) -> Vec<J> {
    if inner.lhs.is_var() || outer.lhs.is_var() {
        return Vec::new();
    }
    let offset = outer
        .lhs
        .max_var()
        .into_iter()
        .chain(outer.rhs.max_var())
        .map(|v| v.0 + 1)
        .max()
        .unwrap_or(0);
    let mut inner_vars = Vec::new();
    inner.lhs.vars_in_order(&mut inner_vars);
    inner.rhs.vars_in_order(&mut inner_vars);
    let shift = Substitution::from_pairs(
        inner_vars
            .iter()
            .map(|v| (*v, Term::Var(Var(v.0 + offset)))),
    );
    let inner_lhs = shift_vars(&inner.lhs, offset);
    let inner_just = Just::inst(&inner.just, &shift);
    let mut out = Vec::new();
    for pos in outer.lhs.app_positions() {
        if same && pos.is_empty() {
            continue;
        }
        let sub = outer.lhs.subterm(&pos).expect("position from term");
        if sub.head() != inner_lhs.head() {
            continue;
        }
        let Some(sigma) = mgu(sub, &inner_lhs) else {
            continue;
        };
        let outer_step = Just::inst(&outer.just, &sigma);
        let inner_step = Just::inst(&inner_just, &sigma);
        let peak = outer_step.lhs.clone();
        let down = Just::cong(&peak, &pos, &inner_step);
        let just = Just::trans(&Just::sym(&outer_step), &down);
        if just.lhs == just.rhs {
            continue;
        }
        out.push(just);
    }
    out
}

/// Critical pairs between two rules in both roles, with variables renamed to
/// canonical form. Trivial pairs are dropped.
pub fn superpose(r1: &RewriteRule, r2: &RewriteRule) -> Vec<Equation> {
    let as_oriented = |r: &RewriteRule| {
        let eq = r.equation();
        let ax = super::axioms::Axiom {
            id: String::new(),
            equation: eq,
        };
        Oriented::from_just(&Just::axiom(&ax))
    };
    let (o1, o2) = (as_oriented(r1), as_oriented(r2));
    let same = r1 == r2;
    let mut out: Vec<Equation> = Vec::new();
    let mut both = overlaps(&o2, &o1, same);
    if !same {
        both.extend(overlaps(&o1, &o2, false));
    }
    for ov in both {
        let (canon, _) = canonical_vars(&[&ov.lhs, &ov.rhs]);
        let eq = Equation::new(canon[0].clone(), canon[1].clone());
        if !out.contains(&eq) {
            out.push(eq);
        }
    }
    out
}
