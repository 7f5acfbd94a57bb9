use std::collections::VecDeque;

use crate::logic::Term;

use super::axioms::Axiom;
use super::critical::{overlaps, Oriented};
use super::equation::{Equation, RewriteRule};
use super::lpo::{lpo_gt, Precedence};
use super::proof::{EqProof, Just, ProofTooLong, J};
use super::rewrite::{normalize_just, rewrite};
use super::subst::{canonical_vars, match_term};

const PROOF_LIMIT: usize = 1_000_000;

/// A rule of a completed system with a proof of `lhs = rhs` from the axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletedRule {
    pub rule: RewriteRule,
    pub proof: EqProof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub rules: Vec<CompletedRule>,
    /// Equations processed.
    pub steps: usize,
}

impl Completion {
    pub fn rewrite_rules(&self) -> Vec<RewriteRule> {
        self.rules.iter().map(|r| r.rule.clone()).collect()
    }

    pub fn normalize(&self, t: &Term) -> Term {
        rewrite(t, &self.rewrite_rules())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompletionError {
    #[error("cannot orient `{equation}` under the precedence")]
    Unorientable {
        equation: Equation,
        rules: Vec<RewriteRule>,
    },
    #[error("budget of {steps} steps exhausted with {} rules and {} pending equations", rules.len(), pending.len())]
    BudgetExhausted {
        steps: usize,
        rules: Vec<RewriteRule>,
        pending: Vec<Equation>,
    },
    #[error(transparent)]
    ProofTooLong(#[from] ProofTooLong),
}

struct Rule {
    lhs: Term,
    rhs: Term,
    just: J,
}

impl Rule {
    fn oriented(&self) -> Oriented {
        Oriented {
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
            just: self.just.clone(),
        }
    }
}

/// Knuth-Bendix completion. Equations are processed smallest first; each is
/// normalized, oriented by LPO and added as a rule, existing rules are
/// interreduced, and critical pairs with every rule are queued. `budget`
/// bounds the number of equations processed.
pub fn kb_complete(
    axioms: &[Axiom],
    prec: &Precedence,
    budget: usize,
) -> Result<Completion, CompletionError> {
    let mut pending: VecDeque<J> = axioms.iter().map(Just::axiom).collect();
    let mut rules: Vec<Rule> = Vec::new();
    let mut steps = 0;
    loop {
        while let Some(j) = pick_smallest(&mut pending) {
            if steps >= budget {
                pending.push_front(j);
                return Err(CompletionError::BudgetExhausted {
                    steps,
                    rules: rules.iter().map(to_rule).collect(),
                    pending: pending.iter().map(|j| j.equation()).collect(),
                });
            }
            steps += 1;
            let (s, js) = normalize_with(&j.lhs, &rules);
            let (t, jt) = normalize_with(&j.rhs, &rules);
            if s == t {
                continue;
            }
            let eq = Just::trans(&Just::trans(&Just::sym(&js), &j), &jt);
            let oriented = if lpo_gt(&s, &t, prec) {
                eq
            } else if lpo_gt(&t, &s, prec) {
                Just::sym(&eq)
            } else {
                return Err(CompletionError::Unorientable {
                    equation: Equation::new(s, t),
                    rules: rules.iter().map(to_rule).collect(),
                });
            };
            let (_, rho) = canonical_vars(&[&oriented.lhs, &oriented.rhs]);
            let just = Just::inst(&oriented, &rho);
            let new = Rule {
                lhs: just.lhs.clone(),
                rhs: just.rhs.clone(),
                just,
            };

            // interreduce: rules whose left side the new rule reduces go back
            // to the queue, the others get their right side renormalized
            let mut kept = Vec::new();
            for old in rules.drain(..) {
                if reduces(&new.lhs, &old.lhs) {
                    pending.push_back(old.just);
                } else {
                    kept.push(old);
                }
            }
            rules = kept;
            rules.push(new);
            for i in 0..rules.len() {
                let (r, jr) = normalize_with(&rules[i].rhs, &rules);
                if r != rules[i].rhs {
                    rules[i].just = Just::trans(&rules[i].just, &jr);
                    rules[i].rhs = r;
                }
            }

            let newest = rules.last().expect("just pushed").oriented();
            for (i, other) in rules.iter().enumerate() {
                let same = i + 1 == rules.len();
                let other = other.oriented();
                for ov in overlaps(&other, &newest, same) {
                    pending.push_back(ov);
                }
                if !same {
                    for ov in overlaps(&newest, &other, false) {
                        pending.push_back(ov);
                    }
                }
            }
        }

        // safety net: every critical pair of the final system must join
        let unjoined = unjoinable_pairs(&rules);
        if unjoined.is_empty() {
            break;
        }
        pending.extend(unjoined);
    }

    let rules = rules
        .iter()
        .map(|r| {
            Ok(CompletedRule {
                rule: to_rule(r),
                proof: r.just.flatten(PROOF_LIMIT)?,
            })
        })
        .collect::<Result<Vec<_>, ProofTooLong>>()?;
    Ok(Completion { rules, steps })
}

fn to_rule(r: &Rule) -> RewriteRule {
    RewriteRule {
        lhs: r.lhs.clone(),
        rhs: r.rhs.clone(),
    }
}

fn pick_smallest(pending: &mut VecDeque<J>) -> Option<J> {
    let best = pending
        .iter()
        .enumerate()
        .min_by_key(|(i, j)| (j.lhs.size() + j.rhs.size(), *i))
        .map(|(i, _)| i)?;
    pending.remove(best)
}

/// Does `rule_lhs` match some subterm of `t`?
fn reduces(rule_lhs: &Term, t: &Term) -> bool {
    match_term(rule_lhs, t).is_some() || t.args().iter().any(|a| reduces(rule_lhs, a))
}

fn normalize_with(t: &Term, rules: &[Rule]) -> (Term, J) {
    normalize_just(t, &mut |s: &Term| {
        rules.iter().find_map(|r| {
            if r.lhs.head() != s.head() {
                return None;
            }
            let sigma = match_term(&r.lhs, s)?;
            let j = Just::inst(&r.just, &sigma);
            Some((j.rhs.clone(), j))
        })
    })
}

fn unjoinable_pairs(rules: &[Rule]) -> Vec<J> {
    let mut out = Vec::new();
    for (i, a) in rules.iter().enumerate() {
        for (k, b) in rules.iter().enumerate() {
            for ov in overlaps(&a.oriented(), &b.oriented(), i == k) {
                let (l, _) = normalize_with(&ov.lhs, rules);
                let (r, _) = normalize_with(&ov.rhs, rules);
                if l != r {
                    out.push(ov);
                }
            }
        }
    }
    out
}

/// Critical pairs of `rules` that do not join; empty for a locally
/// confluent system.
pub fn critical_pairs_unjoined(rules: &[RewriteRule]) -> Vec<Equation> {
    let mut out = Vec::new();
    for a in rules {
        for b in rules {
            for cp in super::critical::superpose(a, b) {
                if rewrite(&cp.lhs, rules) != rewrite(&cp.rhs, rules) {
                    out.push(cp);
                }
            }
        }
    }
    out
}
