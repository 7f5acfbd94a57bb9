use crate::logic::Term;

use super::equation::RewriteRule;
use super::proof::{Just, J};
use super::subst::{match_term, Substitution};

/// First rule (in order) whose left side matches `t` at the root.
pub fn rewrite_root(t: &Term, rules: &[RewriteRule]) -> Option<(usize, Substitution, Term)> {
    let head = t.head()?;
    rules.iter().enumerate().find_map(|(i, r)| {
        if r.lhs.head() != Some(head) {
            return None;
        }
        let sigma = match_term(&r.lhs, t)?;
        let out = sigma.apply(&r.rhs);
        Some((i, sigma, out))
    })
}

/// Normal form under leftmost-innermost rewriting: arguments are normalized
/// left to right before the root is tried.
pub fn rewrite(t: &Term, rules: &[RewriteRule]) -> Term {
    let mut steps = 0;
    normalize(t, rules, &mut steps, usize::MAX).expect("unbounded")
}

/// Like [`rewrite`] but gives up after `max_steps` rewrite steps; returns the
/// normal form and the number of steps taken.
pub fn rewrite_bounded(t: &Term, rules: &[RewriteRule], max_steps: usize) -> Option<(Term, usize)> {
    let mut steps = 0;
    let nf = normalize(t, rules, &mut steps, max_steps)?;
    Some((nf, steps))
}

fn normalize(t: &Term, rules: &[RewriteRule], steps: &mut usize, max: usize) -> Option<Term> {
    let cur = match t {
        Term::Var(_) => return Some(t.clone()),
        Term::App(f, args) => Term::App(
            *f,
            args.iter()
                .map(|a| normalize(a, rules, steps, max))
                .collect::<Option<Vec<_>>>()?,
        ),
    };
    match rewrite_root(&cur, rules) {
        None => Some(cur),
        Some((_, _, next)) => {
            *steps += 1;
            if *steps > max {
                return None;
            }
            normalize(&next, rules, steps, max)
        }
    }
}

/// True when some rule applies somewhere in `t`.
pub fn is_reducible(t: &Term, rules: &[RewriteRule]) -> bool {
    rewrite_root(t, rules).is_some() || t.args().iter().any(|a| is_reducible(a, rules))
}

/// Leftmost-innermost normalization that also builds a justification of
/// `t = nf`. `root` proposes a root step with its justification.
pub(crate) fn normalize_just(t: &Term, root: &mut dyn FnMut(&Term) -> Option<(Term, J)>) -> (Term, J) {
    let Term::App(_, args) = t else {
        return (t.clone(), Just::refl(t));
    };
    let mut cur = t.clone();
    let mut proof = Just::refl(t);
    for (i, arg) in args.iter().enumerate() {
        let (a, ja) = normalize_just(arg, root);
        if a != *arg {
            let step = Just::cong(&cur, &[i], &ja);
            cur = step.rhs.clone();
            proof = Just::trans(&proof, &step);
        }
    }
    match root(&cur) {
        None => (cur, proof),
        Some((next, j)) => {
            let proof = Just::trans(&proof, &j);
            let (nf, rest) = normalize_just(&next, root);
            (nf, Just::trans(&proof, &rest))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Signature;

    fn sig() -> Signature {
        Signature::boolean().with_constants(["a", "b"])
    }

    fn rule(l: &str, r: &str) -> RewriteRule {
        RewriteRule::new(Term::parse(l, &sig()).unwrap(), Term::parse(r, &sig()).unwrap()).unwrap()
    }

    #[test]
    fn idempotence_rule() {
        let rules = [rule("x v x", "x")];
        let t = Term::parse("(a v a) v (a v a)", &sig()).unwrap();
        let (nf, steps) = rewrite_bounded(&t, &rules, 10).unwrap();
        assert_eq!(nf.to_string(), "a");
        assert_eq!(steps, 3);
    }

    #[test]
    fn no_rule_applies() {
        let rules = [rule("x v x", "x")];
        let t = Term::parse("a v b", &sig()).unwrap();
        assert_eq!(rewrite(&t, &rules), t);
        assert!(!is_reducible(&t, &rules));
    }

    #[test]
    fn innermost_order() {
        // the inner redex fires first, so the outer rule never sees `--a`
        let rules = [rule("--x", "x"), rule("-(a v x)", "b")];
        let t = Term::parse("-(a v --a)", &sig()).unwrap();
        assert_eq!(rewrite(&t, &rules).to_string(), "b");
    }
}
