use std::collections::BTreeSet;

use super::formula::{ArithFormula, HierarchyClass, Quantifier};

type Prefix = Vec<(Quantifier, String)>;

/// Prenex normal form with respect to unbounded quantifiers.
///
/// Implications and equivalences are expanded to `~`, `&`, `|`. Bounded
/// quantifiers over a formula without unbounded quantifiers stay in the
/// matrix; a bounded quantifier whose body has unbounded quantifiers is
/// rewritten as an unbounded one with its bound as a guard
/// (`forall x < t. A` becomes `forall x. ~(x < t) | A`). Unbounded
/// variables that clash with any other name get a fresh `_k` suffix.
/// Prefixes of the two sides of `&`/`|` are merged to minimize the
/// number of alternations, taking the left block first on ties.
pub fn prenexify(f: &ArithFormula) -> ArithFormula {
    let expanded = expand(f);
    let mut used = BTreeSet::new();
    collect_fixed_names(&expanded, &mut used);
    let renamed = rename_unbounded(&expanded, &mut used);
    let (prefix, matrix) = pull(&renamed);
    prefix
        .into_iter()
        .rev()
        .fold(matrix, |body, (q, v)| ArithFormula::quant(q, &v, None, body))
}

/// Counts alternation blocks of unbounded quantifiers in the prenex form.
pub fn classify(f: &ArithFormula) -> HierarchyClass {
    let p = prenexify(f);
    let mut blocks = 0u32;
    let mut first = None;
    let mut last = None;
    let mut cur = &p;
    while let ArithFormula::Quant { q, bound: None, body, .. } = cur {
        if last != Some(*q) {
            blocks += 1;
            last = Some(*q);
        }
        first.get_or_insert(*q);
        cur = body;
    }
    match first {
        None => HierarchyClass::Delta0,
        Some(Quantifier::Exists) => HierarchyClass::Sigma(blocks),
        Some(Quantifier::Forall) => HierarchyClass::Pi(blocks),
    }
}

/// Expands `->`/`<->` and turns bounded quantifiers over non-Delta0 bodies
/// into guarded unbounded ones.
fn expand(f: &ArithFormula) -> ArithFormula {
    use ArithFormula as F;
    match f {
        F::True | F::False | F::Atom(_) => f.clone(),
        F::Not(a) => F::not(expand(a)),
        F::And(a, b) => F::and(expand(a), expand(b)),
        F::Or(a, b) => F::or(expand(a), expand(b)),
        F::Implies(a, b) => F::or(F::not(expand(a)), expand(b)),
        F::Iff(a, b) => {
            let (a, b) = (expand(a), expand(b));
            F::and(F::or(F::not(a.clone()), b.clone()), F::or(a, F::not(b)))
        }
        F::Quant { q, var, bound, body } => {
            let body = expand(body);
            match bound {
                Some(b) if !body.is_delta0() => {
                    let guard = b.guard(var);
                    let guarded = match q {
                        Quantifier::Forall => F::or(F::not(guard), body),
                        Quantifier::Exists => F::and(guard, body),
                    };
                    F::quant(*q, var, None, guarded)
                }
                _ => F::quant(*q, var, bound.clone(), body),
            }
        }
    }
}

/// Names that never move: free variables and bounded-quantifier variables.
fn collect_fixed_names(f: &ArithFormula, out: &mut BTreeSet<String>) {
    out.extend(f.free_vars());
    fn walk(f: &ArithFormula, out: &mut BTreeSet<String>) {
        use ArithFormula as F;
        match f {
            F::True | F::False | F::Atom(_) => {}
            F::Not(a) => walk(a, out),
            F::And(a, b) | F::Or(a, b) | F::Implies(a, b) | F::Iff(a, b) => {
                walk(a, out);
                walk(b, out);
            }
            F::Quant { var, bound, body, .. } => {
                if bound.is_some() {
                    out.insert(var.clone());
                }
                walk(body, out);
            }
        }
    }
    walk(f, out);
}

fn fresh(base: &str, used: &BTreeSet<String>) -> String {
    (1..)
        .map(|k| format!("{base}_{k}"))
        .find(|n| !used.contains(n))
        .expect("unbounded supply")
}

/// Gives every unbounded quantifier a name used nowhere else, visiting
/// quantifiers in pre-order.
fn rename_unbounded(f: &ArithFormula, used: &mut BTreeSet<String>) -> ArithFormula {
    use ArithFormula as F;
    match f {
        F::True | F::False | F::Atom(_) => f.clone(),
        F::Not(a) => F::not(rename_unbounded(a, used)),
        F::And(a, b) => {
            let a = rename_unbounded(a, used);
            F::and(a, rename_unbounded(b, used))
        }
        F::Or(a, b) => {
            let a = rename_unbounded(a, used);
            F::or(a, rename_unbounded(b, used))
        }
        F::Implies(..) | F::Iff(..) => unreachable!("expanded before renaming"),
        F::Quant { q, var, bound: Some(b), body } => {
            F::quant(*q, var, Some(b.clone()), rename_unbounded(body, used))
        }
        F::Quant { q, var, bound: None, body } => {
            let name = if used.contains(var) { fresh(var, used) } else { var.clone() };
            used.insert(name.clone());
            let body = if &name == var {
                (**body).clone()
            } else {
                body.rename_free(var, &name)
            };
            F::quant(*q, &name, None, rename_unbounded(&body, used))
        }
    }
}

fn pull(f: &ArithFormula) -> (Prefix, ArithFormula) {
    use ArithFormula as F;
    match f {
        F::Not(a) => {
            let (p, m) = pull(a);
            (p.into_iter().map(|(q, v)| (q.dual(), v)).collect(), F::not(m))
        }
        F::And(a, b) | F::Or(a, b) => {
            let (pa, ma) = pull(a);
            let (pb, mb) = pull(b);
            let m = if matches!(f, F::And(..)) { F::and(ma, mb) } else { F::or(ma, mb) };
            (merge(blocks(pa), blocks(pb)), m)
        }
        F::Quant { q, var, bound: None, body } => {
            let (mut p, m) = pull(body);
            p.insert(0, (*q, var.clone()));
            (p, m)
        }
        _ => (Vec::new(), f.clone()),
    }
}

fn blocks(p: Prefix) -> Vec<Prefix> {
    let mut out: Vec<Prefix> = Vec::new();
    for (q, v) in p {
        match out.last_mut() {
            Some(b) if b[0].0 == q => b.push((q, v)),
            _ => out.push(vec![(q, v)]),
        }
    }
    out
}

fn merge(a: Vec<Prefix>, b: Vec<Prefix>) -> Prefix {
    let (mut i, mut k) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() || k < b.len() {
        if i == a.len() {
            out.extend(b[k].iter().cloned());
            k += 1;
        } else if k == b.len() {
            out.extend(a[i].iter().cloned());
            i += 1;
        } else if a[i][0].0 == b[k][0].0 {
            out.extend(a[i].iter().cloned());
            out.extend(b[k].iter().cloned());
            i += 1;
            k += 1;
        } else if a.len() - i >= b.len() - k {
            out.extend(a[i].iter().cloned());
            i += 1;
        } else {
            out.extend(b[k].iter().cloned());
            k += 1;
        }
    }
    out
}
