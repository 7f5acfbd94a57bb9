use std::collections::BTreeMap;
use std::fmt;

use crate::logic::{Term, Var};

/// A finite map from variables to terms. Variables outside the domain are
/// left unchanged by [`Substitution::apply`].
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    map: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn singleton(v: Var, t: Term) -> Substitution {
        let mut s = Substitution::new();
        s.map.insert(v, t);
        s
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Term)>) -> Substitution {
        Substitution {
            map: pairs.into_iter().collect(),
        }
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.map.get(&v)
    }

    pub fn insert(&mut self, v: Var, t: Term) {
        self.map.insert(v, t);
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Term)> {
        self.map.iter().map(|(v, t)| (*v, t))
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.map.keys().copied()
    }

    pub fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    /// `self` then `other`: `t.apply(self.then(other)) == other.apply(self.apply(t))`.
    pub fn then(&self, other: &Substitution) -> Substitution {
        let mut map: BTreeMap<Var, Term> = self
            .map
            .iter()
            .map(|(v, t)| (*v, other.apply(t)))
            .collect();
        for (v, t) in &other.map {
            map.entry(*v).or_insert_with(|| t.clone());
        }
        map.retain(|v, t| t.as_var() != Some(*v));
        Substitution { map }
    }

    /// Keeps only bindings for the given variables.
    pub fn restrict(&self, vars: &[Var]) -> Substitution {
        Substitution {
            map: self
                .map
                .iter()
                .filter(|(v, _)| vars.contains(v))
                .map(|(v, t)| (*v, t.clone()))
                .collect(),
        }
    }

    /// No domain variable occurs in any image.
    pub fn is_idempotent(&self) -> bool {
        self.map
            .values()
            .all(|t| self.map.keys().all(|v| !t.occurs(*v)))
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v} := {t}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Most general unifier with occurs check. The result is idempotent; a
/// variable-variable pair binds the left variable, so `mgu(x, y) = {x := y}`.
pub fn mgu(t1: &Term, t2: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    let mut work = vec![(t1.clone(), t2.clone())];
    while let Some((a, b)) = work.pop() {
        let a = sigma.apply(&a);
        let b = sigma.apply(&b);
        if a == b {
            continue;
        }
        match (a, b) {
            (Term::Var(v), t) | (t, Term::Var(v)) => {
                if t.occurs(v) {
                    return None;
                }
                let bind = Substitution::singleton(v, t.clone());
                for img in sigma.map.values_mut() {
                    *img = bind.apply(img);
                }
                sigma.map.insert(v, t);
            }
            (Term::App(f, fa), Term::App(g, ga)) => {
                if f != g || fa.len() != ga.len() {
                    return None;
                }
                work.extend(fa.into_iter().zip(ga).rev());
            }
        }
    }
    Some(sigma)
}

/// One-way matching: a substitution `σ` over the pattern's variables with
/// `pattern σ == target`. Variables of `target` are treated as constants.
pub fn match_term(pattern: &Term, target: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    if match_into(pattern, target, &mut sigma) {
        Some(sigma)
    } else {
        None
    }
}

pub(crate) fn match_into(pattern: &Term, target: &Term, sigma: &mut Substitution) -> bool {
    match pattern {
        Term::Var(v) => match sigma.map.get(v) {
            Some(bound) => bound == target,
            None => {
                sigma.map.insert(*v, target.clone());
                true
            }
        },
        Term::App(f, args) => match target {
            Term::App(g, targs) if f == g && args.len() == targs.len() => args
                .iter()
                .zip(targs)
                .all(|(p, t)| match_into(p, t, sigma)),
            _ => false,
        },
    }
}

/// Renames variables to `0, 1, 2, ..` in order of first occurrence across
/// `terms`, returning the renamed terms and the renaming used.
pub fn canonical_vars(terms: &[&Term]) -> (Vec<Term>, Substitution) {
    let mut order = Vec::new();
    for t in terms {
        t.vars_in_order(&mut order);
    }
    let mut rho = Substitution::new();
    let mut next = 0;
    for v in order {
        if rho.get(v).is_none() {
            rho.insert(v, Term::var(next));
            next += 1;
        }
    }
    (terms.iter().map(|t| rho.apply(t)).collect(), rho)
}

/// Shifts every variable of `t` by `offset`.
pub fn shift_vars(t: &Term, offset: u32) -> Term {
    match t {
        Term::Var(v) => Term::Var(Var(v.0 + offset)),
        Term::App(f, args) => Term::App(*f, args.iter().map(|a| shift_vars(a, offset)).collect()),
    }
}
