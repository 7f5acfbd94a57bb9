use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use crate::logic::{Signature, Symbol, Term, Var};
use crate::search::{self, Budget, SearchOutcome};

use super::axioms::AxiomSet;
use super::critical::{overlaps, Oriented};
use super::equation::Equation;
use super::lpo::{lpo_gt, Precedence};
use super::proof::{check_proof_detailed, map_constants, EqProof, Just, ProofTooLong, J};
use super::rewrite::normalize_just;
use super::subst::{canonical_vars, match_into, match_term, Substitution};

const PROOF_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProverConfig {
    /// Maximum number of equations generated by superposition.
    pub max_inferences: u64,
    pub max_time: Option<Duration>,
    /// Out of every `age + weight` selections, `age` pick the oldest passive
    /// equation and `weight` the lightest.
    pub age_weight: (u32, u32),
    /// Generated equations heavier than this are discarded.
    pub max_weight: usize,
    /// Cap on waiting equations; once reached, new ones are discarded. Keeps
    /// memory bounded at the price of completeness.
    pub max_passive: usize,
}

impl Default for ProverConfig {
    fn default() -> ProverConfig {
        ProverConfig {
            max_inferences: 100_000,
            max_time: None,
            age_weight: (1, 4),
            max_weight: 60,
            max_passive: 500_000,
        }
    }
}

/// Search counters, reported with every outcome.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProveStats {
    /// Equations produced by superposition.
    pub generated: u64,
    /// Equations kept in the active set.
    pub kept: u64,
    pub given: u64,
    /// Root match attempts during rewriting.
    pub rewrites_attempted: u64,
    pub elapsed: Duration,
}

impl fmt::Display for ProveStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} equalities kept from {} generated, {} given, {} rewrite attempts, {:.3}s",
            self.kept,
            self.generated,
            self.given,
            self.rewrites_attempted,
            self.elapsed.as_secs_f64()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProveOutcome {
    Proved { proof: EqProof, stats: ProveStats },
    Timeout { stats: ProveStats },
}

impl ProveOutcome {
    pub fn proof(&self) -> Option<&EqProof> {
        match self {
            ProveOutcome::Proved { proof, .. } => Some(proof),
            ProveOutcome::Timeout { .. } => None,
        }
    }

    pub fn stats(&self) -> &ProveStats {
        match self {
            ProveOutcome::Proved { stats, .. } | ProveOutcome::Timeout { stats } => stats,
        }
    }
}

struct Active {
    lhs: Term,
    rhs: Term,
    just: J,
    /// `lhs >lpo rhs`; otherwise the equation is used in both directions,
    /// and for rewriting only on instances where it decreases.
    oriented: bool,
}

struct Goal {
    lhs: Term,
    rhs: Term,
    /// original lhs = current lhs
    jl: J,
    /// original rhs = current rhs
    jr: J,
}

struct Prover<'a> {
    prec: Precedence,
    config: &'a ProverConfig,
    active: Vec<Active>,
    seen: HashSet<(Term, Term)>,
    passive: Vec<Option<J>>,
    live: usize,
    by_age: BinaryHeap<Reverse<usize>>,
    by_weight: BinaryHeap<Reverse<(usize, usize)>>,
    stats: ProveStats,
}

/// Saturation-based search for an equational proof of `goal`. Goal variables
/// are replaced by fresh constants below every symbol in the precedence;
/// passive equations are selected by alternating age and weight. Any proof
/// returned replays under [`super::check_proof`].
pub fn prove(
    goal: &Equation,
    axioms: &AxiomSet,
    config: &ProverConfig,
) -> Result<ProveOutcome, ProofTooLong> {
    let start = Instant::now();
    let vars = goal.vars();
    let skolems: Vec<Symbol> = vars
        .iter()
        .map(|v| Symbol::intern(&format!("${v}")))
        .collect();
    let to_const = Substitution::from_pairs(
        vars.iter()
            .zip(&skolems)
            .map(|(v, s)| (*v, Term::App(*s, Vec::new()))),
    );
    let mut prec = axioms.precedence.clone();
    for s in &skolems {
        prec.push_lowest(*s);
    }
    let ground = Equation::new(to_const.apply(&goal.lhs), to_const.apply(&goal.rhs));

    let mut p = Prover {
        prec,
        config,
        active: Vec::new(),
        seen: HashSet::new(),
        passive: Vec::new(),
        live: 0,
        by_age: BinaryHeap::new(),
        by_weight: BinaryHeap::new(),
        stats: ProveStats::default(),
    };
    for a in &axioms.axioms {
        p.push_passive(Just::axiom(a));
    }
    let mut g = Goal {
        jl: Just::refl(&ground.lhs),
        jr: Just::refl(&ground.rhs),
        lhs: ground.lhs.clone(),
        rhs: ground.rhs.clone(),
    };

    let mut tick = 0u64;
    let found = loop {
        if let Some(j) = p.closes(&g) {
            break Some(j);
        }
        if p.stats.generated >= config.max_inferences
            || config.max_time.is_some_and(|t| start.elapsed() >= t)
        {
            break None;
        }
        let Some(given) = p.select(tick) else {
            break None;
        };
        tick += 1;
        p.stats.given += 1;
        let Some(added) = p.activate(given) else {
            continue;
        };
        p.renormalize_goal(&mut g);
        p.generate(added);
    };

    p.stats.elapsed = start.elapsed();
    let Some(j) = found else {
        return Ok(ProveOutcome::Timeout { stats: p.stats });
    };
    let raw = j.flatten(PROOF_LIMIT)?;
    let back = |t: &Term| unskolemize(t, &skolems, &vars);
    let proof = map_constants(&raw, &back);
    if let Err(e) = check_proof_detailed(&proof, &axioms.axioms, goal) {
        panic!("prover produced an invalid proof: {e}");
    }
    Ok(ProveOutcome::Proved {
        proof,
        stats: p.stats,
    })
}

fn unskolemize(t: &Term, skolems: &[Symbol], vars: &[Var]) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::App(f, args) if args.is_empty() => match skolems.iter().position(|s| s == f) {
            Some(i) => Term::Var(vars[i]),
            None => t.clone(),
        },
        Term::App(f, args) => Term::App(
            *f,
            args.iter().map(|a| unskolemize(a, skolems, vars)).collect(),
        ),
    }
}

impl Prover<'_> {
    fn push_passive(&mut self, just: J) {
        let weight = just.lhs.size() + just.rhs.size();
        let id = self.passive.len();
        self.passive.push(Some(just));
        self.live += 1;
        self.by_age.push(Reverse(id));
        self.by_weight.push(Reverse((weight, id)));
    }

    fn select(&mut self, tick: u64) -> Option<J> {
        let (age, weight) = self.config.age_weight;
        let period = u64::from(age + weight).max(1);
        let by_age = tick % period < u64::from(age);
        loop {
            let id = if by_age {
                self.by_age.pop().map(|Reverse(i)| i)
                    .or_else(|| self.by_weight.pop().map(|Reverse((_, i))| i))?
            } else {
                self.by_weight.pop().map(|Reverse((_, i))| i)
                    .or_else(|| self.by_age.pop().map(|Reverse(i)| i))?
            };
            if let Some(just) = self.passive[id].take() {
                self.live -= 1;
                return Some(just);
            }
        }
    }

    fn normalize(&mut self, t: &Term) -> (Term, J) {
        let active = &self.active;
        let prec = &self.prec;
        let stats = &mut self.stats;
        normalize_just(t, &mut |s: &Term| {
            for a in active {
                for (from, to, forward) in [(&a.lhs, &a.rhs, true), (&a.rhs, &a.lhs, false)] {
                    if !forward && a.oriented {
                        continue;
                    }
                    if from.head().is_none() || from.head() != s.head() {
                        continue;
                    }
                    stats.rewrites_attempted += 1;
                    let Some(sigma) = match_term(from, s) else {
                        continue;
                    };
                    let out = sigma.apply(to);
                    if !a.oriented && (!out.vars().is_subset(&s.vars()) || !lpo_gt(s, &out, prec)) {
                        continue;
                    }
                    let j = if forward { a.just.clone() } else { Just::sym(&a.just) };
                    return Some((out, Just::inst(&j, &sigma)));
                }
            }
            None
        })
    }

    /// Simplifies the given equation and adds it to the active set; `None`
    /// when it became trivial or is already known.
    fn activate(&mut self, j: J) -> Option<usize> {
        let (s, js) = self.normalize(&j.lhs);
        let (t, jt) = self.normalize(&j.rhs);
        if s == t {
            return None;
        }
        let eq = Just::trans(&Just::trans(&Just::sym(&js), &j), &jt);
        let eq = if lpo_gt(&t, &s, &self.prec) { Just::sym(&eq) } else { eq };
        let (canon, rho) = canonical_vars(&[&eq.lhs, &eq.rhs]);
        let key = (canon[0].clone(), canon[1].clone());
        let (flipped, _) = canonical_vars(&[&eq.rhs, &eq.lhs]);
        if self.seen.contains(&key) || self.seen.contains(&(flipped[1].clone(), flipped[0].clone())) {
            return None;
        }
        if self.subsumed(&canon[0], &canon[1]) {
            return None;
        }
        self.seen.insert(key);
        let just = Just::inst(&eq, &rho);
        let oriented = lpo_gt(&just.lhs, &just.rhs, &self.prec);
        self.active.push(Active {
            lhs: just.lhs.clone(),
            rhs: just.rhs.clone(),
            just,
            oriented,
        });
        self.stats.kept += 1;
        Some(self.active.len() - 1)
    }

    /// Is `l = r` an instance of an active equation, in either orientation?
    fn subsumed(&self, l: &Term, r: &Term) -> bool {
        self.active.iter().any(|a| {
            [(&a.lhs, &a.rhs), (&a.rhs, &a.lhs)].into_iter().any(|(x, y)| {
                let mut sigma = Substitution::new();
                match_into(x, l, &mut sigma) && match_into(y, r, &mut sigma)
            })
        })
    }

    fn renormalize_goal(&mut self, g: &mut Goal) {
        let (l, jl) = self.normalize(&g.lhs.clone());
        let (r, jr) = self.normalize(&g.rhs.clone());
        g.jl = Just::trans(&g.jl, &jl);
        g.jr = Just::trans(&g.jr, &jr);
        g.lhs = l;
        g.rhs = r;
    }

    /// A justification of the original goal, if the current goal sides are
    /// equal or form an instance of an active equation.
    fn closes(&self, g: &Goal) -> Option<J> {
        if g.lhs == g.rhs {
            return Some(Just::trans(&g.jl, &Just::sym(&g.jr)));
        }
        for a in &self.active {
            for (x, y, forward) in [(&a.lhs, &a.rhs, true), (&a.rhs, &a.lhs, false)] {
                let mut sigma = Substitution::new();
                if match_into(x, &g.lhs, &mut sigma) && match_into(y, &g.rhs, &mut sigma) {
                    let j = if forward { a.just.clone() } else { Just::sym(&a.just) };
                    let mid = Just::inst(&j, &sigma);
                    return Some(Just::trans(&Just::trans(&g.jl, &mid), &Just::sym(&g.jr)));
                }
            }
        }
        None
    }

    fn generate(&mut self, given: usize) {
        let dirs = |a: &Active| {
            let o = Oriented {
                lhs: a.lhs.clone(),
                rhs: a.rhs.clone(),
                just: a.just.clone(),
            };
            if a.oriented {
                vec![o]
            } else {
                let r = o.reversed();
                vec![o, r]
            }
        };
        let new_dirs = dirs(&self.active[given]);
        let mut fresh = Vec::new();
        for (i, other) in self.active.iter().enumerate() {
            let other_dirs = dirs(other);
            for a in &new_dirs {
                for b in &other_dirs {
                    let same = i == given;
                    fresh.extend(overlaps(b, a, same && a.lhs == b.lhs));
                    if !same {
                        fresh.extend(overlaps(a, b, false));
                    }
                }
            }
        }
        for j in fresh {
            self.stats.generated += 1;
            if j.lhs.size() + j.rhs.size() <= self.config.max_weight
                && self.live < self.config.max_passive
            {
                self.push_passive(j);
            }
        }
    }
}

/// Outcome of a witness search for an existential goal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExistsOutcome {
    Proved {
        witness: Substitution,
        instance: Equation,
        proof: EqProof,
        candidates: u64,
    },
    Exhausted {
        candidates: u64,
    },
}

/// Reads the goal's variables existentially: enumerates witness tuples in
/// size-lexicographic order over the signature, the goal's own symbols and
/// the variable `x`, and runs [`prove`] on each instance with `per_candidate`.
pub fn prove_exists(
    goal: &Equation,
    axioms: &AxiomSet,
    per_candidate: &ProverConfig,
    budget: &Budget,
) -> Result<ExistsOutcome, search::SearchError> {
    let vars = goal.vars();
    let mut sig = axioms.signature.clone();
    for t in [&goal.lhs, &goal.rhs] {
        declare_symbols(t, &mut sig);
    }
    let symbols = witness_symbols(&sig);
    let candidates = TupleEnum::new(symbols, vars.len());
    let outcome = search::run(
        candidates,
        |tuple: &Vec<Term>| {
            let sigma = Substitution::from_pairs(vars.iter().copied().zip(tuple.iter().cloned()));
            let instance = Equation::new(sigma.apply(&goal.lhs), sigma.apply(&goal.rhs));
            matches!(prove(&instance, axioms, per_candidate), Ok(ProveOutcome::Proved { .. }))
        },
        budget,
    )?;
    Ok(match outcome {
        SearchOutcome::Found { candidate, index, .. } => {
            let witness = Substitution::from_pairs(vars.iter().copied().zip(candidate));
            let instance = Equation::new(witness.apply(&goal.lhs), witness.apply(&goal.rhs));
            let proof = match prove(&instance, axioms, per_candidate) {
                Ok(ProveOutcome::Proved { proof, .. }) => proof,
                _ => unreachable!("deterministic prover"),
            };
            ExistsOutcome::Proved {
                witness,
                instance,
                proof,
                candidates: index + 1,
            }
        }
        SearchOutcome::Exhausted { tested, .. } => ExistsOutcome::Exhausted { candidates: tested },
    })
}

fn declare_symbols(t: &Term, sig: &mut Signature) {
    if let Term::App(f, args) = t {
        if !sig.contains(*f) {
            *sig = std::mem::replace(sig, Signature::empty()).with_symbol(f.name(), args.len());
        }
        for a in args {
            declare_symbols(a, sig);
        }
    }
}

fn witness_symbols(sig: &Signature) -> Vec<(Option<Symbol>, usize)> {
    let mut out: Vec<(Option<Symbol>, usize)> = vec![(None, 0)];
    out.extend(sig.symbols().map(|(s, a)| (Some(s), a)));
    out
}

/// All terms of a given size, `x` first, then symbols by name.
fn terms_of_size(symbols: &[(Option<Symbol>, usize)], size: usize, memo: &mut Vec<Vec<Term>>) -> Vec<Term> {
    while memo.len() <= size {
        let n = memo.len();
        let mut out = Vec::new();
        if n >= 1 {
            for (sym, arity) in symbols {
                match (sym, arity) {
                    (None, _) if n == 1 => out.push(Term::var(0)),
                    (Some(s), 0) if n == 1 => out.push(Term::App(*s, Vec::new())),
                    (Some(s), k) if *k >= 1 && n > *k => {
                        for parts in compositions(n - 1, *k) {
                            let pools: Vec<&Vec<Term>> = parts.iter().map(|&p| &memo[p]).collect();
                            for combo in product(&pools) {
                                out.push(Term::App(*s, combo));
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        memo.push(out);
    }
    memo[size].clone()
}

/// Ordered ways to write `n` as `k` positive parts, lexicographically.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(k - 1) {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn product(pools: &[&Vec<Term>]) -> Vec<Vec<Term>> {
    let mut out = vec![Vec::new()];
    for pool in pools {
        let mut next = Vec::new();
        for prefix in &out {
            for t in pool.iter() {
                let mut v = prefix.clone();
                v.push(t.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Tuples of `k` terms ordered by total size, then by the composition of
/// sizes, then position-wise in term order.
struct TupleEnum {
    symbols: Vec<(Option<Symbol>, usize)>,
    k: usize,
    total: usize,
    memo: Vec<Vec<Term>>,
    buffer: std::vec::IntoIter<Vec<Term>>,
}

impl TupleEnum {
    fn new(symbols: Vec<(Option<Symbol>, usize)>, k: usize) -> TupleEnum {
        TupleEnum {
            symbols,
            k,
            total: k.max(1) - 1,
            memo: Vec::new(),
            buffer: Vec::new().into_iter(),
        }
    }
}

impl Iterator for TupleEnum {
    type Item = Vec<Term>;

    fn next(&mut self) -> Option<Vec<Term>> {
        if self.k == 0 {
            self.k = usize::MAX;
            return Some(Vec::new());
        }
        if self.k == usize::MAX {
            return None;
        }
        loop {
            if let Some(t) = self.buffer.next() {
                return Some(t);
            }
            self.total += 1;
            if self.total > 64 {
                return None;
            }
            let mut batch = Vec::new();
            for parts in compositions(self.total, self.k) {
                let pools: Vec<Vec<Term>> = parts
                    .iter()
                    .map(|&p| terms_of_size(&self.symbols, p, &mut self.memo))
                    .collect();
                let refs: Vec<&Vec<Term>> = pools.iter().collect();
                batch.extend(product(&refs));
            }
            self.buffer = batch.into_iter();
        }
    }
}
