use crate::logic::{Assignment, Clause, Cnf, Lit};

use super::certificate::Certificate;
use super::{SolveError, Verdict};

/// How conflicts are turned into new clauses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Learning {
    /// First unique implication point, with non-chronological backjumping.
    #[default]
    FirstUip,
    /// Negation of the current decisions: plain DPLL backtracking, recorded
    /// as clauses so the refutation stays checkable.
    Decisions,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverConfig {
    pub learning: Learning,
    /// Abort with [`SolveError::BudgetExhausted`] after this many conflicts.
    pub max_conflicts: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
}

/// CDCL search with two watched literals per clause. Branching takes the
/// lowest-index unassigned variable and tries `true` first, so runs are
/// deterministic.
pub struct Solver {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    values: Vec<Option<bool>>,
    level: Vec<u32>,
    reason: Vec<Option<usize>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    learned: Vec<Clause>,
    config: SolverConfig,
    stats: SolveStats,
    seen: Vec<bool>,
}

enum Setup {
    Ready,
    Refuted,
}

impl Solver {
    pub fn new(cnf: &Cnf, config: SolverConfig) -> Solver {
        let n = cnf.num_vars() as usize;
        Solver {
            num_vars: n,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            values: vec![None; n + 1],
            level: vec![0; n + 1],
            reason: vec![None; n + 1],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            learned: Vec::new(),
            config,
            stats: SolveStats::default(),
            seen: vec![false; n + 1],
        }
    }

    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    fn value(&self, l: Lit) -> Option<bool> {
        self.values[l.var() as usize].map(|b| b == l.is_positive())
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: Lit, reason: Option<usize>) {
        let v = l.var() as usize;
        self.values[v] = Some(l.is_positive());
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn attach(&mut self, lits: Vec<Lit>) -> usize {
        let id = self.clauses.len();
        self.watches[lits[0].index()].push(id);
        self.watches[lits[1].index()].push(id);
        self.clauses.push(lits);
        id
    }

    fn load(&mut self, cnf: &Cnf) -> Setup {
        for c in cnf.clauses() {
            if c.is_tautology() {
                continue;
            }
            match c.len() {
                0 => return Setup::Refuted,
                1 => {
                    let l = c.lits()[0];
                    match self.value(l) {
                        Some(true) => {}
                        Some(false) => return Setup::Refuted,
                        None => self.enqueue(l, None),
                    }
                }
                _ => {
                    self.attach(c.lits().to_vec());
                }
            }
        }
        Setup::Ready
    }

    /// Returns the index of a falsified clause, if propagation hits one.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.index()]);
            let mut i = 0;
            let mut conflict = None;
            while i < ws.len() {
                let cid = ws[i];
                let clause = &mut self.clauses[cid];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                if self.values[first.var() as usize].map(|b| b == first.is_positive()) == Some(true) {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.len() {
                    let l = clause[k];
                    if self.values[l.var() as usize].map(|b| b == l.is_positive()) != Some(false) {
                        clause.swap(1, k);
                        let new_watch = clause[1];
                        self.watches[new_watch.index()].push(cid);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                match self.value(first) {
                    Some(false) => {
                        conflict = Some(cid);
                        break;
                    }
                    _ => {
                        self.enqueue(first, Some(cid));
                        i += 1;
                    }
                }
            }
            // keep watchers that were not moved, plus any added meanwhile
            let added = std::mem::replace(&mut self.watches[false_lit.index()], ws);
            self.watches[false_lit.index()].extend(added);
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn backtrack(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let start = self.trail_lim[level as usize];
        for l in self.trail.drain(start..) {
            let v = l.var() as usize;
            self.values[v] = None;
            self.reason[v] = None;
        }
        self.trail_lim.truncate(level as usize);
        self.qhead = self.trail.len();
    }

    /// Returns the learned clause (asserting literal first) and the level to
    /// jump back to.
    fn analyze(&mut self, conflict: usize) -> (Vec<Lit>, u32) {
        match self.config.learning {
            Learning::Decisions => {
                let lits: Vec<Lit> = self
                    .trail_lim
                    .iter()
                    .rev()
                    .map(|&pos| !self.trail[pos])
                    .collect();
                // ¬d_k is asserting; ¬d_{k-1} sits at the backjump level
                (lits, self.decision_level() - 1)
            }
            Learning::FirstUip => self.analyze_first_uip(conflict),
        }
    }

    fn analyze_first_uip(&mut self, conflict: usize) -> (Vec<Lit>, u32) {
        let current = self.decision_level();
        let mut learnt: Vec<Lit> = vec![Lit::pos(1)]; // slot for the asserting literal
        let mut pending = 0usize;
        let mut index = self.trail.len();
        let mut clause = conflict;
        let mut asserting: Option<Lit> = None;
        loop {
            let lits = self.clauses[clause].clone();
            let skip = usize::from(asserting.is_some());
            for &q in &lits[skip..] {
                let v = q.var() as usize;
                if self.seen[v] || self.level[v] == 0 {
                    continue;
                }
                self.seen[v] = true;
                if self.level[v] >= current {
                    pending += 1;
                } else {
                    learnt.push(q);
                }
            }
            // next marked literal on the trail
            loop {
                index -= 1;
                if self.seen[self.trail[index].var() as usize] {
                    break;
                }
            }
            let p = self.trail[index];
            self.seen[p.var() as usize] = false;
            pending -= 1;
            if pending == 0 {
                learnt[0] = !p;
                break;
            }
            asserting = Some(p);
            clause = self.reason[p.var() as usize].expect("implied literal has a reason");
            // reason clauses keep their implied literal first
            debug_assert_eq!(self.clauses[clause][0], p);
        }
        for l in &learnt[1..] {
            self.seen[l.var() as usize] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var() as usize] > self.level[learnt[best].var() as usize] {
                    best = i;
                }
            }
            learnt.swap(1, best);
            back = self.level[learnt[1].var() as usize];
        }
        (learnt, back)
    }

    fn pick_branch(&self) -> Option<Lit> {
        (1..=self.num_vars)
            .find(|&v| self.values[v].is_none())
            .map(|v| Lit::pos(v as u32))
    }

    fn refutation(&mut self) -> Verdict {
        let mut lines = std::mem::take(&mut self.learned);
        lines.push(Clause::empty());
        Verdict::Unsatisfiable(Certificate::new(lines))
    }

    pub fn solve(mut self, cnf: &Cnf) -> Result<Verdict, SolveError> {
        if let Setup::Refuted = self.load(cnf) {
            return Ok(self.refutation());
        }
        loop {
            if let Some(conflict) = self.propagate() {
                self.stats.conflicts += 1;
                if self.decision_level() == 0 {
                    return Ok(self.refutation());
                }
                if self
                    .config
                    .max_conflicts
                    .is_some_and(|m| self.stats.conflicts > m)
                {
                    return Err(SolveError::BudgetExhausted {
                        conflicts: self.stats.conflicts,
                    });
                }
                let (learnt, back) = self.analyze(conflict);
                self.learned.push(Clause::new(learnt.iter().copied()));
                self.backtrack(back);
                let asserting = learnt[0];
                if learnt.len() == 1 {
                    self.enqueue(asserting, None);
                } else {
                    let id = self.attach(learnt);
                    self.enqueue(asserting, Some(id));
                }
                continue;
            }
            match self.pick_branch() {
                None => {
                    let values: Vec<bool> = self.values[1..]
                        .iter()
                        .map(|v| v.expect("all variables assigned"))
                        .collect();
                    return Ok(Verdict::Satisfiable(Assignment::from_values(&values)));
                }
                Some(l) => {
                    self.stats.decisions += 1;
                    self.trail_lim.push(self.trail.len());
                    self.enqueue(l, None);
                }
            }
        }
    }
}

/// Decides satisfiability with the default configuration.
pub fn solve(cnf: &Cnf) -> Result<Verdict, SolveError> {
    solve_with(cnf, SolverConfig::default())
}

pub fn solve_with(cnf: &Cnf, config: SolverConfig) -> Result<Verdict, SolveError> {
    Solver::new(cnf, config).solve(cnf)
}
