//! Boolean Pythagorean triples: for a bound `m`, 2-color `1..=m` with no
//! monochromatic `a² + b² = c²`. The encoding `β_m` is satisfiable exactly
//! when such a coloring exists.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::logic::{Assignment, Clause, Cnf, Lit};
use crate::sat::{check_certificate, solve_with, Certificate, SolveError, SolverConfig, Verdict};
use crate::search::{self, Budget, SearchOutcome};

/// Threshold reported for the full problem; far beyond desk scale.
pub const REFERENCE_THRESHOLD: u32 = 7825;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Every Pythagorean triple with `c <= m`, ordered by `c` then `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSet {
    pub m: u32,
    pub triples: Vec<Triple>,
}

impl TripleSet {
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn members(&self) -> BTreeSet<u32> {
        self.triples.iter().flat_map(|t| [t.a, t.b, t.c]).collect()
    }
}

pub fn triples(m: u32) -> TripleSet {
    let mut out = Vec::new();
    for c in 1..=m as u64 {
        let c2 = c * c;
        for a in 1..c {
            let b2 = c2 - a * a;
            let b = b2.isqrt();
            if b * b == b2 && a < b {
                out.push(Triple {
                    a: a as u32,
                    b: b as u32,
                    c: c as u32,
                });
            }
        }
    }
    TripleSet { m, triples: out }
}

/// Numbers occurring in some triple with `c <= m`.
pub fn members(m: u32) -> BTreeSet<u32> {
    triples(m).members()
}

/// `β_m` together with the member-to-variable map (members in increasing
/// order get variables `1, 2, ...`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub m: u32,
    pub cnf: Cnf,
    pub varmap: BTreeMap<u32, u32>,
}

/// One block `(x_a ∨ x_b ∨ x_c) ∧ (¬x_a ∨ ¬x_b ∨ ¬x_c)` per triple. Numbers
/// outside every triple get no variable; no symmetry breaking.
pub fn encode(m: u32) -> Encoding {
    let ts = triples(m);
    let varmap: BTreeMap<u32, u32> = ts
        .members()
        .into_iter()
        .enumerate()
        .map(|(i, n)| (n, i as u32 + 1))
        .collect();
    let mut clauses = Vec::with_capacity(2 * ts.len());
    for t in &ts.triples {
        let vars = [varmap[&t.a], varmap[&t.b], varmap[&t.c]];
        clauses.push(Clause::new(vars.iter().map(|&v| Lit::pos(v))));
        clauses.push(Clause::new(vars.iter().map(|&v| Lit::neg(v))));
    }
    let cnf = Cnf::new(varmap.len() as u32, clauses).expect("variables within bound");
    Encoding { m, cnf, varmap }
}

/// A partial 2-coloring of `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub m: u32,
    pub colors: BTreeMap<u32, u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("model does not assign variable {var} (member {member})")]
    MissingVariable { member: u32, var: u32 },
    #[error("coloring leaves {0} uncolored")]
    DomainGap(u32),
    #[error("line {line}: expected `number color`")]
    Malformed { line: usize },
}

impl Coloring {
    /// The valuation `x_i` true iff member `i` has color 1.
    pub fn to_assignment(&self, varmap: &BTreeMap<u32, u32>) -> Result<Assignment, ColoringError> {
        let mut a = Assignment::new(varmap.len() as u32);
        for (&member, &var) in varmap {
            let color = *self
                .colors
                .get(&member)
                .ok_or(ColoringError::DomainGap(member))?;
            a.set(var, color == 1);
        }
        Ok(a)
    }

    /// Lines `number color`.
    pub fn to_text(&self) -> String {
        self.colors
            .iter()
            .map(|(n, c)| format!("{n} {c}\n"))
            .collect()
    }

    pub fn parse(text: &str, m: u32) -> Result<Coloring, ColoringError> {
        let mut colors = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let parsed = match (parts.next(), parts.next(), parts.next()) {
                (Some(n), Some(c), None) => n.parse::<u32>().ok().zip(c.parse::<u8>().ok()),
                _ => None,
            };
            match parsed {
                Some((n, c)) if c <= 1 => {
                    colors.insert(n, c);
                }
                _ => return Err(ColoringError::Malformed { line: i + 1 }),
            }
        }
        Ok(Coloring { m, colors })
    }
}

pub fn coloring_from_model(
    m: u32,
    model: &Assignment,
    varmap: &BTreeMap<u32, u32>,
) -> Result<Coloring, ColoringError> {
    let mut colors = BTreeMap::new();
    for (&member, &var) in varmap {
        let value = model
            .get(var)
            .ok_or(ColoringError::MissingVariable { member, var })?;
        colors.insert(member, u8::from(value));
    }
    Ok(Coloring { m, colors })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColoringVerdict {
    Valid,
    MonochromaticTriple(Triple),
}

/// Checks every triple with `c <= m`; reports the first monochromatic one.
pub fn verify_coloring(f: &Coloring, m: u32) -> Result<ColoringVerdict, ColoringError> {
    let ts = triples(m);
    for &n in &ts.members() {
        if !f.colors.contains_key(&n) {
            return Err(ColoringError::DomainGap(n));
        }
    }
    for t in ts.triples {
        let (ca, cb, cc) = (f.colors[&t.a], f.colors[&t.b], f.colors[&t.c]);
        if ca == cb && cb == cc {
            return Ok(ColoringVerdict::MonochromaticTriple(t));
        }
    }
    Ok(ColoringVerdict::Valid)
}

/// Result of solving `β_m` for one bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BptResult {
    Colorable(Coloring),
    Forced(Certificate),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BptError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("solver returned a model that fails verification at m={0}")]
    BadModel(u32),
    #[error("solver returned a certificate that fails verification at m={0}")]
    BadCertificate(u32),
}

/// Solves `β_m` and verifies whatever the solver returns.
pub fn solve_bound(m: u32, config: SolverConfig) -> Result<BptResult, BptError> {
    let enc = encode(m);
    match solve_with(&enc.cnf, config)? {
        Verdict::Satisfiable(model) => {
            let coloring =
                coloring_from_model(m, &model, &enc.varmap).map_err(|_| BptError::BadModel(m))?;
            match verify_coloring(&coloring, m) {
                Ok(ColoringVerdict::Valid) => Ok(BptResult::Colorable(coloring)),
                _ => Err(BptError::BadModel(m)),
            }
        }
        Verdict::Unsatisfiable(cert) => match check_certificate(&enc.cnf, &cert) {
            Ok(true) => Ok(BptResult::Forced(cert)),
            _ => Err(BptError::BadCertificate(m)),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThresholdOutcome {
    /// Least `m <= max_m` whose encoding is unsatisfiable.
    Threshold { m: u32, certificate: Certificate },
    /// Every tested bound was colorable; one verified coloring per tested bound.
    AllSatisfiable {
        max_m: u32,
        colorings: Vec<Coloring>,
    },
}

/// Scans `step, 2·step, ...` (always ending at `max_m`) for the first
/// unsatisfiable bound, then bisects below it. Scan points are solved in
/// chunks of `jobs` on the current rayon pool; results are taken in order of
/// `m`, so the outcome does not depend on scheduling.
pub fn find_threshold(
    max_m: u32,
    step: u32,
    jobs: usize,
    config: SolverConfig,
) -> Result<ThresholdOutcome, BptError> {
    let step = step.max(1);
    let mut points: Vec<u32> = (1..).map(|k| k * step).take_while(|&m| m < max_m).collect();
    if max_m >= 1 {
        points.push(max_m);
    }
    let results: std::sync::Mutex<BTreeMap<u32, Result<BptResult, BptError>>> = Default::default();
    let test = |&m: &u32| {
        let r = solve_bound(m, config);
        let forced = !matches!(r, Ok(BptResult::Colorable(_)));
        results.lock().expect("results lock").insert(m, r);
        forced
    };
    let outcome = search::run_chunked(points.clone(), test, &Budget::unbounded(), jobs.max(1))
        .expect("finite scan");
    let mut results = results.into_inner().expect("results lock");

    // surface any error among the points up to the stopping index, in order
    let stop = match &outcome {
        SearchOutcome::Found { candidate, .. } => *candidate,
        SearchOutcome::Exhausted { .. } => max_m,
    };
    let mut colorings = Vec::new();
    for m in points.iter().copied().filter(|&m| m <= stop) {
        match results.remove(&m).expect("tested point") {
            Ok(BptResult::Colorable(c)) => colorings.push(c),
            Ok(BptResult::Forced(_)) => {}
            Err(e) => return Err(e),
        }
    }

    let SearchOutcome::Found { candidate: hi, .. } = outcome else {
        return Ok(ThresholdOutcome::AllSatisfiable { max_m, colorings });
    };
    // bisect on (lo, hi]: lo colorable (or 0), hi forced
    let mut lo = points.iter().copied().filter(|&m| m < hi).max().unwrap_or(0);
    let mut hi = hi;
    let mut cert = match solve_bound(hi, config)? {
        BptResult::Forced(c) => c,
        BptResult::Colorable(_) => unreachable!("scan marked {hi} forced"),
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match solve_bound(mid, config)? {
            BptResult::Colorable(_) => lo = mid,
            BptResult::Forced(c) => {
                hi = mid;
                cert = c;
            }
        }
    }
    Ok(ThresholdOutcome::Threshold {
        m: hi,
        certificate: cert,
    })
}

/// Solves several bounds concurrently; output is ordered by `m`.
pub fn solve_bounds(ms: &[u32], config: SolverConfig) -> Vec<Result<BptResult, BptError>> {
    ms.par_iter().map(|&m| solve_bound(m, config)).collect()
}
