use rayon::prelude::*;

use crate::logic::{Clause, Cnf, Lit};

use super::certificate::Certificate;
use super::solver::{solve_with, SolverConfig};
use super::{SolveError, Verdict};

/// The `2^k` cubes over variables `1..=k`, all-true cube first.
pub fn cubes(k: u32) -> Vec<Vec<Lit>> {
    (0..1u64 << k)
        .map(|mask| {
            (1..=k)
                .map(|v| Lit::new(v, mask >> (k - v) & 1 == 0))
                .collect()
        })
        .collect()
}

/// Splits on the first `k` variables and solves every cube on the current
/// rayon pool. All cubes are awaited, so the verdict does not depend on
/// scheduling: a model comes from the first satisfiable cube in cube order,
/// and a refutation is stitched from every cube's certificate.
pub fn solve_cubes(cnf: &Cnf, k: u32, config: SolverConfig) -> Result<Verdict, SolveError> {
    let k = k.min(cnf.num_vars()).min(20);
    if k == 0 {
        return solve_with(cnf, config);
    }
    let cubes = cubes(k);
    let results: Vec<Result<Verdict, SolveError>> = cubes
        .par_iter()
        .map(|cube| solve_with(&cnf.with_units(cube), config))
        .collect();

    let mut verdicts = Vec::with_capacity(results.len());
    for r in results {
        verdicts.push(r?);
    }
    if let Some(model) = verdicts.iter().find_map(|v| match v {
        Verdict::Satisfiable(m) => Some(m.clone()),
        Verdict::Unsatisfiable(_) => None,
    }) {
        return Ok(Verdict::Satisfiable(model));
    }

    let mut lines = Vec::new();
    for (cube, verdict) in cubes.iter().zip(verdicts) {
        let Verdict::Unsatisfiable(cert) = verdict else {
            unreachable!("all cubes refuted")
        };
        let negated: Vec<Lit> = cube.iter().map(|&l| !l).collect();
        for line in cert.lines {
            lines.push(Clause::new(line.lits().iter().copied().chain(negated.iter().copied())));
        }
    }
    // resolve the cube negations back down to the empty clause
    for len in (0..k).rev() {
        for prefix in self::cubes(len) {
            lines.push(Clause::new(prefix.iter().map(|&l| !l)));
        }
    }
    Ok(Verdict::Unsatisfiable(Certificate::new(lines)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_order() {
        let c = cubes(2);
        assert_eq!(c[0], vec![Lit::pos(1), Lit::pos(2)]);
        assert_eq!(c[1], vec![Lit::pos(1), Lit::neg(2)]);
        assert_eq!(c[3], vec![Lit::neg(1), Lit::neg(2)]);
        assert_eq!(cubes(0), vec![Vec::<Lit>::new()]);
    }
}
