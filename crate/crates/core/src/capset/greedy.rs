use super::expr::PriorityExpr;
use super::vector::CapSetCandidate;

/// Largest dimension the greedy constructor will enumerate by default.
pub const MAX_GREEDY_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimensionError {
    #[error("dimension {n} is outside the supported range 1..={limit}")]
    OutOfRange { n: usize, limit: usize },
}

/// Digits of every vector of `(Z/3)^n`, flattened in index order.
pub(crate) struct Space {
    pub n: usize,
    pub size: usize,
    digits: Vec<u8>,
}

impl Space {
    pub fn new(n: usize) -> Space {
        let size = 3usize.pow(n as u32);
        let mut digits = vec![0u8; size * n];
        for idx in 0..size {
            let mut rem = idx;
            for k in (0..n).rev() {
                digits[idx * n + k] = (rem % 3) as u8;
                rem /= 3;
            }
        }
        Space { n, size, digits }
    }

    pub fn digits(&self, idx: usize) -> &[u8] {
        &self.digits[idx * self.n..(idx + 1) * self.n]
    }

    /// Index of `-(a + b)`.
    pub fn third(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        da.iter()
            .zip(db)
            .fold(0, |acc, (x, y)| acc * 3 + ((6 - x - y) % 3) as usize)
    }
}

pub(crate) fn check_dim(n: usize, limit: usize) -> Result<(), DimensionError> {
    if n == 0 || n > limit {
        return Err(DimensionError::OutOfRange { n, limit });
    }
    Ok(())
}

/// Visits every vector by descending priority (ties in lexicographic order)
/// and keeps each one that completes no line with two already kept.
pub fn greedy(expr: &PriorityExpr, n: usize) -> Result<CapSetCandidate, DimensionError> {
    greedy_with_limit(expr, n, MAX_GREEDY_DIM)
}

pub fn greedy_with_limit(
    expr: &PriorityExpr,
    n: usize,
    limit: usize,
) -> Result<CapSetCandidate, DimensionError> {
    check_dim(n, limit)?;
    let space = Space::new(n);
    Ok(CapSetCandidate::from_indices(n, greedy_indices(expr, &space)))
}

pub(crate) fn greedy_indices(expr: &PriorityExpr, space: &Space) -> Vec<usize> {
    let mut order: Vec<(i64, usize)> = (0..space.size)
        .map(|i| (expr.eval(space.digits(i)), i))
        .collect();
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut blocked = vec![false; space.size];
    let mut kept: Vec<usize> = Vec::new();
    for (_, idx) in order {
        if blocked[idx] {
            continue;
        }
        for &k in &kept {
            blocked[space.third(k, idx)] = true;
        }
        kept.push(idx);
    }
    kept
}

/// Size of the greedy cap set.
pub fn score(expr: &PriorityExpr, n: usize) -> Result<usize, DimensionError> {
    greedy(expr, n).map(|s| s.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capset::vector::{is_cap, Vec3};

    fn zero() -> PriorityExpr {
        PriorityExpr::Lit(0)
    }

    #[test]
    fn constant_priority_in_dimension_one() {
        let s = greedy(&zero(), 1).unwrap();
        assert_eq!(s.to_text(), "0\n1\n");
    }

    #[test]
    fn constant_priority_in_dimension_two() {
        let s = greedy(&zero(), 2).unwrap();
        let want: Vec<Vec3> = ["00", "01", "10", "11"].iter().map(|s| Vec3::parse(s).unwrap()).collect();
        assert_eq!(s.vectors.into_iter().collect::<Vec<_>>(), want);
        assert_eq!(score(&zero(), 2), Ok(4));
    }

    #[test]
    fn every_ordering_of_the_line_gives_two() {
        for src in ["v[0]", "0 - v[0]", "v[0] * v[0]", "(v[0] + 1) % 3", "(v[0] + 2) % 3", "0 - (v[0] + 1) % 3"] {
            let e = PriorityExpr::parse(src).unwrap();
            assert_eq!(score(&e, 1), Ok(2), "{src}");
        }
    }

    #[test]
    fn outputs_are_caps() {
        for src in ["v[0] + 2 * v[1]", "v[1] * v[2] - v[0]", "n", "max(v[0], v[2]) % 2"] {
            let e = PriorityExpr::parse(src).unwrap();
            for n in 1..=4 {
                assert!(is_cap(&greedy(&e, n).unwrap()));
            }
        }
    }

    #[test]
    fn dimension_limits() {
        assert!(greedy(&zero(), 0).is_err());
        assert_eq!(
            greedy_with_limit(&zero(), 5, 4),
            Err(DimensionError::OutOfRange { n: 5, limit: 4 })
        );
    }

    #[test]
    fn third_point_index() {
        let sp = Space::new(2);
        let a = Vec3::parse("01").unwrap().index();
        let b = Vec3::parse("12").unwrap().index();
        assert_eq!(Vec3::from_index(sp.third(a, b), 2), Vec3::parse("20").unwrap());
    }
}
