use std::collections::{BTreeSet, HashSet};
use std::fmt;

/// A vector in `(Z/3)^n`, stored as its digits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec3 {
    digits: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VectorError {
    #[error("digit {0} is not in {{0,1,2}}")]
    BadDigit(u8),
    #[error("line {line}: `{text}` is not a base-3 vector")]
    BadLine { line: usize, text: String },
    #[error("line {line}: expected dimension {expected}, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("empty vector or cap-set file")]
    Empty,
}

impl Vec3 {
    pub fn new(digits: Vec<u8>) -> Result<Vec3, VectorError> {
        if digits.is_empty() {
            return Err(VectorError::Empty);
        }
        if let Some(&d) = digits.iter().find(|&&d| d > 2) {
            return Err(VectorError::BadDigit(d));
        }
        Ok(Vec3 { digits })
    }

    pub fn zero(n: usize) -> Vec3 {
        Vec3 { digits: vec![0; n] }
    }

    pub fn dim(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Rank in lexicographic order: `Σ d_i 3^(n-1-i)`.
    pub fn index(&self) -> usize {
        self.digits.iter().fold(0, |acc, &d| acc * 3 + d as usize)
    }

    pub fn from_index(mut index: usize, n: usize) -> Vec3 {
        let mut digits = vec![0; n];
        for slot in digits.iter_mut().rev() {
            *slot = (index % 3) as u8;
            index /= 3;
        }
        Vec3 { digits }
    }

    pub fn add(&self, other: &Vec3) -> Vec3 {
        Vec3 {
            digits: self
                .digits
                .iter()
                .zip(&other.digits)
                .map(|(a, b)| (a + b) % 3)
                .collect(),
        }
    }

    pub fn neg(&self) -> Vec3 {
        Vec3 {
            digits: self.digits.iter().map(|d| (3 - d) % 3).collect(),
        }
    }

    /// The unique `z` with `x + y + z = 0`, i.e. the third point on the line
    /// through `x` and `y`.
    pub fn third_point(&self, other: &Vec3) -> Vec3 {
        self.add(other).neg()
    }

    pub fn parse(text: &str) -> Result<Vec3, VectorError> {
        let digits: Option<Vec<u8>> = text
            .trim()
            .chars()
            .map(|c| c.to_digit(3).map(|d| d as u8))
            .collect();
        match digits {
            Some(d) if !d.is_empty() => Ok(Vec3 { digits: d }),
            _ => Err(VectorError::BadLine {
                line: 0,
                text: text.to_string(),
            }),
        }
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.digits.iter().map(u8::to_string).collect::<Vec<_>>().join(","))
    }
}

/// A set of distinct vectors of one dimension, not necessarily a cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapSetCandidate {
    pub n: usize,
    pub vectors: BTreeSet<Vec3>,
}

impl CapSetCandidate {
    pub fn new(n: usize, vectors: impl IntoIterator<Item = Vec3>) -> Result<CapSetCandidate, VectorError> {
        let vectors: BTreeSet<Vec3> = vectors.into_iter().collect();
        if let Some(v) = vectors.iter().find(|v| v.dim() != n) {
            return Err(VectorError::DimensionMismatch {
                line: 0,
                expected: n,
                found: v.dim(),
            });
        }
        Ok(CapSetCandidate { n, vectors })
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> CapSetCandidate {
        CapSetCandidate {
            n,
            vectors: indices.into_iter().map(|i| Vec3::from_index(i, n)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// One vector per line as `n` base-3 digits, in lexicographic order.
    pub fn to_text(&self) -> String {
        self.vectors.iter().map(|v| format!("{v}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<CapSetCandidate, VectorError> {
        let mut n = None;
        let mut vectors = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let v = Vec3::parse(line).map_err(|_| VectorError::BadLine {
                line: i + 1,
                text: line.to_string(),
            })?;
            let expected = *n.get_or_insert(v.dim());
            if v.dim() != expected {
                return Err(VectorError::DimensionMismatch {
                    line: i + 1,
                    expected,
                    found: v.dim(),
                });
            }
            vectors.insert(v);
        }
        let n = n.ok_or(VectorError::Empty)?;
        Ok(CapSetCandidate { n, vectors })
    }
}

/// No three distinct members sum to zero mod 3.
pub fn is_cap(s: &CapSetCandidate) -> bool {
    let members: Vec<&Vec3> = s.vectors.iter().collect();
    let lookup: HashSet<&Vec3> = s.vectors.iter().collect();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            // distinct x, y force the third point to differ from both
            if lookup.contains(&members[i].third_point(members[j])) {
                return false;
            }
        }
    }
    true
}

/// `{0,1}^n`: no coordinate can take all three values, so no line fits.
pub fn binary_cap(n: usize) -> CapSetCandidate {
    let vectors = (0..1usize << n)
        .map(|mask| Vec3 {
            digits: (0..n).map(|i| ((mask >> (n - 1 - i)) & 1) as u8).collect(),
        })
        .collect();
    CapSetCandidate { n, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[&str]) -> CapSetCandidate {
        CapSetCandidate::new(n, vs.iter().map(|s| Vec3::parse(s).unwrap())).unwrap()
    }

    #[test]
    fn diagonal_line_is_not_a_cap() {
        assert!(!is_cap(&set(2, &["00", "11", "22"])));
    }

    #[test]
    fn unit_square_is_a_cap() {
        assert!(is_cap(&set(2, &["00", "01", "10", "11"])));
    }

    #[test]
    fn small_sets_are_caps() {
        assert!(is_cap(&set(2, &["12"])));
        assert!(is_cap(&set(2, &["12", "21"])));
        assert!(is_cap(&set(2, &[])));
    }

    #[test]
    fn binary_caps() {
        assert_eq!(binary_cap(1), set(1, &["0", "1"]));
        let b3 = binary_cap(3);
        assert_eq!(b3.len(), 8);
        assert!(is_cap(&b3));
        assert_eq!(binary_cap(8).len(), 256);
    }

    #[test]
    fn index_round_trip() {
        for i in 0..81 {
            assert_eq!(Vec3::from_index(i, 4).index(), i);
        }
        assert_eq!(Vec3::parse("0121").unwrap().index(), 16);
    }

    #[test]
    fn file_format() {
        let s = set(2, &["11", "00", "01"]);
        assert_eq!(s.to_text(), "00\n01\n11\n");
        assert_eq!(CapSetCandidate::parse(&s.to_text()).unwrap(), s);
        assert!(matches!(
            CapSetCandidate::parse("00\n012\n"),
            Err(VectorError::DimensionMismatch { line: 2, .. })
        ));
        assert!(matches!(CapSetCandidate::parse("03\n"), Err(VectorError::BadLine { .. })));
        assert_eq!(CapSetCandidate::parse("\n"), Err(VectorError::Empty));
    }
}
