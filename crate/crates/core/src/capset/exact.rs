use super::greedy::{check_dim, DimensionError, Space};
use super::vector::CapSetCandidate;

/// Result of the exact search. When the node budget runs out, `size` is the
/// best lower bound found and `exact` is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCap {
    pub n: usize,
    pub size: usize,
    pub exact: bool,
    pub witness: CapSetCandidate,
    pub nodes: u64,
}

/// Largest dimension accepted by [`exact_cap`]; beyond it the bitsets stop
/// being small.
pub const MAX_EXACT_DIM: usize = 6;

/// Maximum cap size in `(Z/3)^n` by branch and bound.
///
/// Affine maps preserve caps and act transitively on non-collinear triples,
/// so the search starts from `{0, e_n, e_(n-1)}` (just `{0, e_1}` when
/// `n = 1`) and extends it with vectors in increasing lexicographic order.
/// A branch is cut when its size plus the remaining admissible vectors
/// cannot beat the incumbent, which starts at `{0,1}^n`.
pub fn exact_cap(n: usize, max_nodes: u64) -> Result<ExactCap, DimensionError> {
    check_dim(n, MAX_EXACT_DIM)?;
    let space = Space::new(n);
    let seed: Vec<usize> = if n == 1 { vec![0, 1] } else { vec![0, 1, 3] };
    let mut search = Search {
        space: &space,
        words: space.size.div_ceil(64),
        best: (0..1usize << n).map(|m| binary_index(m, n)).collect(),
        nodes: 0,
        max_nodes,
        aborted: false,
    };
    let mut chosen = Vec::new();
    let mut blocked = vec![0u64; search.words];
    for &v in &seed {
        search.add(&mut chosen, &mut blocked, v);
    }
    let mut avail = vec![0u64; search.words];
    for i in 0..space.size {
        if !bit(&blocked, i) && !chosen.contains(&i) {
            set(&mut avail, i);
        }
    }
    search.branch(&chosen, &blocked, &avail, 0);
    let exact = !search.aborted;
    let witness = CapSetCandidate::from_indices(n, search.best.iter().copied());
    Ok(ExactCap {
        n,
        size: witness.len(),
        exact,
        witness,
        nodes: search.nodes,
    })
}

fn binary_index(mask: usize, n: usize) -> usize {
    (0..n).fold(0, |acc, i| acc * 3 + ((mask >> (n - 1 - i)) & 1))
}

fn bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

fn set(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

fn count(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

struct Search<'a> {
    space: &'a Space,
    words: usize,
    best: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    aborted: bool,
}

impl Search<'_> {
    fn add(&self, chosen: &mut Vec<usize>, blocked: &mut [u64], v: usize) {
        for &c in chosen.iter() {
            set(blocked, self.space.third(c, v));
        }
        chosen.push(v);
    }

    /// `avail` holds admissible vectors with index >= `from`.
    fn branch(&mut self, chosen: &[usize], blocked: &[u64], avail: &[u64], from: usize) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.aborted = true;
            return;
        }
        if chosen.len() > self.best.len() {
            self.best = chosen.to_vec();
        }
        if chosen.len() + count(avail) <= self.best.len() {
            return;
        }
        let mut remaining = avail.to_vec();
        for v in from..self.space.size {
            if !bit(&remaining, v) {
                continue;
            }
            remaining[v / 64] &= !(1 << (v % 64));
            if chosen.len() + 1 + count(&remaining) <= self.best.len() {
                break;
            }
            let mut next_blocked = blocked.to_vec();
            let mut next = chosen.to_vec();
            self.add(&mut next, &mut next_blocked, v);
            let next_avail: Vec<u64> = remaining
                .iter()
                .zip(&next_blocked)
                .map(|(a, b)| a & !b)
                .collect();
            self.branch(&next, &next_blocked, &next_avail, v + 1);
            if self.aborted {
                return;
            }
        }
    }
}
