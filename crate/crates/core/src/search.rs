//! Generate-and-test: enumerate candidate certificates `c0, c1, ...` and
//! return the first one passing a decidable check.

use std::time::{Duration, Instant};

use rayon::prelude::*;

/// Resource bounds for a search. The test call is the unit of work.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_candidates: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unbounded() -> Budget {
        Budget::default()
    }

    pub fn candidates(n: u64) -> Budget {
        Budget {
            max_candidates: Some(n),
            max_time: None,
        }
    }

    pub fn with_time(mut self, limit: Duration) -> Budget {
        self.max_time = Some(limit);
        self
    }

    pub fn is_bounded(&self) -> bool {
        self.max_candidates.is_some() || self.max_time.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<C> {
    Found {
        candidate: C,
        index: u64,
        elapsed: Duration,
    },
    Exhausted {
        tested: u64,
        elapsed: Duration,
    },
}

impl<C> SearchOutcome<C> {
    pub fn found(&self) -> Option<(&C, u64)> {
        match self {
            SearchOutcome::Found {
                candidate, index, ..
            } => Some((candidate, *index)),
            SearchOutcome::Exhausted { .. } => None,
        }
    }

    pub fn into_found(self) -> Option<C> {
        match self {
            SearchOutcome::Found { candidate, .. } => Some(candidate),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("candidate stream has no upper bound and the budget sets no limit")]
    Unbounded,
}

fn check_bounded<I: Iterator>(it: &I, budget: &Budget) -> Result<(), SearchError> {
    if it.size_hint().1.is_none() && !budget.is_bounded() {
        return Err(SearchError::Unbounded);
    }
    Ok(())
}

/// Tests candidates in enumeration order and returns the first that passes.
pub fn run<C, I, F>(candidates: I, mut test: F, budget: &Budget) -> Result<SearchOutcome<C>, SearchError>
where
    I: IntoIterator<Item = C>,
    F: FnMut(&C) -> bool,
{
    let start = Instant::now();
    let it = candidates.into_iter();
    check_bounded(&it, budget)?;
    let mut tested = 0u64;
    for c in it {
        if budget.max_candidates.is_some_and(|m| tested >= m)
            || budget.max_time.is_some_and(|t| start.elapsed() >= t)
        {
            break;
        }
        let pass = test(&c);
        tested += 1;
        if pass {
            return Ok(SearchOutcome::Found {
                candidate: c,
                index: tested - 1,
                elapsed: start.elapsed(),
            });
        }
    }
    Ok(SearchOutcome::Exhausted {
        tested,
        elapsed: start.elapsed(),
    })
}

/// Like [`run`], but tests `chunk` consecutive candidates at a time on the
/// current rayon pool. The reported index is still the least passing one.
pub fn run_chunked<C, I, F>(
    candidates: I,
    test: F,
    budget: &Budget,
    chunk: usize,
) -> Result<SearchOutcome<C>, SearchError>
where
    C: Send + Sync,
    I: IntoIterator<Item = C>,
    F: Fn(&C) -> bool + Sync,
{
    let start = Instant::now();
    let mut it = candidates.into_iter();
    check_bounded(&it, budget)?;
    let chunk = chunk.max(1);
    let mut tested = 0u64;
    loop {
        if budget.max_time.is_some_and(|t| start.elapsed() >= t) {
            break;
        }
        let room = budget
            .max_candidates
            .map_or(chunk as u64, |m| (m - tested).min(chunk as u64)) as usize;
        if room == 0 {
            break;
        }
        let batch: Vec<C> = it.by_ref().take(room).collect();
        if batch.is_empty() {
            break;
        }
        let results: Vec<bool> = batch.par_iter().map(&test).collect();
        if let Some(k) = results.iter().position(|&p| p) {
            let candidate = batch.into_iter().nth(k).expect("index in batch");
            return Ok(SearchOutcome::Found {
                candidate,
                index: tested + k as u64,
                elapsed: start.elapsed(),
            });
        }
        tested += batch.len() as u64;
    }
    Ok(SearchOutcome::Exhausted {
        tested,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_divisor_of_91() {
        let out = run(2u64.., |c| 91 % c == 0, &Budget::candidates(1000)).unwrap();
        assert_eq!(out.found(), Some((&7, 5)));
    }

    #[test]
    fn constant_false_exhausts_budget() {
        let out = run(0u64.., |_| false, &Budget::candidates(1000)).unwrap();
        assert!(matches!(out, SearchOutcome::Exhausted { tested: 1000, .. }));
    }

    #[test]
    fn first_candidate_passes_with_one_call() {
        let mut calls = 0;
        let out = run(
            [10, 11, 12],
            |_| {
                calls += 1;
                true
            },
            &Budget::unbounded(),
        )
        .unwrap();
        assert_eq!(out.found(), Some((&10, 0)));
        assert_eq!(calls, 1);
    }

    #[test]
    fn unbounded_stream_needs_a_budget() {
        assert_eq!(
            run(0u64.., |_| false, &Budget::unbounded()),
            Err(SearchError::Unbounded)
        );
        // finite streams are fine
        assert!(run(0u64..10, |_| false, &Budget::unbounded()).is_ok());
    }

    #[test]
    fn chunked_matches_serial() {
        for chunk in [1, 3, 8, 64] {
            let serial = run(2u64.., |c| 221 % c == 0, &Budget::candidates(500)).unwrap();
            let par = run_chunked(2u64.., |c| 221 % c == 0, &Budget::candidates(500), chunk).unwrap();
            assert_eq!(serial.found(), par.found());
        }
        let par = run_chunked(0u64.., |_| false, &Budget::candidates(100), 7).unwrap();
        assert!(matches!(par, SearchOutcome::Exhausted { tested: 100, .. }));
    }
}
