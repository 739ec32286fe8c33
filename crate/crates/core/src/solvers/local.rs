//! Local search with bounded swaps.
//!
//! Starting from the full allowed ground set, repeatedly look for `A' ⊆ A`
//! with `|A'| <= k` and `M` outside `A` with `|M| < |A'|` such that
//! `(A \ A') ∪ M` is still a cover, apply the first such swap found, and stop
//! when none exists.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::SolveError;
use crate::cover::{Cover, CoverInstance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSearchParams {
    /// Largest number of segments removed by one swap.
    pub k: usize,
    pub max_iterations: usize,
    /// Permutes the scan order of candidate swaps.
    pub seed: u64,
}

impl LocalSearchParams {
    pub fn new(k: usize) -> Self {
        LocalSearchParams {
            k,
            max_iterations: 100_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Swap {
    pub removed: Vec<usize>,
    pub added: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSearchOutcome {
    pub cover: Cover,
    pub iterations: usize,
    /// Cover size before the first swap and after every applied swap.
    pub size_history: Vec<usize>,
    /// Set when the iteration cap stopped the search; `cover` is then the best
    /// so far and not necessarily locally optimal.
    pub capped: bool,
}

/// Calls `f` on every `r`-subset of `items` in lexicographic (position)
/// order until it returns true.
fn first_combination<F>(items: &[usize], r: usize, mut f: F) -> Option<Vec<usize>>
where
    F: FnMut(&[usize]) -> bool,
{
    if r > items.len() {
        return None;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut buf = vec![0; r];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = items[i];
        }
        if f(&buf) {
            return Some(buf);
        }
        // advance
        let mut i = r;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] != i + items.len() - r {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        if r == 0 || idx[i] == i + items.len() - r {
            return None;
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn scan_order(ci: &CoverInstance, seed: u64) -> Vec<usize> {
    let mut order = ci.ground.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    let mut rank = vec![usize::MAX; ci.universe()];
    for (r, &e) in order.iter().enumerate() {
        rank[e] = r;
    }
    rank
}

/// First improving swap of size at most `k`, scanning removals by size and
/// then lexicographically in `rank` order, and additions likewise.
pub fn find_improving_swap(ci: &CoverInstance, current: &BTreeSet<usize>, k: usize, rank: &[usize]) -> Option<Swap> {
    let mut inside: Vec<usize> = current.iter().copied().collect();
    inside.sort_by_key(|&e| rank[e]);
    let mut outside: Vec<usize> = ci.ground.iter().copied().filter(|e| !current.contains(e)).collect();
    outside.sort_by_key(|&e| rank[e]);

    for r in 1..=k.min(inside.len()) {
        let mut found: Option<Swap> = None;
        first_combination(&inside, r, |removed| {
            let rest: BTreeSet<usize> = current.iter().copied().filter(|e| !removed.contains(e)).collect();
            let open: Vec<&[usize]> = ci.unhit(&rest).map(|d| d.elements.as_slice()).collect();
            if open.is_empty() {
                found = Some(Swap {
                    removed: removed.to_vec(),
                    added: Vec::new(),
                });
                return true;
            }
            let candidates: Vec<usize> = outside
                .iter()
                .copied()
                .filter(|e| open.iter().any(|d| d.contains(e)))
                .collect();
            if open.iter().any(|d| !d.iter().any(|e| candidates.contains(e))) {
                return false;
            }
            for m in 1..r {
                if let Some(added) = first_combination(&candidates, m, |add| {
                    open.iter().all(|d| d.iter().any(|e| add.contains(e)))
                }) {
                    found = Some(Swap {
                        removed: removed.to_vec(),
                        added,
                    });
                    return true;
                }
            }
            false
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

pub fn local_search(ci: &CoverInstance, params: &LocalSearchParams) -> Result<LocalSearchOutcome, SolveError> {
    if params.k == 0 {
        return Err(SolveError::InvalidParameter("swap radius k must be at least 1".into()));
    }
    let rank = scan_order(ci, params.seed);
    let mut current: BTreeSet<usize> = ci.ground.iter().copied().collect();
    let mut history = vec![current.len()];
    let mut iterations = 0;
    loop {
        if iterations >= params.max_iterations {
            return Ok(LocalSearchOutcome {
                cover: Cover { chosen: current },
                iterations,
                size_history: history,
                capped: true,
            });
        }
        let Some(swap) = find_improving_swap(ci, &current, params.k, &rank) else {
            break;
        };
        for e in &swap.removed {
            current.remove(e);
        }
        current.extend(swap.added.iter().copied());
        history.push(current.len());
        iterations += 1;
    }
    Ok(LocalSearchOutcome {
        cover: Cover { chosen: current },
        iterations,
        size_history: history,
        capped: false,
    })
}
