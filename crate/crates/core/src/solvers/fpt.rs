//! Kernelization for covers of size at most `k`, and the exact finisher.
//!
//! Pair rule: if two elements occur together in more than `6k` sets, every
//! cover of size at most `k` contains one of them, so those sets are replaced
//! by the pair itself. Singleton rule: if an element occurs in more than
//! `6k²` sets, it belongs to every such cover, so those sets are replaced by
//! the singleton. After both rules a collection with more than `6k³` sets has
//! no cover of size at most `k`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::exact::SetSystem;
use crate::cover::{Cover, CoverInstance};

/// Largest deduplicated kernel solved by the bitmask dynamic program.
pub const DP_LIMIT: usize = 24;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum ReductionMode {
    /// Re-scan until no rule fires.
    #[default]
    Fixpoint,
    /// One scan over the candidates, each checked against the current collection.
    SinglePass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReduction {
    pub i: usize,
    pub j: usize,
    pub removed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingletonReduction {
    pub s: usize,
    pub removed: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum KernelVerdict {
    Kernel,
    NoSolutionAtMostK,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelTrace {
    pub k: usize,
    pub pair_reductions: Vec<PairReduction>,
    pub singleton_reductions: Vec<SingletonReduction>,
    pub c1: Vec<Vec<usize>>,
    pub c2: Vec<Vec<usize>>,
    pub verdict: KernelVerdict,
}

impl KernelTrace {
    pub fn bound(&self) -> usize {
        6 * self.k.pow(3)
    }
}

fn contains(set: &[usize], e: usize) -> bool {
    set.binary_search(&e).is_ok()
}

/// Replaces the sets selected by `hit` with `replacement`, unless that would
/// leave the collection unchanged. Returns the number of sets removed.
fn replace(collection: &mut Vec<Vec<usize>>, replacement: Vec<usize>, hit: impl Fn(&[usize]) -> bool) -> Option<usize> {
    let matching: Vec<usize> = (0..collection.len()).filter(|&i| hit(&collection[i])).collect();
    if matching.len() == 1 && collection[matching[0]] == replacement {
        return None;
    }
    let removed = matching.len();
    collection.retain(|s| !hit(s));
    collection.push(replacement);
    Some(removed)
}

fn pair_counts(collection: &[Vec<usize>]) -> BTreeMap<(usize, usize), usize> {
    let mut counts = BTreeMap::new();
    for s in collection {
        for (a, &i) in s.iter().enumerate() {
            for &j in &s[a + 1..] {
                *counts.entry((i, j)).or_insert(0) += 1;
            }
        }
    }
    counts
}

/// Applies the pair rule in lexicographic pair order.
pub fn reduce_pairs(collection: &[Vec<usize>], k: usize, mode: ReductionMode) -> (Vec<Vec<usize>>, Vec<PairReduction>) {
    let threshold = 6 * k;
    let mut current: Vec<Vec<usize>> = collection.iter().map(|s| normalized(s)).collect();
    let mut trace = Vec::new();
    loop {
        let mut fired = false;
        // Counts never grow for pairs other than the one just replaced, so a
        // stale count at or below the threshold can be skipped.
        let candidates: Vec<(usize, usize)> = pair_counts(&current)
            .into_iter()
            .filter(|&(_, c)| c > threshold)
            .map(|(p, _)| p)
            .collect();
        for (i, j) in candidates {
            let both = |s: &[usize]| contains(s, i) && contains(s, j);
            let count = current.iter().filter(|s| both(s)).count();
            if count > threshold {
                if let Some(removed) = replace(&mut current, vec![i, j], both) {
                    trace.push(PairReduction { i, j, removed });
                    fired = true;
                }
            }
        }
        if !fired || mode == ReductionMode::SinglePass {
            break;
        }
    }
    (current, trace)
}

/// Applies the singleton rule in increasing element order.
pub fn reduce_singletons(collection: &[Vec<usize>], k: usize, mode: ReductionMode) -> (Vec<Vec<usize>>, Vec<SingletonReduction>) {
    let threshold = 6 * k * k;
    let mut current: Vec<Vec<usize>> = collection.iter().map(|s| normalized(s)).collect();
    let mut trace = Vec::new();
    loop {
        let mut fired = false;
        let mut elements: Vec<usize> = current.iter().flatten().copied().collect();
        elements.sort_unstable();
        elements.dedup();
        for s in elements {
            let has = |set: &[usize]| contains(set, s);
            let count = current.iter().filter(|set| has(set)).count();
            if count > threshold {
                if let Some(removed) = replace(&mut current, vec![s], has) {
                    trace.push(SingletonReduction { s, removed });
                    fired = true;
                }
            }
        }
        if !fired || mode == ReductionMode::SinglePass {
            break;
        }
    }
    (current, trace)
}

fn normalized(s: &[usize]) -> Vec<usize> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Runs both rules on a raw set collection.
pub fn kernelize_sets(collection: &[Vec<usize>], k: usize, mode: ReductionMode) -> KernelTrace {
    let (c1, pair_reductions) = reduce_pairs(collection, k, mode);
    let (c2, singleton_reductions) = reduce_singletons(&c1, k, mode);
    let verdict = if c2.len() > 6 * k.pow(3) {
        KernelVerdict::NoSolutionAtMostK
    } else {
        KernelVerdict::Kernel
    };
    KernelTrace {
        k,
        pair_reductions,
        singleton_reductions,
        c1,
        c2,
        verdict,
    }
}

/// Kernelizes the unmerged demand collection of `ci`.
pub fn kernelize(ci: &CoverInstance, k: usize) -> KernelTrace {
    kernelize_sets(ci.unmerged(), k, ReductionMode::Fixpoint)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FptOutcome {
    Cover(Cover),
    NoSolutionAtMostK,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptRun {
    pub outcome: FptOutcome,
    pub trace: KernelTrace,
    /// Whether the kernel was finished by the bitmask program.
    pub used_dp: bool,
}

/// Minimum hitting set of at most `k` elements via breadth-first search over
/// masks of hit sets. Elements are tried in increasing id, so the first
/// path found is deterministic.
fn dp_min_cover(sets: &[Vec<usize>], k: usize) -> Option<Vec<usize>> {
    debug_assert!(sets.len() <= DP_LIMIT);
    let full: u32 = if sets.is_empty() { 0 } else { u32::MAX >> (32 - sets.len()) };
    let mut masks: BTreeMap<usize, u32> = BTreeMap::new();
    for (i, s) in sets.iter().enumerate() {
        for &e in s {
            *masks.entry(e).or_insert(0) |= 1 << i;
        }
    }
    let mut parent: HashMap<u32, (u32, usize)> = HashMap::new();
    let mut depth: HashMap<u32, usize> = HashMap::from([(0, 0)]);
    let mut queue = VecDeque::from([0u32]);
    while let Some(m) = queue.pop_front() {
        if m == full {
            let mut out = Vec::new();
            let mut cur = m;
            while cur != 0 {
                let (p, e) = parent[&cur];
                out.push(e);
                cur = p;
            }
            out.sort_unstable();
            return Some(out);
        }
        let d = depth[&m];
        if d == k {
            continue;
        }
        for (&e, &hm) in &masks {
            let next = m | hm;
            if next != m && !depth.contains_key(&next) {
                depth.insert(next, d + 1);
                parent.insert(next, (m, e));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Kernelizes and, when a kernel results, solves it exactly. A cover of the
/// kernel of size at most `k` is a cover of the original instance.
pub fn solve_fpt(ci: &CoverInstance, k: usize) -> FptRun {
    let trace = kernelize(ci, k);
    if trace.verdict == KernelVerdict::NoSolutionAtMostK {
        return FptRun {
            outcome: FptOutcome::NoSolutionAtMostK,
            trace,
            used_dp: false,
        };
    }
    let mut sets = trace.c2.clone();
    sets.sort();
    sets.dedup();
    let used_dp = sets.len() <= DP_LIMIT;
    let found = if used_dp {
        dp_min_cover(&sets, k)
    } else {
        SetSystem::new(&sets).minimum(k)
    };
    let outcome = match found {
        Some(ids) => {
            let cover = Cover::new(ids);
            debug_assert!(ci.is_feasible(&cover));
            FptOutcome::Cover(cover)
        }
        None => FptOutcome::NoSolutionAtMostK,
    };
    FptRun { outcome, trace, used_dp }
}
