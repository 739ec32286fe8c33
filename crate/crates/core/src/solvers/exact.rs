//! Exact minimum hitting set by branch and bound.

use super::bitset::BitSet;
use super::SolveError;
use crate::cover::{Cover, CoverInstance};

/// A collection of sets over element ids, indexed for branching.
pub(crate) struct SetSystem {
    /// Distinct element ids, ascending.
    elements: Vec<usize>,
    /// Sets as indices into `elements`, each ascending.
    sets: Vec<Vec<usize>>,
    /// For every element index, the sets it hits.
    hits: Vec<BitSet>,
}

impl SetSystem {
    pub fn new(sets: &[Vec<usize>]) -> Self {
        let mut elements: Vec<usize> = sets.iter().flatten().copied().collect();
        elements.sort_unstable();
        elements.dedup();
        let index = |e: usize| elements.binary_search(&e).unwrap();
        let sets: Vec<Vec<usize>> = sets
            .iter()
            .map(|s| {
                let mut v: Vec<usize> = s.iter().map(|&e| index(e)).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        let mut hits = vec![BitSet::new(sets.len()); elements.len()];
        for (i, s) in sets.iter().enumerate() {
            for &e in s {
                hits[e].insert(i);
            }
        }
        SetSystem { elements, sets, hits }
    }

    fn hit_by(&self, chosen: &[usize]) -> BitSet {
        let mut hit = BitSet::new(self.sets.len());
        for &e in chosen {
            hit.union_with(&self.hits[e]);
        }
        hit
    }

    /// Size of a greedy packing of pairwise disjoint unhit sets, restricted to
    /// non-forbidden elements. A lower bound on the elements still needed.
    fn packing_bound(&self, hit: &BitSet, forbidden: &BitSet) -> usize {
        let mut open: Vec<(usize, usize)> = (0..self.sets.len())
            .filter(|&s| !hit.contains(s))
            .map(|s| (self.sets[s].iter().filter(|&&e| !forbidden.contains(e)).count(), s))
            .collect();
        open.sort_unstable();
        let mut used = BitSet::new(self.elements.len());
        let mut bound = 0;
        for (_, s) in open {
            if self.sets[s].iter().all(|&e| forbidden.contains(e) || !used.contains(e)) {
                bound += 1;
                for &e in &self.sets[s] {
                    used.insert(e);
                }
            }
        }
        bound
    }

    /// Whether `chosen` can be extended by at most `budget` non-forbidden
    /// elements into a hitting set; on success `chosen` holds it.
    fn extend(&self, hit: &BitSet, chosen: &mut Vec<usize>, forbidden: &BitSet, budget: usize) -> bool {
        // Most constrained unhit set.
        let mut pick: Option<(usize, usize)> = None;
        for s in 0..self.sets.len() {
            if hit.contains(s) {
                continue;
            }
            let avail = self.sets[s].iter().filter(|&&e| !forbidden.contains(e)).count();
            if pick.is_none_or(|(a, _)| avail < a) {
                pick = Some((avail, s));
            }
        }
        let Some((avail, s)) = pick else {
            return true;
        };
        if avail == 0 || budget == 0 {
            return false;
        }
        if self.packing_bound(hit, forbidden) > budget {
            return false;
        }
        let mut forbidden = forbidden.clone();
        for &e in &self.sets[s] {
            if forbidden.contains(e) {
                continue;
            }
            let mut next = hit.clone();
            next.union_with(&self.hits[e]);
            chosen.push(e);
            if self.extend(&next, chosen, &forbidden, budget - 1) {
                return true;
            }
            chosen.pop();
            forbidden.insert(e);
        }
        false
    }

    /// Minimum hitting set size, or `None` when it exceeds `limit`.
    pub fn optimum(&self, limit: usize) -> Option<usize> {
        if self.sets.iter().any(|s| s.is_empty()) {
            return None;
        }
        let none = BitSet::new(self.elements.len());
        let empty = BitSet::new(self.sets.len());
        let start = self.packing_bound(&empty, &none);
        (start..=limit).find(|&b| self.extend(&empty, &mut Vec::new(), &none, b))
    }

    /// The lexicographically smallest hitting set of size `size`, assuming one exists.
    fn lex_smallest(&self, size: usize) -> Vec<usize> {
        let mut prefix: Vec<usize> = Vec::new();
        let mut next = 0;
        while prefix.len() < size {
            let mut found = false;
            for e in next..self.elements.len() {
                let mut trial = prefix.clone();
                trial.push(e);
                let mut forbidden = BitSet::new(self.elements.len());
                for x in 0..=e {
                    if !trial.contains(&x) {
                        forbidden.insert(x);
                    }
                }
                let hit = self.hit_by(&trial);
                if self.extend(&hit, &mut trial.clone(), &forbidden, size - trial.len()) {
                    prefix = trial;
                    next = e + 1;
                    found = true;
                    break;
                }
            }
            assert!(found, "no hitting set of size {size}");
        }
        prefix
    }

    pub fn ids(&self, idx: &[usize]) -> Vec<usize> {
        idx.iter().map(|&i| self.elements[i]).collect()
    }

    /// Lexicographically smallest minimum hitting set (element ids), or
    /// `None` when the optimum exceeds `limit`.
    pub fn minimum(&self, limit: usize) -> Option<Vec<usize>> {
        let opt = self.optimum(limit)?;
        Some(self.ids(&self.lex_smallest(opt)))
    }

    pub fn element_count(&self) -> usize {
        self.elements.len()
    }
}

/// Minimum-cardinality cover; among minimum covers the lexicographically
/// smallest id set. Fails with `BudgetExceeded` when `ub` is given and the
/// optimum is larger.
pub fn solve_exact(ci: &CoverInstance, ub: Option<usize>) -> Result<Cover, SolveError> {
    let sets: Vec<Vec<usize>> = ci.demands().iter().map(|d| d.elements.clone()).collect();
    let system = SetSystem::new(&sets);
    let limit = ub.unwrap_or(system.element_count());
    match system.minimum(limit) {
        Some(ids) => Ok(Cover::new(ids)),
        None => Err(SolveError::BudgetExceeded { ub: limit }),
    }
}

/// Exact optimum of an arbitrary set collection (used for kernels).
pub fn min_hitting_set(sets: &[Vec<usize>]) -> Vec<usize> {
    let system = SetSystem::new(sets);
    system.minimum(system.element_count()).expect("every set is nonempty")
}
