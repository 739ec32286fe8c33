use std::collections::BTreeSet;

use crate::cover::{Cover, CoverInstance};

/// Repeatedly picks the allowed segment hitting the most unhit demands,
/// breaking ties by smallest id.
pub fn solve_greedy(ci: &CoverInstance) -> Cover {
    let mut chosen = BTreeSet::new();
    let mut open: Vec<&[usize]> = ci.demands().iter().map(|d| d.elements.as_slice()).collect();
    while !open.is_empty() {
        let mut best = (0usize, usize::MAX);
        for &e in &ci.ground {
            let gain = open.iter().filter(|d| d.contains(&e)).count();
            if gain > best.0 {
                best = (gain, e);
            }
        }
        assert!(best.0 > 0, "demand with no allowed element");
        chosen.insert(best.1);
        open.retain(|d| !d.contains(&best.1));
    }
    Cover { chosen }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::solve_exact;

    #[test]
    fn forced_singletons() {
        let ci = CoverInstance::from_sets(2, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(solve_greedy(&ci), Cover::new([0, 1]));
    }

    #[test]
    fn set_cover_trap() {
        // Element 0 hits four demands, but {1, 2} hits all six.
        let ci = CoverInstance::from_sets(
            3,
            vec![vec![0, 1], vec![0, 1], vec![1], vec![0, 2], vec![0, 2], vec![2]],
        )
        .unwrap();
        let g = solve_greedy(&ci);
        assert!(ci.is_feasible(&g));
        assert_eq!(g, Cover::new([0, 1, 2]));
        assert_eq!(solve_exact(&ci, None).unwrap(), Cover::new([1, 2]));
    }
}
