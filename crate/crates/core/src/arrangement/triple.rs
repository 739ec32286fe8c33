use std::collections::BTreeMap;

use crate::geom::{intersect, Intersection};

use super::{Arrangement, ArrangementError};

/// Result of the exhaustive triple scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCoverage {
    pub max_count: usize,
    pub witness: [usize; 3],
    /// Number of cells covered by all three segments, for every triple that
    /// shares at least one cell.
    pub counts: BTreeMap<[usize; 3], usize>,
}

/// How many of the three pairs among `t` intersect.
pub fn triple_intersection_count(arr: &Arrangement, t: [usize; 3]) -> usize {
    let segs = arr.segments();
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .filter(|&&(i, j)| matches!(intersect(&segs[t[i]], &segs[t[j]]), Intersection::Point(_)))
        .count()
}

impl Arrangement {
    /// Maximum, over all triples of segments, of the number of cells covered by
    /// all three. Triples sharing no cell have count zero; the witness is the
    /// lexicographically smallest triple attaining the maximum.
    pub fn triple_coverage_max(&self) -> Result<TripleCoverage, ArrangementError> {
        let n = self.segments().len();
        if let Some(s) = self.segments().iter().find(|s| !s.orientation.is_axis_parallel()) {
            return Err(ArrangementError::NotAxisParallel(s.id));
        }
        if n < 3 {
            return Err(ArrangementError::TooFewSegments(n));
        }
        let mut counts: BTreeMap<[usize; 3], usize> = BTreeMap::new();
        for cell in &self.cells {
            let ids: Vec<usize> = cell.covered_by.iter().copied().collect();
            for i in 0..ids.len() {
                for j in i + 1..ids.len() {
                    for k in j + 1..ids.len() {
                        *counts.entry([ids[i], ids[j], ids[k]]).or_default() += 1;
                    }
                }
            }
        }
        let mut best = (0, [0, 1, 2]);
        for (&t, &c) in &counts {
            if c > best.0 {
                best = (c, t);
            }
        }
        Ok(TripleCoverage {
            max_count: best.0,
            witness: best.1,
            counts,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Instance;

    #[test]
    fn grid_triples() {
        let arr = Arrangement::build(&super::super::tests::grid());
        let t = arr.triple_coverage_max().unwrap();
        assert_eq!(t.max_count, 2);
        assert_eq!(t.witness, [0, 1, 2]);
        assert_eq!(t.counts.len(), 4);
    }

    #[test]
    fn errors() {
        let arr = Arrangement::build(&Instance::from_int_coords(&[[0, 0, 1, 0], [0, 1, 1, 1]]).unwrap());
        assert_eq!(arr.triple_coverage_max().unwrap_err(), ArrangementError::TooFewSegments(2));
        let arr = Arrangement::build(
            &Instance::from_int_coords(&[[0, 0, 1, 0], [0, 1, 1, 1], [0, 2, 1, 3]]).unwrap(),
        );
        assert_eq!(arr.triple_coverage_max().unwrap_err(), ArrangementError::NotAxisParallel(2));
    }

    #[test]
    fn disjoint_triple() {
        let arr = Arrangement::build(
            &Instance::from_int_coords(&[[0, 0, 1, 0], [0, 1, 1, 1], [3, 0, 3, 1]]).unwrap(),
        );
        let t = arr.triple_coverage_max().unwrap();
        assert_eq!(t.max_count, 1);
        assert_eq!(triple_intersection_count(&arr, [0, 1, 2]), 0);
    }
}
