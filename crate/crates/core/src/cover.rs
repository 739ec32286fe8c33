//! Hitting-set view of a covering problem: one demand set per target cell,
//! holding the allowed segments that cover it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arrangement::{Arrangement, CellId};
use crate::geom::{Direction, SegmentOrientation};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum TargetMode {
    /// Every cell, including the unbounded one.
    AllCells,
    /// Every bounded cell.
    BoundedCells,
    RectangularCells,
}

impl TargetMode {
    pub fn includes(&self, arr: &Arrangement, cell: CellId) -> bool {
        let c = arr.cell(cell);
        match self {
            TargetMode::AllCells => true,
            TargetMode::BoundedCells => c.bounded,
            TargetMode::RectangularCells => c.rectangular,
        }
    }
}

impl fmt::Display for TargetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TargetMode::AllCells => "all",
            TargetMode::BoundedCells => "bounded",
            TargetMode::RectangularCells => "rect",
        })
    }
}

impl FromStr for TargetMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(TargetMode::AllCells),
            "bounded" => Ok(TargetMode::BoundedCells),
            "rect" => Ok(TargetMode::RectangularCells),
            _ => Err(format!("unknown target mode `{s}` (expected all, bounded or rect)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AllowedMode {
    AllSegments,
    OneOrientation(SegmentOrientation),
}

impl AllowedMode {
    pub fn allows(&self, o: &SegmentOrientation) -> bool {
        match self {
            AllowedMode::AllSegments => true,
            AllowedMode::OneOrientation(tag) => tag == o,
        }
    }
}

impl fmt::Display for AllowedMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AllowedMode::AllSegments => f.write_str("all"),
            AllowedMode::OneOrientation(o) => write!(f, "orient:{o}"),
        }
    }
}

/// Parses `all`, `orient:h`, `orient:v` or `orient:<dx>,<dy>`.
impl FromStr for AllowedMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(AllowedMode::AllSegments);
        }
        let tag = s
            .strip_prefix("orient:")
            .ok_or_else(|| format!("unknown allowed mode `{s}` (expected all or orient:<tag>)"))?;
        let o = match tag {
            "h" | "horizontal" => SegmentOrientation::Horizontal,
            "v" | "vertical" => SegmentOrientation::Vertical,
            _ => {
                let (dx, dy) = tag.split_once(',').ok_or_else(|| format!("bad orientation tag `{tag}`"))?;
                let dx = dx.trim().parse().map_err(|_| format!("bad orientation tag `{tag}`"))?;
                let dy = dy.trim().parse().map_err(|_| format!("bad orientation tag `{tag}`"))?;
                let d = Direction::new(dx, dy).ok_or_else(|| format!("zero direction `{tag}`"))?;
                SegmentOrientation::of(
                    &crate::geom::Point::from_ints(0, 0),
                    &crate::geom::Point::from_bigints(d.dx, d.dy),
                )
                .expect("nonzero direction")
            }
        };
        Ok(AllowedMode::OneOrientation(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemandSet {
    pub id: usize,
    pub elements: Vec<usize>,
    pub origin_cells: Vec<CellId>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("cell {0} cannot be covered by any allowed segment")]
    Infeasible(CellId),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cover {
    pub chosen: BTreeSet<usize>,
}

impl Cover {
    pub fn new(chosen: impl IntoIterator<Item = usize>) -> Self {
        Cover {
            chosen: chosen.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverInstance {
    pub ground: Vec<usize>,
    pub target: TargetMode,
    pub allowed: AllowedMode,
    universe: usize,
    demands: Vec<DemandSet>,
    /// One set per target cell, in cell order; paired with `unmerged_cells`.
    unmerged: Vec<Vec<usize>>,
    unmerged_cells: Vec<CellId>,
}

impl CoverInstance {
    pub fn from_arrangement(arr: &Arrangement, target: TargetMode, allowed: AllowedMode) -> Result<Self, CoverError> {
        let segs = arr.segments();
        let ground: Vec<usize> = segs.iter().filter(|s| allowed.allows(&s.orientation)).map(|s| s.id).collect();
        let mut unmerged = Vec::new();
        let mut unmerged_cells = Vec::new();
        for cell in arr.cells() {
            if !target.includes(arr, cell.id) {
                continue;
            }
            let elements: Vec<usize> = cell
                .covered_by
                .iter()
                .copied()
                .filter(|&s| allowed.allows(&segs[s].orientation))
                .collect();
            if elements.is_empty() {
                return Err(CoverError::Infeasible(cell.id));
            }
            unmerged.push(elements);
            unmerged_cells.push(cell.id);
        }
        let mut ci = CoverInstance {
            ground,
            target,
            allowed,
            universe: segs.len(),
            demands: Vec::new(),
            unmerged,
            unmerged_cells,
        };
        ci.merge();
        Ok(ci)
    }

    /// Abstract hitting-set instance over elements `0..universe`; the index of
    /// each set stands in for its cell id.
    pub fn from_sets(universe: usize, sets: Vec<Vec<usize>>) -> Result<Self, CoverError> {
        let mut unmerged = Vec::with_capacity(sets.len());
        for (i, mut s) in sets.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(CoverError::Infeasible(i));
            }
            assert!(s.iter().all(|&e| e < universe), "element out of range");
            unmerged.push(s);
        }
        let mut ci = CoverInstance {
            ground: (0..universe).collect(),
            target: TargetMode::AllCells,
            allowed: AllowedMode::AllSegments,
            universe,
            demands: Vec::new(),
            unmerged_cells: (0..unmerged.len()).collect(),
            unmerged,
        };
        ci.merge();
        Ok(ci)
    }

    fn merge(&mut self) {
        let mut index: BTreeMap<&[usize], usize> = BTreeMap::new();
        let mut demands: Vec<DemandSet> = Vec::new();
        for (set, &cell) in self.unmerged.iter().zip(&self.unmerged_cells) {
            match index.get(set.as_slice()) {
                Some(&d) => {
                    demands[d].origin_cells.push(cell);
                    demands[d].multiplicity += 1;
                }
                None => {
                    index.insert(set, demands.len());
                    demands.push(DemandSet {
                        id: demands.len(),
                        elements: set.clone(),
                        origin_cells: vec![cell],
                        multiplicity: 1,
                    });
                }
            }
        }
        self.demands = demands;
    }

    /// Deduplicated demands; what the solvers consume.
    pub fn demands(&self) -> &[DemandSet] {
        &self.demands
    }

    /// One demand per target cell, duplicates kept; what kernelization counts.
    pub fn unmerged(&self) -> &[Vec<usize>] {
        &self.unmerged
    }

    pub fn unmerged_cells(&self) -> &[CellId] {
        &self.unmerged_cells
    }

    /// Number of segments in the underlying instance (ids are below this).
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn is_feasible(&self, cover: &Cover) -> bool {
        self.demands
            .iter()
            .all(|d| d.elements.iter().any(|e| cover.chosen.contains(e)))
    }

    /// Demands not hit by `chosen`.
    pub fn unhit<'a>(&'a self, chosen: &'a BTreeSet<usize>) -> impl Iterator<Item = &'a DemandSet> + 'a {
        self.demands
            .iter()
            .filter(move |d| !d.elements.iter().any(|e| chosen.contains(e)))
    }

    pub fn full_cover(&self) -> Cover {
        Cover::new(self.ground.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Instance;

    fn grid_arr() -> Arrangement {
        Arrangement::build(
            &Instance::from_int_coords(&[[-1, 0, 2, 0], [-1, 1, 2, 1], [0, -1, 0, 2], [1, -1, 1, 2]]).unwrap(),
        )
    }

    #[test]
    fn grid_all_cells_merges_to_one_demand() {
        let ci = CoverInstance::from_arrangement(&grid_arr(), TargetMode::AllCells, AllowedMode::AllSegments).unwrap();
        assert_eq!(ci.unmerged().len(), 2);
        assert_eq!(ci.demands().len(), 1);
        assert_eq!(ci.demands()[0].elements, vec![0, 1, 2, 3]);
        assert_eq!(ci.demands()[0].multiplicity, 2);
        assert_eq!(ci.demands()[0].origin_cells, vec![0, 1]);
    }

    #[test]
    fn grid_rect_and_one_orientation() {
        let arr = grid_arr();
        let ci = CoverInstance::from_arrangement(&arr, TargetMode::RectangularCells, AllowedMode::AllSegments).unwrap();
        assert_eq!(ci.demands().len(), 1);
        assert_eq!(ci.demands()[0].origin_cells, vec![0]);

        let h = AllowedMode::OneOrientation(SegmentOrientation::Horizontal);
        let ci = CoverInstance::from_arrangement(&arr, TargetMode::AllCells, h).unwrap();
        assert_eq!(ci.ground, vec![0, 1]);
        assert_eq!(ci.demands()[0].elements, vec![0, 1]);
    }

    #[test]
    fn feasibility() {
        let ci = CoverInstance::from_arrangement(&grid_arr(), TargetMode::AllCells, AllowedMode::AllSegments).unwrap();
        assert!(ci.is_feasible(&Cover::new([0])));
        assert!(!ci.is_feasible(&Cover::default()));
        assert!(ci.is_feasible(&ci.full_cover()));
    }

    #[test]
    fn infeasible_one_orientation() {
        // A triangle-free cell bounded only by horizontals cannot exist, so use
        // a lone horizontal: the unbounded cell has no vertical neighbour.
        let arr = Arrangement::build(&Instance::from_int_coords(&[[0, 0, 4, 0]]).unwrap());
        let v = AllowedMode::OneOrientation(SegmentOrientation::Vertical);
        assert_eq!(
            CoverInstance::from_arrangement(&arr, TargetMode::AllCells, v).unwrap_err(),
            CoverError::Infeasible(0)
        );
    }

    #[test]
    fn parse_modes() {
        assert_eq!("rect".parse::<TargetMode>().unwrap(), TargetMode::RectangularCells);
        assert_eq!(
            "orient:v".parse::<AllowedMode>().unwrap(),
            AllowedMode::OneOrientation(SegmentOrientation::Vertical)
        );
        let g: AllowedMode = "orient:-2,1".parse().unwrap();
        assert_eq!(g.to_string(), "orient:2,-1");
        assert!("orient:0,0".parse::<AllowedMode>().is_err());
        assert!("orient:0,3".parse::<AllowedMode>().unwrap() == AllowedMode::OneOrientation(SegmentOrientation::Vertical));
    }

    #[test]
    fn from_sets_rejects_empty() {
        assert_eq!(CoverInstance::from_sets(3, vec![vec![0], vec![]]).unwrap_err(), CoverError::Infeasible(1));
    }
}
