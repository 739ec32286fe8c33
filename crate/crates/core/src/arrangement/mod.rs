//! Planar subdivision induced by a validated segment set.
//!
//! The subdivision is stored as a half-edge structure. Every half-edge lies on
//! exactly one input segment and has its cell on the left; bounded cells are
//! traced counter-clockwise, inner boundaries clockwise.

mod instance;
mod triple;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geom::{intersect, Intersection, Point, Rational, Segment, SegmentOrientation};

pub use instance::{Instance, RawSegment, ValidationError};
pub use triple::{triple_intersection_count, TripleCoverage};

pub type VertexId = usize;
pub type HalfEdgeId = usize;
pub type CellId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("unknown segment id {0}")]
    UnknownSegment(usize),
    #[error("instance is not axis-parallel (segment {0})")]
    NotAxisParallel(usize),
    #[error("need at least three segments, got {0}")]
    TooFewSegments(usize),
}

#[derive(Clone, Debug)]
pub struct HalfEdge {
    pub origin: VertexId,
    pub twin: HalfEdgeId,
    pub next: HalfEdgeId,
    pub prev: HalfEdgeId,
    pub segment: usize,
    pub cell: CellId,
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub id: CellId,
    pub bounded: bool,
    /// One cyclic half-edge list per boundary component. For bounded cells the
    /// outer (counter-clockwise) cycle comes first.
    pub boundary: Vec<Vec<HalfEdgeId>>,
    pub covered_by: BTreeSet<usize>,
    pub rectangular: bool,
    /// Twice the signed area enclosed by the outer cycle (zero for the unbounded cell).
    outer_area2: Rational,
}

impl Cell {
    /// Twice the area of the cell's region (outer cycle minus holes).
    pub fn area2(&self, arr: &Arrangement) -> Rational {
        let mut a = self.outer_area2.clone();
        let holes = if self.bounded { &self.boundary[1..] } else { &self.boundary[..] };
        for h in holes {
            a += arr.cycle_area2(h);
        }
        a
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    instance: Instance,
    vertices: Vec<Point>,
    half_edges: Vec<HalfEdge>,
    cells: Vec<Cell>,
    incidence: Vec<Vec<CellId>>,
    components: usize,
}

/// Direction of a half-edge, as a rational vector.
fn direction(seg: &Segment, forward: bool) -> (Rational, Rational) {
    let dx = &seg.b.x - &seg.a.x;
    let dy = &seg.b.y - &seg.a.y;
    if forward {
        (dx, dy)
    } else {
        (-dx, -dy)
    }
}

/// Counter-clockwise angular order starting at the positive x axis.
fn angle_cmp(a: &(Rational, Rational), b: &(Rational, Rational)) -> Ordering {
    let half = |d: &(Rational, Rational)| {
        if d.1.is_positive() || (d.1.is_zero() && d.0.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let c = &a.0 * &b.1 - &a.1 * &b.0;
        Rational::zero().cmp(&c)
    })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Strict point-in-cycle test by ray parity; `p` must not lie on the cycle.
fn cycle_contains(points: &[&Point], p: &Point) -> bool {
    let mut inside = false;
    for i in 0..points.len() {
        let a = points[i];
        let b = points[(i + 1) % points.len()];
        if (a.y > p.y) != (b.y > p.y) {
            let x = &a.x + (&p.y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    inside
}

impl Arrangement {
    /// Builds the full subdivision. Cell ids follow a canonical order: bounded
    /// cells sorted by their sorted boundary vertex list, the unbounded cell last.
    pub fn build(inst: &Instance) -> Arrangement {
        let segs = inst.segments();
        let n = segs.len();

        let mut on_segment: Vec<Vec<Point>> = segs.iter().map(|s| vec![s.a.clone(), s.b.clone()]).collect();
        for i in 0..n {
            for j in i + 1..n {
                if let Intersection::Point(p) = intersect(&segs[i], &segs[j]) {
                    on_segment[i].push(p.clone());
                    on_segment[j].push(p);
                }
            }
        }

        let mut all: Vec<Point> = on_segment.iter().flatten().cloned().collect();
        all.sort();
        all.dedup();
        let vertex_of: BTreeMap<Point, VertexId> = all.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let vertices = all;

        // Edges: consecutive points along each segment (lexicographic order = order from a to b).
        let mut half_edges: Vec<HalfEdge> = Vec::new();
        let mut dirs: Vec<(Rational, Rational)> = Vec::new();
        for (sid, pts) in on_segment.iter_mut().enumerate() {
            pts.sort();
            pts.dedup();
            for w in pts.windows(2) {
                let (u, v) = (vertex_of[&w[0]], vertex_of[&w[1]]);
                let e = half_edges.len();
                for (origin, twin, fwd) in [(u, e + 1, true), (v, e, false)] {
                    half_edges.push(HalfEdge {
                        origin,
                        twin,
                        next: usize::MAX,
                        prev: usize::MAX,
                        segment: sid,
                        cell: usize::MAX,
                    });
                    dirs.push(direction(&segs[sid], fwd));
                }
            }
        }

        let mut outgoing: Vec<Vec<HalfEdgeId>> = vec![Vec::new(); vertices.len()];
        for (e, he) in half_edges.iter().enumerate() {
            outgoing[he.origin].push(e);
        }
        for list in outgoing.iter_mut() {
            list.sort_by(|&a, &b| angle_cmp(&dirs[a], &dirs[b]));
        }
        let mut slot = vec![0usize; half_edges.len()];
        for list in &outgoing {
            for (i, &e) in list.iter().enumerate() {
                slot[e] = i;
            }
        }
        // next(e) is the outgoing edge at dest(e) immediately clockwise from twin(e).
        for e in 0..half_edges.len() {
            let t = half_edges[e].twin;
            let v = half_edges[t].origin;
            let deg = outgoing[v].len();
            let nx = outgoing[v][(slot[t] + deg - 1) % deg];
            half_edges[e].next = nx;
            half_edges[nx].prev = e;
        }

        // Trace cycles.
        let mut cycle_of = vec![usize::MAX; half_edges.len()];
        let mut cycles: Vec<Vec<HalfEdgeId>> = Vec::new();
        for start in 0..half_edges.len() {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let mut cyc = Vec::new();
            let mut e = start;
            loop {
                cycle_of[e] = cycles.len();
                cyc.push(e);
                e = half_edges[e].next;
                if e == start {
                    break;
                }
            }
            cycles.push(cyc);
        }

        let mut uf = UnionFind::new(vertices.len());
        for he in &half_edges {
            uf.union(he.origin, half_edges[he.twin].origin);
        }
        let mut comp_index = BTreeMap::new();
        for v in 0..vertices.len() {
            let r = uf.find(v);
            let next = comp_index.len();
            comp_index.entry(r).or_insert(next);
        }
        let components = comp_index.len();
        let comp_of_vertex: Vec<usize> = (0..vertices.len()).map(|v| comp_index[&uf.find(v)]).collect();

        let mut arr = Arrangement {
            instance: inst.clone(),
            vertices,
            half_edges,
            cells: Vec::new(),
            incidence: vec![Vec::new(); n],
            components,
        };

        let areas: Vec<Rational> = cycles.iter().map(|c| arr.cycle_area2(c)).collect();
        let comp_of_cycle: Vec<usize> = cycles
            .iter()
            .map(|c| comp_of_vertex[arr.half_edges[c[0]].origin])
            .collect();
        let positive: Vec<usize> = (0..cycles.len()).filter(|&c| areas[c].is_positive()).collect();

        // Exactly one non-positive cycle per component: its outer boundary.
        let mut outer_of_comp = vec![usize::MAX; components];
        for c in 0..cycles.len() {
            if !areas[c].is_positive() {
                debug_assert_eq!(outer_of_comp[comp_of_cycle[c]], usize::MAX);
                outer_of_comp[comp_of_cycle[c]] = c;
            }
        }

        // Assign each component to the innermost bounded cycle of another component containing it.
        let mut holes_of: BTreeMap<Option<usize>, Vec<usize>> = BTreeMap::new();
        let mut min_vertex_of_comp = vec![usize::MAX; components];
        for v in (0..arr.vertices.len()).rev() {
            min_vertex_of_comp[comp_of_vertex[v]] = v;
        }
        for comp in 0..components {
            let probe = &arr.vertices[min_vertex_of_comp[comp]];
            let mut best: Option<usize> = None;
            for &c in &positive {
                if comp_of_cycle[c] == comp {
                    continue;
                }
                let pts = arr.cycle_points(&cycles[c]);
                if cycle_contains(&pts, probe) && best.is_none_or(|b| areas[c] < areas[b]) {
                    best = Some(c);
                }
            }
            holes_of.entry(best).or_default().push(outer_of_comp[comp]);
        }

        struct Proto {
            key: Vec<Point>,
            boundary: Vec<usize>,
            outer: Option<usize>,
        }
        let mut protos: Vec<Proto> = positive
            .iter()
            .map(|&c| {
                let mut boundary = vec![c];
                boundary.extend(holes_of.get(&Some(c)).into_iter().flatten().copied());
                Proto {
                    key: Vec::new(),
                    boundary,
                    outer: Some(c),
                }
            })
            .collect();
        for p in protos.iter_mut() {
            let mut key: Vec<Point> = p
                .boundary
                .iter()
                .flat_map(|&c| cycles[c].iter().map(|&e| arr.vertices[arr.half_edges[e].origin].clone()))
                .collect();
            key.sort();
            key.dedup();
            p.key = key;
        }
        protos.sort_by(|a, b| a.key.cmp(&b.key).then(a.boundary[0].cmp(&b.boundary[0])));
        protos.push(Proto {
            key: Vec::new(),
            boundary: holes_of.get(&None).cloned().unwrap_or_default(),
            outer: None,
        });

        for (id, p) in protos.into_iter().enumerate() {
            let boundary: Vec<Vec<HalfEdgeId>> = p.boundary.iter().map(|&c| cycles[c].clone()).collect();
            let mut covered_by = BTreeSet::new();
            for &e in boundary.iter().flatten() {
                arr.half_edges[e].cell = id;
                covered_by.insert(arr.half_edges[e].segment);
            }
            let outer_area2 = p.outer.map(|c| areas[c].clone()).unwrap_or_else(Rational::zero);
            let mut cell = Cell {
                id,
                bounded: p.outer.is_some(),
                boundary,
                covered_by,
                rectangular: false,
                outer_area2,
            };
            cell.rectangular = arr.is_rectangle(&cell);
            for &s in &cell.covered_by {
                arr.incidence[s].push(id);
            }
            arr.cells.push(cell);
        }

        debug_assert!(arr.euler_holds());
        arr
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn segments(&self) -> &[Segment] {
        self.instance.segments()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id]
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    /// Connected components of the union of segments.
    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn unbounded_cell(&self) -> CellId {
        self.cells.len() - 1
    }

    /// Cells covered by segment `s`, ascending.
    pub fn cells_of_segment(&self, s: usize) -> &[CellId] {
        &self.incidence[s]
    }

    pub fn dest(&self, e: HalfEdgeId) -> VertexId {
        self.half_edges[self.half_edges[e].twin].origin
    }

    /// V - E + F = 1 + C.
    pub fn euler_holds(&self) -> bool {
        let lhs = self.vertices.len() as i64 - self.edge_count() as i64 + self.cells.len() as i64;
        lhs == 1 + self.components as i64
    }

    fn cycle_points(&self, cycle: &[HalfEdgeId]) -> Vec<&Point> {
        cycle.iter().map(|&e| &self.vertices[self.half_edges[e].origin]).collect()
    }

    fn cycle_area2(&self, cycle: &[HalfEdgeId]) -> Rational {
        let pts = self.cycle_points(cycle);
        let mut a = Rational::zero();
        for i in 0..pts.len() {
            let (p, q) = (pts[i], pts[(i + 1) % pts.len()]);
            a += &p.x * &q.y - &p.y * &q.x;
        }
        a
    }

    /// Bounded, a single axis-parallel cycle with exactly four corners (all
    /// left turns) and exactly four distinct defining segments.
    fn is_rectangle(&self, cell: &Cell) -> bool {
        if !cell.bounded || cell.boundary.len() != 1 || cell.covered_by.len() != 4 {
            return false;
        }
        let cyc = &cell.boundary[0];
        let segs = self.segments();
        if cyc.iter().any(|&e| !segs[self.half_edges[e].segment].orientation.is_axis_parallel()) {
            return false;
        }
        let dir = |e: HalfEdgeId| {
            let a = &self.vertices[self.half_edges[e].origin];
            let b = &self.vertices[self.dest(e)];
            (&b.x - &a.x, &b.y - &a.y)
        };
        let mut corners = 0;
        for i in 0..cyc.len() {
            let d1 = dir(cyc[i]);
            let d2 = dir(cyc[(i + 1) % cyc.len()]);
            let c = &d1.0 * &d2.1 - &d1.1 * &d2.0;
            if c.is_negative() {
                return false;
            }
            if c.is_positive() {
                corners += 1;
            } else if (&d1.0 * &d2.0 + &d1.1 * &d2.1).is_negative() {
                return false; // reversal: a dangling edge
            }
        }
        corners == 4
    }

    /// Cell containing `p`, or `None` when `p` lies on a segment.
    pub fn locate(&self, p: &Point) -> Option<CellId> {
        if self.segments().iter().any(|s| s.contains(p)) {
            return None;
        }
        let mut best: Option<CellId> = None;
        for cell in self.cells.iter().filter(|c| c.bounded) {
            let pts = self.cycle_points(&cell.boundary[0]);
            if cycle_contains(&pts, p) && best.is_none_or(|b| cell.outer_area2 < self.cells[b].outer_area2) {
                best = Some(cell.id);
            }
        }
        Some(best.unwrap_or_else(|| self.unbounded_cell()))
    }

    /// Cells covered by every segment in `ids`; all cells when `ids` is empty.
    pub fn cells_covered_by_all(&self, ids: &BTreeSet<usize>) -> Result<BTreeSet<CellId>, ArrangementError> {
        if let Some(&bad) = ids.iter().find(|&&s| s >= self.segments().len()) {
            return Err(ArrangementError::UnknownSegment(bad));
        }
        Ok(self
            .cells
            .iter()
            .filter(|c| ids.is_subset(&c.covered_by))
            .map(|c| c.id)
            .collect())
    }

    /// Vertices of a cycle as points, in traversal order.
    pub fn cycle_vertices(&self, cycle: &[HalfEdgeId]) -> Vec<Point> {
        self.cycle_points(cycle).into_iter().cloned().collect()
    }

    pub fn orientation_of(&self, s: usize) -> &SegmentOrientation {
        &self.segments()[s].orientation
    }
}
