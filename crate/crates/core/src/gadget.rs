//! Vertex cover on graphs of maximum degree three, encoded as rectangular-cell
//! covering.
//!
//! Vertex `i` gets a horizontal `H_i`, a vertical `V_i`, a connector `C_i` and
//! four small connectors that close two rectangular cells: one bounded by
//! `H_i` and `C_i`, one by `C_i` and `V_i`. Vertical `V_i` crosses every
//! `H_j` with `j > i`; for an edge `{i, j}` two short segments close a
//! rectangular cell in the corner of that crossing. Any other rectangular
//! cell bounded only by `H`/`V` segments gets a blocker segment inside it.
//! The minimum cover then has size `n + τ(G)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arrangement::{Arrangement, Instance};
use crate::cover::{AllowedMode, Cover, CoverInstance, TargetMode};

/// Grid pitch between consecutive vertex gadgets.
const PITCH: i64 = 8;

/// Largest graph accepted by [`vc_brute_force`].
pub const VC_BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} has degree {degree}, more than 3")]
    DegreeViolation { vertex: usize, degree: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} listed twice")]
    ParallelEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph has {0} vertices; brute force handles at most {VC_BRUTE_FORCE_LIMIT}")]
    TooLarge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut set = BTreeSet::new();
        let mut degree = vec![0usize; n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(GraphError::ParallelEdge(e.0, e.1));
            }
            degree[a] += 1;
            degree[b] += 1;
        }
        if let Some((vertex, &degree)) = degree.iter().enumerate().find(|(_, &d)| d > 3) {
            return Err(GraphError::DegreeViolation { vertex, degree });
        }
        Ok(Graph { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_vertex_cover(&self, m: &BTreeSet<usize>) -> bool {
        self.edges.iter().all(|(a, b)| m.contains(a) || m.contains(b))
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|v| self.degree(v) == 0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Minimum vertex cover by exhaustive search. Among minimum covers the
/// witness is the lexicographically smallest sorted vertex list.
pub fn vc_brute_force(g: &Graph) -> Result<(usize, BTreeSet<usize>), GraphError> {
    if g.n > VC_BRUTE_FORCE_LIMIT {
        return Err(GraphError::TooLarge(g.n));
    }
    let edge_masks: Vec<u32> = g.edges.iter().map(|&(a, b)| 1 << a | 1 << b).collect();
    let mut best: Option<Vec<usize>> = None;
    for mask in 0u32..1 << g.n {
        if !edge_masks.iter().all(|&e| mask & e != 0) {
            continue;
        }
        let set: Vec<usize> = (0..g.n).filter(|&v| mask >> v & 1 == 1).collect();
        let better = match &best {
            None => true,
            Some(b) => set.len() < b.len() || (set.len() == b.len() && set < *b),
        };
        if better {
            best = Some(set);
        }
    }
    let best = best.expect("the full vertex set is a cover");
    Ok((best.len(), best.into_iter().collect()))
}

/// Random graph with maximum degree three: `3n` candidate pairs are drawn and
/// kept when both endpoints still have spare degree.
pub fn random_max_deg3(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree = vec![0usize; n];
    let mut edges = BTreeSet::new();
    if n >= 2 {
        for _ in 0..3 * n {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            let e = (a.min(b), a.max(b));
            if a == b || degree[a] == 3 || degree[b] == 3 || edges.contains(&e) {
                continue;
            }
            degree[a] += 1;
            degree[b] += 1;
            edges.insert(e);
        }
    }
    Graph { n, edges }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeSide {
    H,
    V,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    H(usize),
    V(usize),
    Connector(usize),
    /// Small connector `1..=4` of a vertex; 1 and 2 close the `H` cell, 3 and
    /// 4 close the `V` cell.
    Small(usize, u8),
    Edge(usize, usize, EdgeSide),
    Blocker,
}

impl Role {
    fn is_long(&self) -> bool {
        matches!(self, Role::H(_) | Role::V(_))
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::H(i) => write!(f, "H {i}"),
            Role::V(i) => write!(f, "V {i}"),
            Role::Connector(i) => write!(f, "C {i}"),
            Role::Small(i, k) => write!(f, "S {i} {k}"),
            Role::Edge(i, j, EdgeSide::H) => write!(f, "E {i} {j} h"),
            Role::Edge(i, j, EdgeSide::V) => write!(f, "E {i} {j} v"),
            Role::Blocker => f.write_str("B"),
        }
    }
}

impl std::str::FromStr for Role {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let num = |i: usize| -> Result<usize, String> {
            parts
                .get(i)
                .ok_or_else(|| format!("missing field in role `{s}`"))?
                .parse()
                .map_err(|_| format!("bad number in role `{s}`"))
        };
        let role = match parts.first().copied() {
            Some("H") if parts.len() == 2 => Role::H(num(1)?),
            Some("V") if parts.len() == 2 => Role::V(num(1)?),
            Some("C") if parts.len() == 2 => Role::Connector(num(1)?),
            Some("S") if parts.len() == 3 => {
                let k = num(2)?;
                if !(1..=4).contains(&k) {
                    return Err(format!("small connector index out of range in `{s}`"));
                }
                Role::Small(num(1)?, k as u8)
            }
            Some("E") if parts.len() == 4 => {
                let side = match parts[3] {
                    "h" => EdgeSide::H,
                    "v" => EdgeSide::V,
                    _ => return Err(format!("bad edge side in `{s}`")),
                };
                Role::Edge(num(1)?, num(2)?, side)
            }
            Some("B") if parts.len() == 1 => Role::Blocker,
            _ => return Err(format!("unknown role `{s}`")),
        };
        Ok(role)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetLayout {
    pub graph: Graph,
    pub instance: Instance,
    /// Indexed by segment id.
    pub roles: Vec<Role>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cover misses rectangular cell {0}")]
    InfeasibleCover(usize),
    #[error("roles list has {roles} entries for {segments} segments")]
    RoleCount { roles: usize, segments: usize },
}

fn vertex_segments(n: usize, i: usize) -> Vec<([i64; 4], Role)> {
    let c = PITCH * i as i64;
    let top = PITCH * n as i64;
    vec![
        ([-1, c, c + 2, c], Role::H(i)),
        ([c, c, c, c + 1], Role::Small(i, 1)),
        ([c + 2, c, c + 2, c + 1], Role::Small(i, 2)),
        ([c, c + 1, c + 3, c + 1], Role::Connector(i)),
        ([c + 1, c + 1, c + 1, c + 2], Role::Small(i, 4)),
        ([c + 1, c + 2, c + 3, c + 2], Role::Small(i, 3)),
        ([c + 3, c + 1, c + 3, top], Role::V(i)),
    ]
}

fn edge_segments(i: usize, j: usize) -> Vec<([i64; 4], Role)> {
    let x = PITCH * i as i64 + 3;
    let y = PITCH * j as i64;
    vec![
        ([x, y + 1, x + 2, y + 1], Role::Edge(i, j, EdgeSide::H)),
        ([x + 1, y, x + 1, y + 2], Role::Edge(i, j, EdgeSide::V)),
    ]
}

/// Rectangular cells of `arr` whose four sides all lie on `H`/`V` segments.
fn unblocked_cells(arr: &Arrangement, roles: &[Role]) -> Vec<usize> {
    arr.cells()
        .iter()
        .filter(|c| c.rectangular && c.covered_by.iter().all(|&s| roles[s].is_long()))
        .map(|c| c.id)
        .collect()
}

/// Integer bounding box `[x0, y0, x1, y1]` of a bounded cell.
fn cell_bbox(arr: &Arrangement, cell: usize) -> [i64; 4] {
    let pts = arr.cycle_vertices(&arr.cell(cell).boundary[0]);
    let as_int = |r: &crate::geom::Rational| -> i64 {
        assert!(r.is_integer(), "gadget coordinates are integral");
        i64::try_from(r.to_integer()).expect("gadget coordinates fit in i64")
    };
    let xs: Vec<i64> = pts.iter().map(|p| as_int(&p.x)).collect();
    let ys: Vec<i64> = pts.iter().map(|p| as_int(&p.y)).collect();
    [
        *xs.iter().min().unwrap(),
        *ys.iter().min().unwrap(),
        *xs.iter().max().unwrap(),
        *ys.iter().max().unwrap(),
    ]
}

/// Every rectangular cell has a connector side or both segments of an edge
/// pair among its sides.
pub fn audit(arr: &Arrangement, roles: &[Role]) -> Result<(), usize> {
    for c in arr.cells().iter().filter(|c| c.rectangular) {
        let rs: Vec<Role> = c.covered_by.iter().map(|&s| roles[s]).collect();
        let connector = rs.iter().any(|r| matches!(r, Role::Connector(_)));
        let pair = rs.iter().any(|r| match r {
            Role::Edge(i, j, EdgeSide::H) => rs.contains(&Role::Edge(*i, *j, EdgeSide::V)),
            _ => false,
        });
        if !connector && !pair {
            return Err(c.id);
        }
    }
    Ok(())
}

pub fn build_gadget(g: &Graph) -> Result<GadgetLayout, GadgetError> {
    let g = Graph::new(g.n, &g.edges.iter().copied().collect::<Vec<_>>())?;
    let mut placed: Vec<([i64; 4], Role)> = Vec::new();
    for i in 0..g.n {
        placed.extend(vertex_segments(g.n, i));
    }
    for &(i, j) in &g.edges {
        placed.extend(edge_segments(i, j));
    }
    loop {
        let coords: Vec<[i64; 4]> = placed.iter().map(|p| p.0).collect();
        let roles: Vec<Role> = placed.iter().map(|p| p.1).collect();
        let instance = Instance::from_int_coords(&coords).expect("gadget layout is valid");
        let arr = Arrangement::build(&instance);
        let open = unblocked_cells(&arr, &roles);
        if open.is_empty() {
            debug_assert_eq!(audit(&arr, &roles), Ok(()));
            let instance = instance.with_name("gadget", "gadget");
            return Ok(GadgetLayout {
                graph: g,
                instance,
                roles,
            });
        }
        for cell in open {
            let [x0, y0, x1, y1] = cell_bbox(&arr, cell);
            assert!(x1 - x0 >= 2 && y1 - y0 >= 3, "cell too small for a blocker");
            let (mx, my) = ((x0 + x1) / 2, (y0 + y1) / 2);
            placed.push(([mx, my, mx, my + 1], Role::Blocker));
        }
    }
}

impl GadgetLayout {
    pub fn arrangement(&self) -> Arrangement {
        Arrangement::build(&self.instance)
    }

    pub fn cover_instance(&self, arr: &Arrangement) -> CoverInstance {
        CoverInstance::from_arrangement(arr, TargetMode::RectangularCells, AllowedMode::AllSegments)
            .expect("every rectangular cell has four covering segments")
    }

    pub fn segment_of(&self, role: Role) -> Option<usize> {
        self.roles.iter().position(|&r| r == role)
    }

    /// Turns a cover of the rectangular cells into a vertex cover of the
    /// source graph, after rewriting small connectors to their connector and
    /// edge segments to the long segments of the same cell.
    pub fn map_back(&self, cover: &Cover) -> Result<BTreeSet<usize>, GadgetError> {
        let arr = self.arrangement();
        let ci = self.cover_instance(&arr);
        if let Some(d) = ci.unhit(&cover.chosen).next() {
            return Err(GadgetError::InfeasibleCover(d.origin_cells[0]));
        }
        let chosen: BTreeSet<Role> = cover.chosen.iter().map(|&s| self.roles[s]).collect();
        let mut normal: BTreeSet<Role> = BTreeSet::new();
        let mut edge_sides: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for r in &chosen {
            match *r {
                Role::Small(i, _) => {
                    normal.insert(Role::Connector(i));
                }
                Role::Edge(i, j, _) => *edge_sides.entry((i, j)).or_insert(0) += 1,
                Role::Blocker => {}
                other => {
                    normal.insert(other);
                }
            }
        }
        for ((i, j), count) in edge_sides {
            let (v, h) = (Role::V(i), Role::H(j));
            if count == 2 {
                normal.insert(v);
                normal.insert(h);
            } else if !chosen.contains(&v) && !chosen.contains(&h) {
                normal.insert(v);
            }
        }
        Ok(normal
            .into_iter()
            .filter_map(|r| match r {
                Role::H(i) | Role::V(i) => Some(i),
                _ => None,
            })
            .collect())
    }
}
