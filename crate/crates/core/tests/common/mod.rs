//! Test oracles written independently of the library's geometry and solvers.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use lsc_core::arrangement::{Arrangement, Instance};
use lsc_core::geom::Point;

type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

#[derive(Clone, Debug)]
struct Seg {
    x1: Q,
    y1: Q,
    x2: Q,
    y2: Q,
}

impl Seg {
    fn vertical(&self) -> bool {
        self.x1 == self.x2
    }
    fn min_x(&self) -> &Q {
        std::cmp::min(&self.x1, &self.x2)
    }
    fn max_x(&self) -> &Q {
        std::cmp::max(&self.x1, &self.x2)
    }
    fn y_range(&self) -> (Q, Q) {
        if self.y1 <= self.y2 {
            (self.y1.clone(), self.y2.clone())
        } else {
            (self.y2.clone(), self.y1.clone())
        }
    }
    /// y on the supporting line at `x`; only for non-vertical segments.
    fn y_at(&self, x: &Q) -> Q {
        &self.y1 + (&self.y2 - &self.y1) * (x - &self.x1) / (&self.x2 - &self.x1)
    }
    fn spans(&self, a: &Q, b: &Q) -> bool {
        !self.vertical() && self.min_x() <= a && self.max_x() >= b
    }
    fn contains(&self, x: &Q, y: &Q) -> bool {
        if self.vertical() {
            let (lo, hi) = self.y_range();
            *x == self.x1 && &lo <= y && y <= &hi
        } else {
            self.min_x() <= x && x <= self.max_x() && self.y_at(x) == *y
        }
    }
}

/// x-coordinate of the crossing of two non-parallel segments, if they meet.
fn crossing_x(a: &Seg, b: &Seg) -> Option<Q> {
    let (rx, ry) = (&a.x2 - &a.x1, &a.y2 - &a.y1);
    let (sx, sy) = (&b.x2 - &b.x1, &b.y2 - &b.y1);
    let den = &rx * &sy - &ry * &sx;
    if den.is_zero() {
        return None;
    }
    let (qx, qy) = (&b.x1 - &a.x1, &b.y1 - &a.y1);
    let t = (&qx * &sy - &qy * &sx) / &den;
    let u = (&qx * &ry - &qy * &rx) / &den;
    let unit = |v: &Q| !v.is_negative() && *v <= Q::one();
    (unit(&t) && unit(&u)).then(|| &a.x1 + t * rx)
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Cells of an arrangement recovered from a vertical slab decomposition.
///
/// Between consecutive event abscissae the spanning segments are totally
/// ordered; the gaps between them are trapezoidal atoms. Atoms of adjacent
/// slabs are merged when an unblocked stretch of the separating vertical line
/// joins them.
pub struct SlabOracle {
    segs: Vec<Seg>,
    xs: Vec<Q>,
    /// Per slab, ids of spanning segments from bottom to top. Slab `s` lies
    /// between `xs[s - 1]` and `xs[s]`; slabs 0 and `xs.len()` are unbounded.
    order: Vec<Vec<usize>>,
    offset: Vec<usize>,
    comp: Vec<usize>,
    pub components: usize,
    pub unbounded: BTreeSet<usize>,
    pub covered: Vec<BTreeSet<usize>>,
    pub representatives: Vec<(Q, Q)>,
}

impl SlabOracle {
    pub fn new(inst: &Instance) -> SlabOracle {
        let segs: Vec<Seg> = inst
            .segments()
            .iter()
            .map(|s| Seg {
                x1: s.a.x.clone(),
                y1: s.a.y.clone(),
                x2: s.b.x.clone(),
                y2: s.b.y.clone(),
            })
            .collect();
        let mut xs: Vec<Q> = segs.iter().flat_map(|s| [s.x1.clone(), s.x2.clone()]).collect();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                xs.extend(crossing_x(&segs[i], &segs[j]));
            }
        }
        xs.sort();
        xs.dedup();

        let slab_count = xs.len() + 1;
        let mut order = Vec::with_capacity(slab_count);
        let mut offset = Vec::with_capacity(slab_count);
        let mut atoms = 0;
        for s in 0..slab_count {
            let mut ids: Vec<usize> = Vec::new();
            if s > 0 && s < xs.len() {
                let (a, b) = (&xs[s - 1], &xs[s]);
                let mid = (a + b) / q(2);
                ids = (0..segs.len()).filter(|&i| segs[i].spans(a, b)).collect();
                ids.sort_by(|&i, &j| segs[i].y_at(&mid).cmp(&segs[j].y_at(&mid)));
            }
            offset.push(atoms);
            atoms += ids.len() + 1;
            order.push(ids);
        }

        let mut oracle = SlabOracle {
            segs,
            xs,
            order,
            offset,
            comp: Vec::new(),
            components: 0,
            unbounded: BTreeSet::new(),
            covered: Vec::new(),
            representatives: Vec::new(),
        };

        let mut parent: Vec<usize> = (0..atoms).collect();
        for i in 0..oracle.xs.len() {
            for y in oracle.gap_points(i) {
                let l = oracle.atom_at(i, &oracle.xs[i], &y);
                let r = oracle.atom_at(i + 1, &oracle.xs[i], &y);
                let (a, b) = (find(&mut parent, l), find(&mut parent, r));
                parent[a] = b;
            }
        }
        let mut label: BTreeMap<usize, usize> = BTreeMap::new();
        let mut comp = vec![0; atoms];
        for (a, c) in comp.iter_mut().enumerate() {
            let root = find(&mut parent, a);
            let next = label.len();
            *c = *label.entry(root).or_insert(next);
        }
        oracle.components = label.len();
        oracle.comp = comp;

        // Unbounded: outer slabs and the bottom/top atom of every slab.
        let mut unbounded = BTreeSet::new();
        for s in 0..slab_count {
            unbounded.insert(oracle.comp[oracle.offset[s]]);
            unbounded.insert(oracle.comp[oracle.offset[s] + oracle.order[s].len()]);
        }
        oracle.unbounded = unbounded;

        let mut covered = vec![BTreeSet::new(); oracle.components];
        for s in 1..oracle.xs.len() {
            for (pos, &id) in oracle.order[s].iter().enumerate() {
                covered[oracle.comp[oracle.offset[s] + pos]].insert(id);
                covered[oracle.comp[oracle.offset[s] + pos + 1]].insert(id);
            }
        }
        for (id, seg) in oracle.segs.iter().enumerate().filter(|(_, s)| s.vertical()) {
            let i = oracle.xs.binary_search(&seg.x1).unwrap();
            let (lo, hi) = seg.y_range();
            for slab in [i, i + 1] {
                for a in 0..=oracle.order[slab].len() {
                    let (alo, ahi) = oracle.atom_limits(slab, a, &oracle.xs[i]);
                    let above_lo = ahi.as_ref().is_none_or(|h| *h > lo);
                    let below_hi = alo.as_ref().is_none_or(|l| *l < hi);
                    if above_lo && below_hi {
                        covered[oracle.comp[oracle.offset[slab] + a]].insert(id);
                    }
                }
            }
        }
        oracle.covered = covered;

        let mut reps = Vec::with_capacity(atoms);
        for s in 0..slab_count {
            let x = if oracle.xs.is_empty() {
                q(0)
            } else if s == 0 {
                &oracle.xs[0] - q(1)
            } else if s == oracle.xs.len() {
                oracle.xs.last().unwrap() + q(1)
            } else {
                (&oracle.xs[s - 1] + &oracle.xs[s]) / q(2)
            };
            let ys: Vec<Q> = oracle.order[s].iter().map(|&id| oracle.segs[id].y_at(&x)).collect();
            for a in 0..=ys.len() {
                let y = match (a, ys.len()) {
                    (_, 0) => q(0),
                    (0, _) => &ys[0] - q(1),
                    (a, n) if a == n => &ys[n - 1] + q(1),
                    (a, _) => (&ys[a - 1] + &ys[a]) / q(2),
                };
                reps.push((x.clone(), y));
            }
        }
        oracle.representatives = reps;
        oracle
    }

    /// Limits at `x` of the segments bounding atom `a` of slab `slab`.
    fn atom_limits(&self, slab: usize, a: usize, x: &Q) -> (Option<Q>, Option<Q>) {
        let ids = &self.order[slab];
        let lo = (a > 0).then(|| self.segs[ids[a - 1]].y_at(x));
        let hi = (a < ids.len()).then(|| self.segs[ids[a]].y_at(x));
        (lo, hi)
    }

    /// One y per unblocked open stretch of the line `x = xs[i]`.
    fn gap_points(&self, i: usize) -> Vec<Q> {
        let x = &self.xs[i];
        let mut blocked: Vec<(Q, Q)> = Vec::new();
        for s in &self.segs {
            if s.vertical() {
                if s.x1 == *x {
                    blocked.push(s.y_range());
                }
            } else if s.min_x() <= x && x <= s.max_x() {
                let y = s.y_at(x);
                blocked.push((y.clone(), y));
            }
        }
        blocked.sort();
        let mut merged: Vec<(Q, Q)> = Vec::new();
        for (lo, hi) in blocked {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        let mut ys = vec![&merged[0].0 - q(1)];
        for w in merged.windows(2) {
            ys.push((&w[0].1 + &w[1].0) / q(2));
        }
        ys.push(&merged.last().unwrap().1 + q(1));
        ys
    }

    /// Atom of `slab` whose closure at abscissa `x` contains height `y`
    /// strictly inside; `y` must not be a limit of a spanning segment.
    fn atom_at(&self, slab: usize, x: &Q, y: &Q) -> usize {
        let below = self.order[slab].iter().filter(|&&id| self.segs[id].y_at(x) < *y).count();
        self.offset[slab] + below
    }

    pub fn atom_count(&self) -> usize {
        self.comp.len()
    }

    pub fn component_of_atom(&self, atom: usize) -> usize {
        self.comp[atom]
    }

    /// Component containing `(x, y)`, or `None` when the point is on a
    /// segment or on an event line.
    pub fn locate(&self, x: &Q, y: &Q) -> Option<usize> {
        if self.segs.iter().any(|s| s.contains(x, y)) || self.xs.binary_search(x).is_ok() {
            return None;
        }
        let slab = self.xs.partition_point(|v| v < x);
        Some(self.comp[self.atom_at(slab, x, y)])
    }
}

/// Compares the arrangement against the slab oracle: cell count, point
/// location of every atom representative and of `extra` points, boundedness
/// and covering sets. Returns a description of the first mismatch.
pub fn compare_with_oracle(arr: &Arrangement, extra: &[(Q, Q)]) -> Result<(), String> {
    let oracle = SlabOracle::new(arr.instance());
    if oracle.components != arr.cells().len() {
        return Err(format!("oracle has {} cells, arrangement {}", oracle.components, arr.cells().len()));
    }
    let mut to_cell: BTreeMap<usize, usize> = BTreeMap::new();
    let mut check = |comp: usize, x: &Q, y: &Q| -> Result<(), String> {
        let p = Point { x: x.clone(), y: y.clone() };
        let cell = arr.locate(&p).ok_or_else(|| format!("locate({x}, {y}) found nothing"))?;
        match to_cell.insert(comp, cell) {
            Some(prev) if prev != cell => Err(format!("component {comp} maps to cells {prev} and {cell}")),
            _ => Ok(()),
        }
    };
    for a in 0..oracle.atom_count() {
        let (x, y) = &oracle.representatives[a];
        check(oracle.component_of_atom(a), x, y)?;
    }
    for (x, y) in extra {
        if let Some(c) = oracle.locate(x, y) {
            check(c, x, y)?;
        }
    }
    let cells: BTreeSet<usize> = to_cell.values().copied().collect();
    if cells.len() != to_cell.len() {
        return Err("two oracle components share a cell".into());
    }
    for (&comp, &cell) in &to_cell {
        let c = arr.cell(cell);
        if c.bounded == oracle.unbounded.contains(&comp) {
            return Err(format!("cell {cell} boundedness disagrees"));
        }
        if c.covered_by != oracle.covered[comp] {
            return Err(format!(
                "cell {cell} covered by {:?}, oracle says {:?}",
                c.covered_by, oracle.covered[comp]
            ));
        }
    }
    Ok(())
}

/// Points on a fine rational lattice around the instance, deterministic in `seed`.
pub fn sample_points(inst: &Instance, count: usize, seed: u64) -> Vec<(Q, Q)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (mut lo, mut hi) = (0i64, 1i64);
    for s in inst.segments() {
        for p in [&s.a, &s.b] {
            for v in [&p.x, &p.y] {
                let f = v.floor().to_integer();
                let c = v.ceil().to_integer();
                lo = lo.min(i64::try_from(f).unwrap());
                hi = hi.max(i64::try_from(c).unwrap());
            }
        }
    }
    let den = 7i64;
    (0..count)
        .map(|_| {
            let x = rng.gen_range((lo - 2) * den..=(hi + 2) * den);
            let y = rng.gen_range((lo - 2) * den..=(hi + 2) * den);
            (Q::new(x.into(), den.into()), Q::new(y.into(), den.into()))
        })
        .collect()
}

/// Minimum hitting set size by mask enumeration.
pub fn brute_min_cover(sets: &[Vec<usize>], universe: usize) -> Option<usize> {
    let masks: Vec<u64> = sets.iter().map(|s| s.iter().fold(0u64, |m, &e| m | 1 << e)).collect();
    (0u64..1 << universe)
        .filter(|m| masks.iter().all(|s| s & m != 0))
        .map(|m| m.count_ones() as usize)
        .min()
}

/// Whether some swap removing at most `k` chosen elements and adding fewer
/// unchosen ground elements keeps every set hit.
pub fn has_improving_swap(sets: &[Vec<usize>], ground: &[usize], chosen: &BTreeSet<usize>, k: usize) -> bool {
    let inside: Vec<usize> = chosen.iter().copied().collect();
    let outside: Vec<usize> = ground.iter().copied().filter(|e| !chosen.contains(e)).collect();
    let hits = |sel: &BTreeSet<usize>| sets.iter().all(|s| s.iter().any(|e| sel.contains(e)));
    for r in 1..=k.min(inside.len()) {
        for removed in subsets(&inside, r) {
            let rest: BTreeSet<usize> = inside.iter().copied().filter(|e| !removed.contains(e)).collect();
            for m in 0..r {
                for added in subsets(&outside, m) {
                    let mut trial = rest.clone();
                    trial.extend(added);
                    if hits(&trial) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

pub fn subsets(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if items.len() < r {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Connected graphs with at most `max_n` vertices and maximum degree three,
/// one per isomorphism class, as edge lists.
pub fn connected_subcubic_graphs(max_n: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let perms = permutations(n);
        let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
            let mut deg = vec![0; n];
            for &(a, b) in &edges {
                deg[a] += 1;
                deg[b] += 1;
            }
            if deg.iter().any(|&d| d > 3) || !connected(n, &edges) {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut e: Vec<(usize, usize)> = edges
                        .iter()
                        .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                        .collect();
                    e.sort();
                    e
                })
                .min()
                .unwrap();
            if seen.insert(canon) {
                out.push((n, edges));
            }
        }
    }
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (u, w) in [(a, b), (b, a)] {
                if u == v && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Minimum vertex cover by mask enumeration.
pub fn brute_vertex_cover(n: usize, edges: &[(usize, usize)]) -> usize {
    (0u32..1 << n)
        .filter(|m| edges.iter().all(|&(a, b)| m >> a & 1 == 1 || m >> b & 1 == 1))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}
