//! Instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arrangement::{Instance, RawSegment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("coordinate range {0} is too small (need at least 2)")]
    RangeTooSmall(i64),
    #[error("could not place {wanted} segments after {attempts} attempts (placed {placed})")]
    Saturated { wanted: usize, placed: usize, attempts: usize },
    #[error("grid needs at least one row and one column")]
    EmptyGrid,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    AxisParallel,
    General,
}

fn propose(rng: &mut ChaCha8Rng, shape: Shape, max: i64) -> RawSegment {
    loop {
        let (x1, y1) = (rng.gen_range(0..=max), rng.gen_range(0..=max));
        let (x2, y2) = match shape {
            Shape::AxisParallel if rng.gen_bool(0.5) => (rng.gen_range(0..=max), y1),
            Shape::AxisParallel => (x1, rng.gen_range(0..=max)),
            Shape::General => (rng.gen_range(0..=max), rng.gen_range(0..=max)),
        };
        if (x1, y1) != (x2, y2) {
            return RawSegment::from_ints(x1, y1, x2, y2);
        }
    }
}

/// `n` random segments with integer endpoints in `[0, max]²`, drawn one at a
/// time and kept only if the set stays valid. Deterministic in `seed`.
pub fn random_instance(n: usize, max: i64, shape: Shape, seed: u64) -> Result<Instance, GenError> {
    if max < 2 {
        return Err(GenError::RangeTooSmall(max));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempts = 200 * (n + 1);
    let mut raw: Vec<RawSegment> = Vec::with_capacity(n);
    for _ in 0..attempts {
        if raw.len() == n {
            break;
        }
        raw.push(propose(&mut rng, shape, max));
        if Instance::validate(&raw).is_err() {
            raw.pop();
        }
    }
    if raw.len() < n {
        return Err(GenError::Saturated {
            wanted: n,
            placed: raw.len(),
            attempts,
        });
    }
    let name = match shape {
        Shape::AxisParallel => format!("random-axis-{n}-{seed}"),
        Shape::General => format!("random-general-{n}-{seed}"),
    };
    Ok(Instance::validate(&raw).expect("kept valid").with_name(name, "random"))
}

/// `rows` horizontals at `y = 0..rows` and `cols` verticals at `x = 0..cols`,
/// each overhanging the others by one unit. `grid(2, 2)` is the `#` shape.
pub fn grid(rows: usize, cols: usize) -> Result<Instance, GenError> {
    if rows == 0 || cols == 0 {
        return Err(GenError::EmptyGrid);
    }
    let (r, c) = (rows as i64, cols as i64);
    let mut coords = Vec::new();
    for y in 0..r {
        coords.push([-1, y, c, y]);
    }
    for x in 0..c {
        coords.push([x, -1, x, r]);
    }
    Ok(Instance::from_int_coords(&coords)
        .expect("grid is valid")
        .with_name(format!("grid-{rows}x{cols}"), "grid"))
}

/// Three axis-parallel segments (ids 0, 1, 2) that jointly cover six cells.
///
/// A horizontal crosses two verticals, which two short horizontals join above
/// and below. Three chains hanging off the triple close further cells around
/// it that all three segments bound.
pub fn triple_tight() -> Instance {
    let coords = [
        [0, 0, 30, 0],
        [10, -10, 10, 10],
        [20, -10, 20, 10],
        [10, 5, 20, 5],
        [10, -5, 20, -5],
        // chain from the right end of the horizontal
        [30, 0, 34, 0],
        [34, 0, 34, -12],
        [34, -12, 15, -12],
        [15, -12, 15, -7],
        [15, -7, 10, -7],
        // chain from the second vertical
        [20, 8, 37, 8],
        [37, 8, 37, -15],
        [37, -15, 7, -15],
        [7, -15, 7, -8],
        [7, -8, 10, -8],
        // chain from the left end of the horizontal
        [0, 0, -4, 0],
        [-4, 0, -4, -18],
        [-4, -18, 40, -18],
        [40, -18, 40, 9],
        [40, 9, 20, 9],
    ];
    Instance::from_int_coords(&coords)
        .expect("construction is valid")
        .with_name("triple-tight", "triple-tight")
}
