use std::collections::BTreeMap;

use thiserror::Error;

use crate::geom::{intersect, Intersection, Point, Segment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("segment {0} has identical endpoints")]
    DegenerateSegment(usize),
    #[error("segments {0} and {1} are identical")]
    DuplicateSegment(usize, usize),
    #[error("segments {0} and {1} overlap in more than one point")]
    OverlapViolation(usize, usize),
    #[error("point {point} lies on segments {segments:?}")]
    GeneralPositionViolation { point: Point, segments: Vec<usize> },
}

/// A validated set of pairwise non-overlapping segments in general position
/// (no point lies on three or more segments). Segment ids are `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub source: String,
    segments: Vec<Segment>,
}

/// Unvalidated input segment: two endpoints, possibly equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSegment {
    pub p: Point,
    pub q: Point,
}

impl RawSegment {
    pub fn new(p: Point, q: Point) -> Self {
        RawSegment { p, q }
    }

    pub fn from_ints(x1: i64, y1: i64, x2: i64, y2: i64) -> Self {
        RawSegment::new(Point::from_ints(x1, y1), Point::from_ints(x2, y2))
    }
}

impl Instance {
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn is_axis_parallel(&self) -> bool {
        self.segments.iter().all(|s| s.orientation.is_axis_parallel())
    }

    pub fn with_name(mut self, name: impl Into<String>, source: impl Into<String>) -> Self {
        self.name = name.into();
        self.source = source.into();
        self
    }

    /// Checks non-overlap and general position; ids are assigned in input order.
    pub fn validate(raw: &[RawSegment]) -> Result<Instance, ValidationError> {
        let mut segments = Vec::with_capacity(raw.len());
        for (id, r) in raw.iter().enumerate() {
            let s = Segment::new(id, r.p.clone(), r.q.clone()).ok_or(ValidationError::DegenerateSegment(id))?;
            segments.push(s);
        }

        let mut incidences: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
        for i in 0..segments.len() {
            for j in i + 1..segments.len() {
                if segments[i].same_endpoints(&segments[j]) {
                    return Err(ValidationError::DuplicateSegment(i, j));
                }
                match intersect(&segments[i], &segments[j]) {
                    Intersection::Empty => {}
                    Intersection::Overlap => return Err(ValidationError::OverlapViolation(i, j)),
                    Intersection::Point(p) => {
                        let ids = incidences.entry(p).or_default();
                        for id in [i, j] {
                            if !ids.contains(&id) {
                                ids.push(id);
                            }
                        }
                    }
                }
            }
        }
        if let Some((point, ids)) = incidences.into_iter().find(|(_, ids)| ids.len() >= 3) {
            let mut segments = ids;
            segments.sort_unstable();
            return Err(ValidationError::GeneralPositionViolation { point, segments });
        }

        Ok(Instance {
            name: String::new(),
            source: String::new(),
            segments,
        })
    }

    pub fn from_int_coords(coords: &[[i64; 4]]) -> Result<Instance, ValidationError> {
        let raw: Vec<_> = coords
            .iter()
            .map(|c| RawSegment::from_ints(c[0], c[1], c[2], c[3]))
            .collect();
        Instance::validate(&raw)
    }
}
