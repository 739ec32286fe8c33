//! Exact rational plane geometry: points, segments, orientation and
//! segment intersection. No floating point is used in any decision.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact fraction of arbitrary-precision integers, always in lowest terms
/// with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point { x: rat(x), y: rat(y) }
    }

    pub fn from_bigints(x: BigInt, y: BigInt) -> Self {
        Point {
            x: Rational::from_integer(x),
            y: Rational::from_integer(y),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Lossy conversion, used only when rendering.
    pub fn to_f64(&self) -> (f64, f64) {
        (rational_to_f64(&self.x), rational_to_f64(&self.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

fn cross(ox: &Rational, oy: &Rational, ax: &Rational, ay: &Rational, bx: &Rational, by: &Rational) -> Rational {
    (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
}

/// Sign of the cross product `(q - p) x (r - p)`.
pub fn orient(p: &Point, q: &Point, r: &Point) -> Orientation {
    let c = cross(&p.x, &p.y, &q.x, &q.y, &r.x, &r.y);
    match c.cmp(&Rational::zero()) {
        Ordering::Greater => Orientation::Left,
        Ordering::Less => Orientation::Right,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// Primitive integer direction of a non-axis-parallel segment, normalised
/// so that `dx > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    pub dx: BigInt,
    pub dy: BigInt,
}

impl Direction {
    pub fn new(dx: BigInt, dy: BigInt) -> Option<Self> {
        if dx.is_zero() && dy.is_zero() {
            return None;
        }
        let g = dx.gcd(&dy);
        let (mut dx, mut dy) = (dx / &g, dy / &g);
        if dx.is_negative() || (dx.is_zero() && dy.is_negative()) {
            dx = -dx;
            dy = -dy;
        }
        Some(Direction { dx, dy })
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.dx, self.dy)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SegmentOrientation {
    Horizontal,
    Vertical,
    General(Direction),
}

impl SegmentOrientation {
    pub fn is_axis_parallel(&self) -> bool {
        !matches!(self, SegmentOrientation::General(_))
    }

    pub fn of(a: &Point, b: &Point) -> Option<Self> {
        if a == b {
            return None;
        }
        if a.y == b.y {
            return Some(SegmentOrientation::Horizontal);
        }
        if a.x == b.x {
            return Some(SegmentOrientation::Vertical);
        }
        let dx = &b.x - &a.x;
        let dy = &b.y - &a.y;
        // Scale the rational direction to integers before normalising.
        let l = dx.denom().lcm(dy.denom());
        let ix = (dx * Rational::from_integer(l.clone())).to_integer();
        let iy = (dy * Rational::from_integer(l)).to_integer();
        Direction::new(ix, iy).map(SegmentOrientation::General)
    }
}

impl fmt::Display for SegmentOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SegmentOrientation::Horizontal => f.write_str("h"),
            SegmentOrientation::Vertical => f.write_str("v"),
            SegmentOrientation::General(d) => write!(f, "{d}"),
        }
    }
}

/// A closed line segment with a dense index. Endpoints are stored in
/// lexicographic order (`a < b`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub id: usize,
    pub a: Point,
    pub b: Point,
    pub orientation: SegmentOrientation,
}

impl Segment {
    /// Returns `None` for a degenerate (zero-length) segment.
    pub fn new(id: usize, p: Point, q: Point) -> Option<Self> {
        let orientation = SegmentOrientation::of(&p, &q)?;
        let (a, b) = if p <= q { (p, q) } else { (q, p) };
        Some(Segment { id, a, b, orientation })
    }

    pub fn from_ints(id: usize, x1: i64, y1: i64, x2: i64, y2: i64) -> Option<Self> {
        Segment::new(id, Point::from_ints(x1, y1), Point::from_ints(x2, y2))
    }

    /// Whether `p` lies on the closed segment.
    pub fn contains(&self, p: &Point) -> bool {
        orient(&self.a, &self.b, p) == Orientation::Collinear
            && self.a.x <= p.x
            && p.x <= self.b.x
            && std::cmp::min(&self.a.y, &self.b.y) <= &p.y
            && &p.y <= std::cmp::max(&self.a.y, &self.b.y)
    }

    /// Parameter `t` with `p = a + t (b - a)` for a point on the segment's line.
    pub fn param_of(&self, p: &Point) -> Rational {
        if self.a.x != self.b.x {
            (&p.x - &self.a.x) / (&self.b.x - &self.a.x)
        } else {
            (&p.y - &self.a.y) / (&self.b.y - &self.a.y)
        }
    }

    pub fn same_endpoints(&self, other: &Segment) -> bool {
        self.a == other.a && self.b == other.b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    Point(Point),
    Overlap,
}

/// Exact classification of the common part of two closed segments.
pub fn intersect(s: &Segment, t: &Segment) -> Intersection {
    let (p, q) = (&s.a, &t.a);
    let rx = &s.b.x - &s.a.x;
    let ry = &s.b.y - &s.a.y;
    let vx = &t.b.x - &t.a.x;
    let vy = &t.b.y - &t.a.y;
    let qpx = &q.x - &p.x;
    let qpy = &q.y - &p.y;

    let denom = &rx * &vy - &ry * &vx;
    let zero = Rational::zero();
    let one = rat(1);

    if !denom.is_zero() {
        let tn = &qpx * &vy - &qpy * &vx;
        let wn = &qpx * &ry - &qpy * &rx;
        let ts = tn / &denom;
        let ws = wn / &denom;
        if ts < zero || ts > one || ws < zero || ws > one {
            return Intersection::Empty;
        }
        return Intersection::Point(Point::new(&p.x + &ts * &rx, &p.y + &ts * &ry));
    }

    // Parallel. Collinear only if q lies on s's supporting line.
    if !(&qpx * &ry - &qpy * &rx).is_zero() {
        return Intersection::Empty;
    }
    let rr = &rx * &rx + &ry * &ry;
    let t0 = (&qpx * &rx + &qpy * &ry) / &rr;
    let t1 = ((&qpx + &vx) * &rx + (&qpy + &vy) * &ry) / &rr;
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let lo = lo.max(zero);
    let hi = hi.min(one);
    match lo.cmp(&hi) {
        Ordering::Greater => Intersection::Empty,
        Ordering::Equal => Intersection::Point(Point::new(&p.x + &lo * &rx, &p.y + &lo * &ry)),
        Ordering::Less => Intersection::Overlap,
    }
}
