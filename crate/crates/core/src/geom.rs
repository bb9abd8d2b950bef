//! Exact predicates over integer points.
//!
//! Coordinates are bounded by [`COORD_LIMIT`] so every determinant fits in
//! an `i128` and crossing points can be stored as reduced rationals.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Largest allowed absolute coordinate value (2^30).
pub const COORD_LIMIT: i64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("coordinate out of range: ({x}, {y}) exceeds |c| <= 2^30")]
    OutOfRange { x: i64, y: i64 },
    #[error("degenerate segment at ({x}, {y})")]
    DegenerateSegment { x: i64, y: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn in_range(self) -> bool {
        self.x.abs() <= COORD_LIMIT && self.y.abs() <= COORD_LIMIT
    }

    pub fn check(self) -> Result<Self, GeomError> {
        if self.in_range() {
            Ok(self)
        } else {
            Err(GeomError::OutOfRange { x: self.x, y: self.y })
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, GeomError> {
        a.check()?;
        b.check()?;
        if a == b {
            return Err(GeomError::DegenerateSegment { x: a.x, y: a.y });
        }
        Ok(Segment { a, b })
    }

    /// Builds a segment without range or degeneracy checks. Callers must have
    /// validated both endpoints already.
    pub(crate) const fn raw(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub(crate) fn bbox_overlaps(&self, other: &Segment) -> bool {
        self.a.x.min(self.b.x) <= other.a.x.max(other.b.x)
            && other.a.x.min(other.b.x) <= self.a.x.max(self.b.x)
            && self.a.y.min(self.b.y) <= other.a.y.max(other.b.y)
            && other.a.y.min(other.b.y) <= self.a.y.max(self.b.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

/// A point with rational coordinates `(x / den, y / den)`, kept in lowest
/// terms with `den > 0` so that equality is structural.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: i128,
    pub y: i128,
    pub den: i128,
}

impl RationalPoint {
    pub fn new(x: i128, y: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let (mut x, mut y, mut den) = (x, y, den);
        if den < 0 {
            x = -x;
            y = -y;
            den = -den;
        }
        let g = gcd(gcd(x.unsigned_abs(), y.unsigned_abs()), den.unsigned_abs()).max(1) as i128;
        RationalPoint { x: x / g, y: y / g, den: den / g }
    }

    pub fn from_point(p: Point) -> Self {
        RationalPoint { x: p.x as i128, y: p.y as i128, den: 1 }
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x as f64 / self.den as f64, self.y as f64 / self.den as f64)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "({}, {})", self.x, self.y)
        } else {
            write!(f, "({}/{}, {}/{})", self.x, self.den, self.y, self.den)
        }
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntersectionKind {
    Disjoint,
    /// Interiors cross transversally at a single point.
    ProperCrossing(RationalPoint),
    /// The segments meet at a point that is an endpoint of both.
    EndpointTouch(Point),
    /// An endpoint of one segment lies in the relative interior of the other.
    EndpointOnInterior(Point),
    /// Collinear with a common sub-segment of positive length.
    Overlap,
}

/// Twice the signed area of `pqr`.
pub(crate) fn cross(p: Point, q: Point, r: Point) -> i128 {
    let (qx, qy) = ((q.x - p.x) as i128, (q.y - p.y) as i128);
    let (rx, ry) = ((r.x - p.x) as i128, (r.y - p.y) as i128);
    qx * ry - qy * rx
}

pub(crate) fn orient_raw(p: Point, q: Point, r: Point) -> Orientation {
    match cross(p, q, r).cmp(&0) {
        Ordering::Greater => Orientation::Left,
        Ordering::Less => Orientation::Right,
        Ordering::Equal => Orientation::Collinear,
    }
}

pub fn orient(p: Point, q: Point, r: Point) -> Result<Orientation, GeomError> {
    p.check()?;
    q.check()?;
    r.check()?;
    Ok(orient_raw(p, q, r))
}

/// True if `p` lies on the closed segment `s`.
pub(crate) fn on_segment(s: &Segment, p: Point) -> bool {
    cross(s.a, s.b, p) == 0
        && p.x >= s.a.x.min(s.b.x)
        && p.x <= s.a.x.max(s.b.x)
        && p.y >= s.a.y.min(s.b.y)
        && p.y <= s.a.y.max(s.b.y)
}

pub fn classify_segments(s: &Segment, t: &Segment) -> Result<IntersectionKind, GeomError> {
    for p in [s.a, s.b, t.a, t.b] {
        p.check()?;
    }
    if s.a == s.b {
        return Err(GeomError::DegenerateSegment { x: s.a.x, y: s.a.y });
    }
    if t.a == t.b {
        return Err(GeomError::DegenerateSegment { x: t.a.x, y: t.a.y });
    }
    Ok(classify_raw(s, t))
}

pub(crate) fn classify_raw(s: &Segment, t: &Segment) -> IntersectionKind {
    if !s.bbox_overlaps(t) {
        return IntersectionKind::Disjoint;
    }
    let d1 = cross(s.a, s.b, t.a).signum();
    let d2 = cross(s.a, s.b, t.b).signum();
    if d1 == 0 && d2 == 0 {
        return classify_collinear(s, t);
    }
    let d3 = cross(t.a, t.b, s.a).signum();
    let d4 = cross(t.a, t.b, s.b).signum();
    if d1 * d2 > 0 || d3 * d4 > 0 {
        return IntersectionKind::Disjoint;
    }
    if d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0 {
        return IntersectionKind::ProperCrossing(line_intersection(s, t));
    }
    // Lines meet in exactly one point, and it is one of the four endpoints.
    let p = if d1 == 0 {
        t.a
    } else if d2 == 0 {
        t.b
    } else if d3 == 0 {
        s.a
    } else {
        s.b
    };
    let end_s = p == s.a || p == s.b;
    let end_t = p == t.a || p == t.b;
    if end_s && end_t {
        IntersectionKind::EndpointTouch(p)
    } else {
        IntersectionKind::EndpointOnInterior(p)
    }
}

fn classify_collinear(s: &Segment, t: &Segment) -> IntersectionKind {
    let key = |p: Point| if s.a.x != s.b.x { p.x } else { p.y };
    let (s0, s1) = minmax(key(s.a), key(s.b));
    let (t0, t1) = minmax(key(t.a), key(t.b));
    let lo = s0.max(t0);
    let hi = s1.min(t1);
    match hi.cmp(&lo) {
        Ordering::Less => IntersectionKind::Disjoint,
        Ordering::Greater => IntersectionKind::Overlap,
        Ordering::Equal => {
            let p = [s.a, s.b].into_iter().find(|&p| key(p) == lo).expect("touch point");
            IntersectionKind::EndpointTouch(p)
        }
    }
}

fn minmax(a: i64, b: i64) -> (i64, i64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn line_intersection(s: &Segment, t: &Segment) -> RationalPoint {
    let (rx, ry) = ((s.b.x - s.a.x) as i128, (s.b.y - s.a.y) as i128);
    let (qx, qy) = ((t.b.x - t.a.x) as i128, (t.b.y - t.a.y) as i128);
    let den = rx * qy - ry * qx;
    let (wx, wy) = ((t.a.x - s.a.x) as i128, (t.a.y - s.a.y) as i128);
    let num = wx * qy - wy * qx;
    RationalPoint::new(
        s.a.x as i128 * den + num * rx,
        s.a.y as i128 * den + num * ry,
        den,
    )
}

/// Total order on nonzero direction vectors by angle in `[0, 2π)` measured
/// counterclockwise from the positive x axis.
pub fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |(x, y): (i64, i64)| if y > 0 || (y == 0 && x > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(ax: i64, ay: i64, bx: i64, by: i64) -> Segment {
        Segment::new(Point::new(ax, ay), Point::new(bx, by)).unwrap()
    }

    #[test]
    fn orient_examples() {
        let o = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| {
            orient(Point::new(a.0, a.1), Point::new(b.0, b.1), Point::new(c.0, c.1)).unwrap()
        };
        assert_eq!(o((0, 0), (1, 0), (0, 1)), Orientation::Left);
        assert_eq!(o((0, 0), (1, 1), (2, 2)), Orientation::Collinear);
        assert_eq!(o((0, 0), (1, 0), (1, -1)), Orientation::Right);
    }

    #[test]
    fn orient_rejects_out_of_range() {
        let far = Point::new(COORD_LIMIT + 1, 0);
        assert!(matches!(
            orient(far, Point::new(0, 0), Point::new(1, 1)),
            Err(GeomError::OutOfRange { .. })
        ));
    }

    #[test]
    fn orient_extreme_coordinates_do_not_overflow() {
        let l = COORD_LIMIT;
        let o = orient(Point::new(-l, -l), Point::new(l, -l), Point::new(-l, l)).unwrap();
        assert_eq!(o, Orientation::Left);
        let o = orient(Point::new(-l, -l), Point::new(l, l), Point::new(l - 1, l)).unwrap();
        assert_eq!(o, Orientation::Left);
    }

    #[test]
    fn orient_antisymmetric_on_small_grid() {
        let pts: Vec<Point> = (-2..=2)
            .flat_map(|x| (-2..=2).map(move |y| Point::new(x, y)))
            .collect();
        for &p in &pts {
            for &q in &pts {
                for &r in &pts {
                    let base = cross(p, q, r);
                    assert_eq!(cross(q, p, r), -base);
                    assert_eq!(cross(p, r, q), -base);
                    assert_eq!(cross(r, q, p), -base);
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_segments(&seg(0, 0, 2, 2), &seg(0, 2, 2, 0)).unwrap(),
            IntersectionKind::ProperCrossing(RationalPoint::new(1, 1, 1))
        );
        assert_eq!(
            classify_segments(&seg(0, 0, 1, 0), &seg(1, 0, 2, 1)).unwrap(),
            IntersectionKind::EndpointTouch(Point::new(1, 0))
        );
        assert_eq!(
            classify_segments(&seg(0, 0, 2, 0), &seg(1, 0, 3, 0)).unwrap(),
            IntersectionKind::Overlap
        );
    }

    #[test]
    fn classify_degenerate_cases() {
        assert_eq!(
            classify_raw(&seg(0, 0, 4, 0), &seg(2, 0, 2, 3)),
            IntersectionKind::EndpointOnInterior(Point::new(2, 0))
        );
        assert_eq!(
            classify_raw(&seg(0, 0, 1, 0), &seg(1, 0, 3, 0)),
            IntersectionKind::EndpointTouch(Point::new(1, 0))
        );
        assert_eq!(classify_raw(&seg(0, 0, 1, 0), &seg(2, 0, 3, 0)), IntersectionKind::Disjoint);
        assert_eq!(classify_raw(&seg(0, 0, 1, 1), &seg(0, 1, 1, 3)), IntersectionKind::Disjoint);
        // vertical collinear overlap
        assert_eq!(classify_raw(&seg(0, 0, 0, 5), &seg(0, 5, 0, 2)), IntersectionKind::Overlap);
        assert_eq!(
            classify_raw(&seg(0, 0, 3, 1), &seg(0, 1, 3, 0)),
            IntersectionKind::ProperCrossing(RationalPoint::new(3, 1, 2))
        );
    }

    #[test]
    fn degenerate_segment_rejected() {
        let p = Point::new(1, 1);
        assert!(Segment::new(p, p).is_err());
    }

    #[test]
    fn rational_normalization() {
        assert_eq!(RationalPoint::new(2, 4, -2), RationalPoint::new(-1, -2, 1));
        assert_eq!(RationalPoint::new(0, 0, 7), RationalPoint::new(0, 0, 1));
        assert!(RationalPoint::new(6, 3, 3).is_integral());
    }

    #[test]
    fn angle_order() {
        let mut dirs = vec![(0, -1), (1, 1), (-1, 0), (1, 0), (0, 1), (1, -1), (-1, -1)];
        dirs.sort_by(|a, b| angle_cmp(*a, *b));
        assert_eq!(dirs, vec![(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]);
    }
}
