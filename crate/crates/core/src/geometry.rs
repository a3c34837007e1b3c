//! Exact planar primitives and the geometric predicates everything else consumes.
//!
//! All predicates are decided in exact rational arithmetic. Betweenness is the
//! closed form: `between(a, x, b)` holds when `x = (1-t)a + t·b` for some
//! `0 <= t <= 1`, endpoints included. A separate strict predicate serves
//! injectivity constraints.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::Rational;

/// A point of the rational plane.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(Rational::from_int(x), Rational::from_int(y))
    }

    /// Squared euclidean distance to `other`; exact, no square roots.
    pub fn dist_sq(&self, other: &Point2) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        dx.square() + dy.square()
    }

    /// The point `(1-t)·self + t·other`.
    pub fn lerp(&self, other: &Point2, t: &Rational) -> Point2 {
        Point2::new(
            &self.x + &(t * &(&other.x - &self.x)),
            &self.y + &(t * &(&other.y - &self.y)),
        )
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

// Point2 serializes as ["p/q","r/s"].
impl Serialize for Point2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.x)?;
        t.serialize_element(&self.y)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Point2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct P;
        impl<'de> Visitor<'de> for P {
            type Value = Point2;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a 2-element array of rational strings")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Point2, A::Error> {
                let x = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let y = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<serde::de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(Point2 { x, y })
            }
        }
        deserializer.deserialize_tuple(2, P)
    }
}

/// A closed line segment between two points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub p: Point2,
    pub q: Point2,
}

impl Segment {
    pub fn new(p: Point2, q: Point2) -> Self {
        Segment { p, q }
    }

    pub fn is_degenerate(&self) -> bool {
        self.p == self.q
    }

    pub fn midpoint(&self) -> Point2 {
        self.p.lerp(&self.q, &Rational::new(1, 2))
    }
}

/// A line `{(x,y) : a·x + b·y = c}` in canonical form.
///
/// Canonical form: `a`, `b`, `c` are coprime integers and the first nonzero
/// coefficient among `(a, b, c)` is positive. This makes equal lines compare
/// and hash equal, which the closure and embedding algorithms rely on for
/// deduplication.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Line {
    /// Canonicalizes `a·x + b·y = c` from rational coefficients.
    ///
    /// Returns an error when `(a, b) = (0, 0)`.
    pub fn from_coefficients(
        a: &Rational,
        b: &Rational,
        c: &Rational,
    ) -> Result<Self, GeometryError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeometryError::DegenerateInput(
                "line requires (a, b) != (0, 0)".into(),
            ));
        }
        // Clear denominators, then divide by the gcd and fix the sign.
        let lcm = a.denom().lcm(&b.denom().lcm(c.denom()));
        let ai = a.numer() * (&lcm / a.denom());
        let bi = b.numer() * (&lcm / b.denom());
        let ci = c.numer() * (&lcm / c.denom());
        let g = ai.gcd(&bi).gcd(&ci);
        let (mut ai, mut bi, mut ci) = (ai / &g, bi / &g, ci / &g);
        let lead_negative = if !ai.is_zero() {
            ai.is_negative()
        } else if !bi.is_zero() {
            bi.is_negative()
        } else {
            ci.is_negative()
        };
        if lead_negative {
            ai = -ai;
            bi = -bi;
            ci = -ci;
        }
        Ok(Line {
            a: ai,
            b: bi,
            c: ci,
        })
    }

    pub fn a(&self) -> Rational {
        Rational::from_int(self.a.clone())
    }

    pub fn b(&self) -> Rational {
        Rational::from_int(self.b.clone())
    }

    pub fn c(&self) -> Rational {
        Rational::from_int(self.c.clone())
    }

    /// Value of `a·x + b·y - c` at `p`: zero exactly on the line.
    pub fn eval(&self, p: &Point2) -> Rational {
        self.a() * &p.x + self.b() * &p.y - self.c()
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.eval(p).is_zero()
    }

    pub fn is_vertical(&self) -> bool {
        self.b.is_zero()
    }

    /// True when the two lines have parallel direction (equal lines included).
    pub fn is_parallel_to(&self, other: &Line) -> bool {
        (&self.a * &other.b - &self.b * &other.a).is_zero()
    }

    /// Intersection point of two non-parallel lines.
    pub fn intersect(&self, other: &Line) -> Option<Point2> {
        let det = &self.a * &other.b - &self.b * &other.a;
        if det.is_zero() {
            return None;
        }
        let det = Rational::from_int(det);
        let x = Rational::from_int(&self.c * &other.b - &self.b * &other.c);
        let y = Rational::from_int(&self.a * &other.c - &self.c * &other.a);
        Some(Point2::new(x / &det, y / &det))
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y = {}", self.a, self.b, self.c)
    }
}

impl Serialize for Line {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(3)?;
        t.serialize_element(&self.a.to_string())?;
        t.serialize_element(&self.b.to_string())?;
        t.serialize_element(&self.c.to_string())?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Line {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (a, b, c) = <(Rational, Rational, Rational)>::deserialize(deserializer)?;
        Line::from_coefficients(&a, &b, &c).map_err(de::Error::custom)
    }
}

/// Errors raised by geometric constructors and predicates with preconditions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("triangle vertices are collinear")]
    DegenerateTriangle,
    #[error("duplicate points in input")]
    DuplicatePoints,
    #[error("points are not convex independent")]
    NotConvexIndependent,
}

/// Orientation of the triple `(a, b, c)`: `+1` counterclockwise, `-1`
/// clockwise, `0` collinear. Sign of `det(b - a, c - a)`.
pub fn orient(a: &Point2, b: &Point2, c: &Point2) -> i32 {
    let d = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    d.signum()
}

/// Closed betweenness: `x` on the segment `[a, b]`, endpoints included.
pub fn between(a: &Point2, x: &Point2, b: &Point2) -> bool {
    if orient(a, x, b) != 0 {
        return false;
    }
    // Collinear: check the parameter range via dot products, exactly.
    let dot = (&x.x - &a.x) * (&b.x - &a.x) + (&x.y - &a.y) * (&b.y - &a.y);
    if dot.signum() < 0 {
        return false;
    }
    let len_sq = (&b.x - &a.x).square() + (&b.y - &a.y).square();
    if len_sq.is_zero() {
        return x == a;
    }
    dot <= len_sq
}

/// Strict betweenness: `x` in the open segment `(a, b)`.
pub fn strictly_between(a: &Point2, x: &Point2, b: &Point2) -> bool {
    x != a && x != b && between(a, x, b)
}

/// Result of intersecting two closed segments, discriminated by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentIntersection {
    Empty,
    Point(Point2),
    Overlap(Segment),
}

/// Exact intersection of two closed, non-degenerate segments.
pub fn segment_intersect(s: &Segment, t: &Segment) -> Result<SegmentIntersection, GeometryError> {
    if s.is_degenerate() || t.is_degenerate() {
        return Err(GeometryError::DegenerateInput(
            "segment_intersect requires non-degenerate segments".into(),
        ));
    }
    let o1 = orient(&s.p, &s.q, &t.p);
    let o2 = orient(&s.p, &s.q, &t.q);
    let o3 = orient(&t.p, &t.q, &s.p);
    let o4 = orient(&t.p, &t.q, &s.q);

    if o1 == 0 && o2 == 0 {
        // Collinear: reduce to 1-D interval intersection along the dominant axis.
        return Ok(collinear_overlap(s, t));
    }
    if o1 * o2 > 0 || o3 * o4 > 0 {
        return Ok(SegmentIntersection::Empty);
    }
    // Proper or touching intersection: solve the two supporting lines.
    let ls = line_through(&s.p, &s.q).expect("non-degenerate");
    let lt = line_through(&t.p, &t.q).expect("non-degenerate");
    let p = ls
        .intersect(&lt)
        .expect("segments not collinear, lines not parallel");
    if between(&s.p, &p, &s.q) && between(&t.p, &p, &t.q) {
        Ok(SegmentIntersection::Point(p))
    } else {
        Ok(SegmentIntersection::Empty)
    }
}

fn collinear_overlap(s: &Segment, t: &Segment) -> SegmentIntersection {
    // Order each segment along the shared line using (x, y) lexicographically;
    // on a fixed line that order is linear.
    let key = |p: &Point2| (p.x.clone(), p.y.clone());
    let (s_lo, s_hi) = if key(&s.p) <= key(&s.q) {
        (&s.p, &s.q)
    } else {
        (&s.q, &s.p)
    };
    let (t_lo, t_hi) = if key(&t.p) <= key(&t.q) {
        (&t.p, &t.q)
    } else {
        (&t.q, &t.p)
    };
    // Distinct parallel lines never reach here: callers guarantee all four
    // points collinear.
    if !between(s_lo, t_lo, s_hi) && !between(t_lo, s_lo, t_hi) {
        return SegmentIntersection::Empty;
    }
    let lo = if key(s_lo) >= key(t_lo) { s_lo } else { t_lo };
    let hi = if key(s_hi) <= key(t_hi) { s_hi } else { t_hi };
    match key(lo).cmp(&key(hi)) {
        std::cmp::Ordering::Greater => SegmentIntersection::Empty,
        std::cmp::Ordering::Equal => SegmentIntersection::Point(lo.clone()),
        std::cmp::Ordering::Less => {
            SegmentIntersection::Overlap(Segment::new(lo.clone(), hi.clone()))
        }
    }
}

/// The canonical line through two distinct points.
pub fn line_through(a: &Point2, b: &Point2) -> Result<Line, GeometryError> {
    if a == b {
        return Err(GeometryError::DegenerateInput(
            "line_through requires distinct points".into(),
        ));
    }
    let la = &b.y - &a.y;
    let lb = &a.x - &b.x;
    let lc = &la * &a.x + &lb * &a.y;
    Line::from_coefficients(&la, &lb, &lc)
}

/// True when `p` is strictly inside the triangle `[a, b, c]`.
pub fn in_triangle_interior(
    p: &Point2,
    a: &Point2,
    b: &Point2,
    c: &Point2,
) -> Result<bool, GeometryError> {
    let o = orient(a, b, c);
    if o == 0 {
        return Err(GeometryError::DegenerateTriangle);
    }
    Ok(orient(a, b, p) == o && orient(b, c, p) == o && orient(c, a, p) == o)
}

/// True when `p` is in the closed triangle `[a, b, c]` (boundary included).
pub fn in_closed_triangle(
    p: &Point2,
    a: &Point2,
    b: &Point2,
    c: &Point2,
) -> Result<bool, GeometryError> {
    let o = orient(a, b, c);
    if o == 0 {
        return Err(GeometryError::DegenerateTriangle);
    }
    let s1 = orient(a, b, p);
    let s2 = orient(b, c, p);
    let s3 = orient(c, a, p);
    Ok(s1 * o >= 0 && s2 * o >= 0 && s3 * o >= 0)
}

/// Convex hull in counterclockwise order (monotone chain, exact).
///
/// Collinear boundary points are dropped; for inputs on a single line the
/// hull degenerates to the two extreme points, or one point.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort();
    pts.dedup();
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let chain = |iter: &mut dyn Iterator<Item = &Point2>| {
        let mut half: Vec<Point2> = Vec::with_capacity(n);
        for p in iter {
            while half.len() >= 2 && orient(&half[half.len() - 2], &half[half.len() - 1], p) <= 0 {
                half.pop();
            }
            half.push(p.clone());
        }
        half.pop();
        half
    };
    let mut hull = chain(&mut pts.iter());
    hull.extend(chain(&mut pts.iter().rev()));
    hull
}

/// Membership of `p` in the closed convex hull of `points`.
pub fn in_convex_hull(p: &Point2, points: &[Point2]) -> bool {
    let hull = convex_hull(points);
    match hull.len() {
        0 => false,
        1 => p == &hull[0],
        2 => between(&hull[0], p, &hull[1]),
        _ => {
            let n = hull.len();
            (0..n).all(|i| orient(&hull[i], &hull[(i + 1) % n], p) >= 0)
        }
    }
}

/// True when no point of the set lies in the convex hull of the others.
pub fn convex_independent(points: &[Point2]) -> Result<bool, GeometryError> {
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                return Err(GeometryError::DuplicatePoints);
            }
        }
    }
    for i in 0..points.len() {
        let others: Vec<Point2> = points
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if in_convex_hull(&points[i], &others) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Relabels four convex-independent points so the two diagonals cross, and
/// returns the crossing point.
///
/// The result `([a', b', c', d'], e)` satisfies `[a', c'] ∩ [b', d'] = {e}`.
pub fn crossing_diagonal(
    a: &Point2,
    b: &Point2,
    c: &Point2,
    d: &Point2,
) -> Result<([Point2; 4], Point2), GeometryError> {
    let pts = [a.clone(), b.clone(), c.clone(), d.clone()];
    if !convex_independent(&pts)? {
        return Err(GeometryError::NotConvexIndependent);
    }
    // Convex independent quadruple: its hull is the 4 points in cyclic order,
    // and the diagonals of that cycle cross.
    let hull = convex_hull(&pts);
    debug_assert_eq!(hull.len(), 4);
    let s1 = Segment::new(hull[0].clone(), hull[2].clone());
    let s2 = Segment::new(hull[1].clone(), hull[3].clone());
    match segment_intersect(&s1, &s2)? {
        SegmentIntersection::Point(e) => Ok((
            [
                hull[0].clone(),
                hull[1].clone(),
                hull[2].clone(),
                hull[3].clone(),
            ],
            e,
        )),
        _ => Err(GeometryError::NotConvexIndependent),
    }
}

/// Groups point indices by the canonical line through each pair.
///
/// Returns, for every line supporting at least `min_points` of the input,
/// the indices of the points on it sorted along the line's direction.
/// Input points must be pairwise distinct.
pub fn group_by_lines(points: &[Point2], min_points: usize) -> Vec<(Line, Vec<usize>)> {
    let mut by_line: HashMap<Line, Vec<usize>> = HashMap::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let line = line_through(&points[i], &points[j]).expect("distinct points");
            let entry = by_line.entry(line).or_default();
            if entry.last() != Some(&j) {
                if !entry.contains(&i) {
                    entry.push(i);
                }
                if !entry.contains(&j) {
                    entry.push(j);
                }
            }
        }
    }
    let mut groups: Vec<(Line, Vec<usize>)> = by_line
        .into_iter()
        .filter(|(_, idxs)| idxs.len() >= min_points)
        .collect();
    for (_, idxs) in groups.iter_mut() {
        idxs.sort_by(|&i, &j| {
            let (p, q) = (&points[i], &points[j]);
            (&p.x, &p.y).cmp(&(&q.x, &q.y))
        });
    }
    groups.sort_by(|(l1, _), (l2, _)| l1.cmp(l2));
    groups
}

/// Convenience constructor used across tests.
pub fn point(x: impl Into<Rational>, y: impl Into<Rational>) -> Point2 {
    Point2::new(x.into(), y.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), 1);
        assert_eq!(orient(&p(0, 0), &p(1, 1), &p(2, 2)), 0);
        assert_eq!(orient(&p(0, 0), &p(2, 0), &p(1, -1)), -1);
    }

    #[test]
    fn between_examples() {
        assert!(between(&p(0, 0), &p(1, 1), &p(2, 2)));
        assert!(between(&p(0, 0), &p(0, 0), &p(2, 2)));
        assert!(!between(&p(0, 0), &p(2, 2), &p(1, 1)));
        // Degenerate endpoints: only the common point is between.
        assert!(between(&p(1, 1), &p(1, 1), &p(1, 1)));
        assert!(!between(&p(1, 1), &p(0, 0), &p(1, 1)));
    }

    #[test]
    fn strict_between_examples() {
        assert!(strictly_between(&p(0, 0), &p(1, 1), &p(2, 2)));
        assert!(!strictly_between(&p(0, 0), &p(0, 0), &p(2, 2)));
        assert!(!strictly_between(&p(0, 0), &p(3, 3), &p(2, 2)));
    }

    #[test]
    fn segment_intersections() {
        let s = Segment::new(p(0, 0), p(1, 1));
        let t = Segment::new(p(0, 1), p(1, 0));
        assert_eq!(
            segment_intersect(&s, &t).unwrap(),
            SegmentIntersection::Point(point(rat(1, 2), rat(1, 2)))
        );

        let s = Segment::new(p(0, 0), p(1, 0));
        let t = Segment::new(p(0, 1), p(1, 1));
        assert_eq!(
            segment_intersect(&s, &t).unwrap(),
            SegmentIntersection::Empty
        );

        let s = Segment::new(p(0, 0), p(2, 0));
        let t = Segment::new(p(1, 0), p(3, 0));
        assert_eq!(
            segment_intersect(&s, &t).unwrap(),
            SegmentIntersection::Overlap(Segment::new(p(1, 0), p(2, 0)))
        );

        let bad = Segment::new(p(1, 1), p(1, 1));
        assert!(matches!(
            segment_intersect(&bad, &s),
            Err(GeometryError::DegenerateInput(_))
        ));
    }

    #[test]
    fn collinear_touching_endpoint() {
        let s = Segment::new(p(0, 0), p(1, 0));
        let t = Segment::new(p(1, 0), p(2, 0));
        assert_eq!(
            segment_intersect(&s, &t).unwrap(),
            SegmentIntersection::Point(p(1, 0))
        );
    }

    #[test]
    fn line_through_examples() {
        let l = line_through(&p(0, 0), &p(1, 1)).unwrap();
        assert!(l.contains(&p(5, 5)));
        assert!(!l.contains(&p(5, 4)));

        let v = line_through(&p(0, 0), &p(0, 5)).unwrap();
        assert!(v.is_vertical());
        assert!(v.contains(&p(0, -3)));

        let d = line_through(&p(1, 0), &p(0, 1)).unwrap();
        assert_eq!((d.a(), d.b(), d.c()), (rat(1, 1), rat(1, 1), rat(1, 1)));

        assert!(line_through(&p(2, 2), &p(2, 2)).is_err());
    }

    #[test]
    fn canonical_line_is_direction_independent() {
        let l1 = line_through(&p(0, 0), &p(2, 4)).unwrap();
        let l2 = line_through(&p(3, 6), &p(-1, -2)).unwrap();
        assert_eq!(l1, l2);
    }

    #[test]
    fn triangle_interior_examples() {
        let (a, b, c) = (p(0, 0), p(1, 0), p(0, 1));
        let inside = point(rat(1, 4), rat(1, 4));
        let on_edge = point(rat(1, 2), rat(1, 2));
        assert!(in_triangle_interior(&inside, &a, &b, &c).unwrap());
        assert!(!in_triangle_interior(&on_edge, &a, &b, &c).unwrap());
        assert!(!in_triangle_interior(&p(2, 2), &a, &b, &c).unwrap());
        assert!(in_closed_triangle(&on_edge, &a, &b, &c).unwrap());
        assert!(matches!(
            in_triangle_interior(&inside, &p(0, 0), &p(1, 1), &p(2, 2)),
            Err(GeometryError::DegenerateTriangle)
        ));
    }

    #[test]
    fn convex_independence_examples() {
        let square = [p(0, 0), p(1, 0), p(1, 1), p(0, 1)];
        assert!(convex_independent(&square).unwrap());

        let with_interior = [p(0, 0), p(1, 0), p(0, 1), point(rat(1, 4), rat(1, 4))];
        assert!(!convex_independent(&with_interior).unwrap());

        let on_edge = [p(0, 0), p(1, 0), p(2, 0)];
        assert!(!convex_independent(&on_edge).unwrap());

        let dup = [p(0, 0), p(0, 0), p(1, 1)];
        assert!(matches!(
            convex_independent(&dup),
            Err(GeometryError::DuplicatePoints)
        ));
    }

    #[test]
    fn crossing_diagonal_square() {
        let ([a, b, c, d], e) = crossing_diagonal(&p(0, 0), &p(1, 0), &p(1, 1), &p(0, 1)).unwrap();
        assert_eq!(e, point(rat(1, 2), rat(1, 2)));
        // e really is on both diagonals.
        assert!(between(&a, &e, &c));
        assert!(between(&b, &e, &d));
    }

    #[test]
    fn crossing_diagonal_generic() {
        // Diagonals solved independently via the 2x2 linear system.
        let (q, e) = crossing_diagonal(&p(0, 0), &p(2, 0), &p(3, 2), &p(0, 1)).unwrap();
        let d1 = line_through(&q[0], &q[2]).unwrap();
        let d2 = line_through(&q[1], &q[3]).unwrap();
        let by_lines = d1.intersect(&d2).unwrap();
        assert_eq!(e, by_lines);
        assert!(between(&q[0], &e, &q[2]));
        assert!(between(&q[1], &e, &q[3]));
    }

    #[test]
    fn crossing_diagonal_rejects_collinear() {
        assert!(matches!(
            crossing_diagonal(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)),
            Err(GeometryError::NotConvexIndependent)
        ));
    }

    #[test]
    fn hull_of_grid() {
        let mut pts = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                pts.push(p(x, y));
            }
        }
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
        assert!(in_convex_hull(&p(1, 1), &pts));
        assert!(!in_convex_hull(&p(4, 1), &pts));
    }

    #[test]
    fn line_groups_of_grid() {
        let mut pts = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                pts.push(p(x, y));
            }
        }
        let groups = group_by_lines(&pts, 3);
        // 3 rows + 3 columns + 2 diagonals.
        assert_eq!(groups.len(), 8);
        for (line, idxs) in &groups {
            assert_eq!(idxs.len(), 3);
            for &i in idxs {
                assert!(line.contains(&pts[i]));
            }
        }
    }

    #[test]
    fn point_json_shape() {
        let pt = point(rat(1, 2), rat(-3, 1));
        assert_eq!(serde_json::to_string(&pt).unwrap(), "[\"1/2\",\"-3\"]");
        let back: Point2 = serde_json::from_str("[\"1/2\",\"-3\"]").unwrap();
        assert_eq!(back, pt);
    }
}
