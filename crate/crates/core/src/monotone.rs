//! Finite configurations, finite maps, and the exhaustive verification
//! oracle: monotonicity, injectivity, isomorphism, and the affine
//! (barycentric-coordinate) check, each with re-checkable witnesses.
//!
//! The contract of every checker is exhaustive triple enumeration — the
//! verdict is exactly what a full O(n³) scan would return, including which
//! witness is reported (the lexicographically first violating triple).
//! [`check_monotone`] reaches that verdict faster by grouping points by
//! supporting line, which is equivalent because a triple of pairwise
//! distinct points can violate betweenness only when collinear. The plain
//! cubic scan is kept as [`check_monotone_exhaustive`] and used to
//! cross-check the grouped scan in tests.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geometry::{between, group_by_lines, Point2};
use crate::orders::{linear_between, OrderValue};

/// Betweenness structure carried by the source points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceStructure {
    /// Planar betweenness: `B(a, x, b)` iff `x` lies on the closed segment.
    Euclidean,
    /// `B(a, x, b)` iff `x = a` or `x = b`; every map from such a source is
    /// monotone.
    Discrete,
}

/// An ordered list of pairwise distinct points together with its source
/// betweenness structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConfigWire", into = "ConfigWire")]
pub struct FiniteConfig {
    points: Vec<Point2>,
    structure: SourceStructure,
}

impl FiniteConfig {
    pub fn new(points: Vec<Point2>, structure: SourceStructure) -> Result<Self, MapError> {
        let mut sorted = points.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(MapError::DuplicatePoints);
        }
        Ok(FiniteConfig { points, structure })
    }

    pub fn euclidean(points: Vec<Point2>) -> Result<Self, MapError> {
        FiniteConfig::new(points, SourceStructure::Euclidean)
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn structure(&self) -> SourceStructure {
        self.structure
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Source betweenness on indices.
    pub fn source_between(&self, a: usize, x: usize, b: usize) -> bool {
        match self.structure {
            SourceStructure::Euclidean => {
                between(&self.points[a], &self.points[x], &self.points[b])
            }
            SourceStructure::Discrete => x == a || x == b,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ConfigWire {
    structure: SourceStructure,
    points: Vec<Point2>,
}

impl TryFrom<ConfigWire> for FiniteConfig {
    type Error = MapError;
    fn try_from(w: ConfigWire) -> Result<Self, MapError> {
        FiniteConfig::new(w.points, w.structure)
    }
}

impl From<FiniteConfig> for ConfigWire {
    fn from(c: FiniteConfig) -> Self {
        ConfigWire {
            structure: c.structure,
            points: c.points,
        }
    }
}

/// A target value: either a planar point (euclidean betweenness) or a value
/// in a linear order (linear betweenness).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Target {
    Planar(Point2),
    Ordered(OrderValue),
}

/// A map from a finite configuration, one target value per domain point.
///
/// Construction validates that the value list matches the domain length and
/// that the targets are homogeneous: all planar, or all order values whose
/// shapes are mutually comparable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MapWire", into = "MapWire")]
pub struct FiniteMap {
    domain: FiniteConfig,
    values: Vec<Target>,
}

impl FiniteMap {
    pub fn new(domain: FiniteConfig, values: Vec<Target>) -> Result<Self, MapError> {
        if domain.len() != values.len() {
            return Err(MapError::LengthMismatch {
                points: domain.len(),
                values: values.len(),
            });
        }
        validate_targets(&values)?;
        Ok(FiniteMap { domain, values })
    }

    pub fn from_pairs(
        structure: SourceStructure,
        pairs: Vec<(Point2, Target)>,
    ) -> Result<Self, MapError> {
        let (points, values): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        FiniteMap::new(FiniteConfig::new(points, structure)?, values)
    }

    /// The map sending a planar point list to itself.
    pub fn identity(domain: FiniteConfig) -> Self {
        let values = domain.points.iter().cloned().map(Target::Planar).collect();
        FiniteMap { domain, values }
    }

    pub fn domain(&self) -> &FiniteConfig {
        &self.domain
    }

    pub fn values(&self) -> &[Target] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The image as points, when every target is planar.
    pub fn planar_image(&self) -> Result<Vec<Point2>, MapError> {
        self.values
            .iter()
            .map(|t| match t {
                Target::Planar(p) => Ok(p.clone()),
                Target::Ordered(_) => Err(MapError::PlanarTargetsRequired),
            })
            .collect()
    }

    /// Target betweenness on indices (euclidean for planar targets, linear
    /// for ordered ones). Construction guarantees the match arms line up.
    fn target_between(&self, a: usize, x: usize, b: usize) -> bool {
        match (&self.values[a], &self.values[x], &self.values[b]) {
            (Target::Planar(u), Target::Planar(v), Target::Planar(w)) => between(u, v, w),
            (Target::Ordered(u), Target::Ordered(v), Target::Ordered(w)) => {
                linear_between(u, v, w).expect("target shapes validated at construction")
            }
            _ => unreachable!("targets validated homogeneous at construction"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MapWire {
    structure: SourceStructure,
    pairs: Vec<(Point2, Target)>,
}

impl TryFrom<MapWire> for FiniteMap {
    type Error = MapError;
    fn try_from(w: MapWire) -> Result<Self, MapError> {
        FiniteMap::from_pairs(w.structure, w.pairs)
    }
}

impl From<FiniteMap> for MapWire {
    fn from(m: FiniteMap) -> Self {
        MapWire {
            structure: m.domain.structure,
            pairs: m.domain.points.into_iter().zip(m.values).collect(),
        }
    }
}

/// Structural shape of an [`OrderValue`], with sum components keyed by label
/// so that values in different components of the same sum count as
/// comparable.
#[derive(Clone, Debug, PartialEq, Eq)]
enum OrderShape {
    Rat,
    Lex,
    Da,
    Sum(BTreeMap<u32, OrderShape>),
}

fn shape_of(v: &OrderValue) -> OrderShape {
    match v {
        OrderValue::Rat(_) => OrderShape::Rat,
        OrderValue::LexPair(_, _) => OrderShape::Lex,
        OrderValue::DoubleArrow(_, _) => OrderShape::Da,
        OrderValue::LexSum(label, inner) => {
            let mut m = BTreeMap::new();
            m.insert(*label, shape_of(inner));
            OrderShape::Sum(m)
        }
    }
}

fn merge_shapes(a: OrderShape, b: OrderShape) -> Option<OrderShape> {
    match (a, b) {
        (OrderShape::Rat, OrderShape::Rat) => Some(OrderShape::Rat),
        (OrderShape::Lex, OrderShape::Lex) => Some(OrderShape::Lex),
        (OrderShape::Da, OrderShape::Da) => Some(OrderShape::Da),
        (OrderShape::Sum(mut m), OrderShape::Sum(n)) => {
            for (label, sb) in n {
                match m.remove(&label) {
                    None => {
                        m.insert(label, sb);
                    }
                    Some(sa) => {
                        m.insert(label, merge_shapes(sa, sb)?);
                    }
                }
            }
            Some(OrderShape::Sum(m))
        }
        _ => None,
    }
}

fn validate_targets(values: &[Target]) -> Result<(), MapError> {
    let mut shape: Option<OrderShape> = None;
    let mut planar = false;
    for t in values {
        match t {
            Target::Planar(_) => {
                if shape.is_some() {
                    return Err(MapError::MixedTargets);
                }
                planar = true;
            }
            Target::Ordered(v) => {
                if planar {
                    return Err(MapError::MixedTargets);
                }
                let s = shape_of(v);
                shape = Some(match shape.take() {
                    None => s,
                    Some(acc) => merge_shapes(acc, s).ok_or(MapError::MixedOrderShapes)?,
                });
            }
        }
    }
    Ok(())
}

/// Errors from map construction and preconditions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("configuration has duplicate points")]
    DuplicatePoints,
    #[error("map has {values} values for {points} points")]
    LengthMismatch { points: usize, values: usize },
    #[error("map mixes planar and ordered targets")]
    MixedTargets,
    #[error("ordered targets have incompatible shapes")]
    MixedOrderShapes,
    #[error("map is not injective")]
    NotInjective,
    #[error("operation requires planar targets")]
    PlanarTargetsRequired,
}

/// A concrete, re-checkable counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// `B(a, x, b)` holds in the source but not for the images.
    MonotonicityViolation { a: usize, x: usize, b: usize },
    /// Two domain points share a target value.
    InjectivityCollision { i: usize, j: usize },
    /// `B(f(a), f(x), f(b))` holds in the image but `B(a, x, b)` fails.
    ReverseViolation { a: usize, x: usize, b: usize },
    /// `x = (1-λ)a + λb` but `f(x) ≠ (1-λ)f(a) + λf(b)`.
    BarycentricViolation { a: usize, x: usize, b: usize },
}

/// Result of a verification pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Ok,
    Violation(Witness),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Ok => None,
            Verdict::Violation(w) => Some(w),
        }
    }
}

/// Enumerates violating strict-middle triples on one supporting line and
/// keeps the lexicographically first ordered witness `(a, x, b)`.
///
/// `on_line` is sorted by position, so for positions `s < t < u` the middle
/// point is `on_line[t]`; the two violating orderings of that triple are
/// `(a, x, b)` and `(b, x, a)`, of which the smaller starts with the smaller
/// endpoint index.
fn scan_line_triples(
    on_line: &[usize],
    mut violates: impl FnMut(usize, usize, usize) -> bool,
    best: &mut Option<(usize, usize, usize)>,
) {
    let k = on_line.len();
    for s in 0..k {
        for t in (s + 1)..k {
            for u in (t + 1)..k {
                let (a, x, b) = (on_line[s], on_line[t], on_line[u]);
                if violates(a, x, b) {
                    let cand = (a.min(b), x, a.max(b));
                    if best.is_none_or(|cur| cand < cur) {
                        *best = Some(cand);
                    }
                }
            }
        }
    }
}

/// Checks that source betweenness implies target betweenness for every
/// ordered triple of domain points.
///
/// The verdict and witness equal those of [`check_monotone_exhaustive`]:
/// only collinear triples of distinct points can violate (betweenness of a
/// triple with a repeated index holds on both sides), so scanning line
/// groups loses nothing. Maps from a discrete source are monotone outright —
/// the middle of a discrete triple equals an endpoint, and both target
/// betweennesses are closed.
pub fn check_monotone(m: &FiniteMap) -> Verdict {
    match m.domain.structure {
        SourceStructure::Discrete => Verdict::Ok,
        SourceStructure::Euclidean => {
            let mut best = None;
            for (_, on_line) in group_by_lines(&m.domain.points, 3) {
                scan_line_triples(&on_line, |a, x, b| !m.target_between(a, x, b), &mut best);
            }
            match best {
                None => Verdict::Ok,
                Some((a, x, b)) => Verdict::Violation(Witness::MonotonicityViolation { a, x, b }),
            }
        }
    }
}

/// Reference implementation of [`check_monotone`]: the full cubic scan over
/// ordered index triples, returning the first violation in iteration order.
pub fn check_monotone_exhaustive(m: &FiniteMap) -> Verdict {
    let n = m.len();
    for a in 0..n {
        for x in 0..n {
            for b in 0..n {
                if m.domain.source_between(a, x, b) && !m.target_between(a, x, b) {
                    return Verdict::Violation(Witness::MonotonicityViolation { a, x, b });
                }
            }
        }
    }
    Verdict::Ok
}

/// Checks that all target values are pairwise distinct; reports the first
/// colliding pair `(i, j)`, `i < j`, in lexicographic order.
pub fn check_injective(m: &FiniteMap) -> Verdict {
    for i in 0..m.len() {
        for j in (i + 1)..m.len() {
            if m.values[i] == m.values[j] {
                return Verdict::Violation(Witness::InjectivityCollision { i, j });
            }
        }
    }
    Verdict::Ok
}

/// Checks that an injective planar-valued map is a monotone isomorphism:
/// monotone, and with monotone inverse.
///
/// A forward failure is reported as the usual monotonicity witness; an
/// inverse failure is a [`Witness::ReverseViolation`] naming a triple whose
/// images satisfy betweenness while the domain triple does not (for a
/// discrete domain, any strict middle among the images is a violation).
pub fn check_isomorphism(m: &FiniteMap) -> Result<Verdict, MapError> {
    if !check_injective(m).is_ok() {
        return Err(MapError::NotInjective);
    }
    let image = m.planar_image()?;
    if let v @ Verdict::Violation(_) = check_monotone(m) {
        return Ok(v);
    }
    let mut best = None;
    for (_, on_line) in group_by_lines(&image, 3) {
        scan_line_triples(
            &on_line,
            |a, x, b| !m.domain.source_between(a, x, b),
            &mut best,
        );
    }
    Ok(match best {
        None => Verdict::Ok,
        Some((a, x, b)) => Verdict::Violation(Witness::ReverseViolation { a, x, b }),
    })
}

/// All unordered collinear triples of a configuration, each reported once as
/// `(a, x, b)` with `x` the middle point and `a < b`, sorted
/// lexicographically.
pub fn collinear_triples(c: &FiniteConfig) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (_, on_line) in group_by_lines(&c.points, 3) {
        let k = on_line.len();
        for s in 0..k {
            for t in (s + 1)..k {
                for u in (t + 1)..k {
                    let (a, x, b) = (on_line[s], on_line[t], on_line[u]);
                    out.push((a.min(b), x, a.max(b)));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Checks that the map preserves one-dimensional barycentric coordinates:
/// whenever `x = (1-λ)a + λb` with `λ ∈ [0,1]`, the images satisfy
/// `f(x) = (1-λ)f(a) + λf(b)` exactly. This holds for precisely the
/// restrictions of affine maps on each supporting line.
pub fn check_affine_barycentric(m: &FiniteMap) -> Result<Verdict, MapError> {
    let image = m.planar_image()?;
    let pts = &m.domain.points;
    let mut best = None;
    for (_, on_line) in group_by_lines(pts, 3) {
        scan_line_triples(
            &on_line,
            |a, x, b| {
                let (pa, px, pb) = (&pts[a], &pts[x], &pts[b]);
                let dot = (&px.x - &pa.x) * (&pb.x - &pa.x) + (&px.y - &pa.y) * (&pb.y - &pa.y);
                let len_sq = (&pb.x - &pa.x).square() + (&pb.y - &pa.y).square();
                let lambda = dot / len_sq;
                image[x] != image[a].lerp(&image[b], &lambda)
            },
            &mut best,
        );
    }
    Ok(match best {
        None => Verdict::Ok,
        Some((a, x, b)) => Verdict::Violation(Witness::BarycentricViolation { a, x, b }),
    })
}

/// Re-checks a witness against the map it came from, using only the base
/// predicates. Every witness returned by the checkers in this module
/// verifies; the function exists so that consumers (and the property tests)
/// never have to trust the search.
pub fn verify_witness(m: &FiniteMap, w: &Witness) -> bool {
    let n = m.len();
    match *w {
        Witness::MonotonicityViolation { a, x, b } => {
            a < n
                && x < n
                && b < n
                && m.domain.source_between(a, x, b)
                && !m.target_between(a, x, b)
        }
        Witness::InjectivityCollision { i, j } => i < j && j < n && m.values[i] == m.values[j],
        Witness::ReverseViolation { a, x, b } => {
            if !(a < n && x < n && b < n) {
                return false;
            }
            match (&m.values[a], &m.values[x], &m.values[b]) {
                (Target::Planar(u), Target::Planar(v), Target::Planar(w2)) => {
                    between(u, v, w2) && !m.domain.source_between(a, x, b)
                }
                _ => false,
            }
        }
        Witness::BarycentricViolation { a, x, b } => {
            if !(a < n && x < n && b < n && a != b) {
                return false;
            }
            let pts = &m.domain.points;
            if !between(&pts[a], &pts[x], &pts[b]) {
                return false;
            }
            let (fa, fx, fb) = match (&m.values[a], &m.values[x], &m.values[b]) {
                (Target::Planar(u), Target::Planar(v), Target::Planar(w2)) => (u, v, w2),
                _ => return false,
            };
            let pa = &pts[a];
            let pb = &pts[b];
            let px = &pts[x];
            let dot = (&px.x - &pa.x) * (&pb.x - &pa.x) + (&px.y - &pa.y) * (&pb.y - &pa.y);
            let len_sq = (&pb.x - &pa.x).square() + (&pb.y - &pa.y).square();
            let lambda = dot / len_sq;
            *fx != fa.lerp(fb, &lambda)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point;
    use crate::rational::{rat, Rational};

    fn p(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    fn grid3() -> Vec<Point2> {
        let mut pts = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                pts.push(p(x, y));
            }
        }
        pts
    }

    fn planar_map(points: Vec<Point2>, f: impl Fn(&Point2) -> Point2) -> FiniteMap {
        let values = points.iter().map(|q| Target::Planar(f(q))).collect();
        FiniteMap::new(FiniteConfig::euclidean(points).unwrap(), values).unwrap()
    }

    #[test]
    fn identity_is_monotone() {
        let m = FiniteMap::identity(FiniteConfig::euclidean(grid3()).unwrap());
        assert_eq!(check_monotone(&m), Verdict::Ok);
        assert_eq!(check_monotone_exhaustive(&m), Verdict::Ok);
    }

    #[test]
    fn ordered_violation_on_diagonal() {
        let m = FiniteMap::from_pairs(
            SourceStructure::Euclidean,
            vec![
                (p(0, 0), Target::Ordered(OrderValue::rat(0))),
                (p(1, 1), Target::Ordered(OrderValue::rat(5))),
                (p(2, 2), Target::Ordered(OrderValue::rat(1))),
            ],
        )
        .unwrap();
        let expected = Witness::MonotonicityViolation { a: 0, x: 1, b: 2 };
        assert_eq!(check_monotone(&m), Verdict::Violation(expected));
        assert_eq!(check_monotone_exhaustive(&m), Verdict::Violation(expected));
        assert!(verify_witness(&m, &expected));
    }

    #[test]
    fn discrete_source_is_always_monotone() {
        let m = FiniteMap::from_pairs(
            SourceStructure::Discrete,
            vec![
                (p(0, 0), Target::Ordered(OrderValue::rat(0))),
                (p(1, 1), Target::Ordered(OrderValue::rat(5))),
                (p(2, 2), Target::Ordered(OrderValue::rat(1))),
            ],
        )
        .unwrap();
        assert_eq!(check_monotone(&m), Verdict::Ok);
        assert_eq!(check_monotone_exhaustive(&m), Verdict::Ok);
    }

    #[test]
    fn grouped_scan_matches_exhaustive_scan() {
        // Identity except one interior grid point is thrown far away,
        // breaking several lines at once.
        let m = planar_map(
            grid3(),
            |q| {
                if *q == p(1, 1) {
                    p(9, -7)
                } else {
                    q.clone()
                }
            },
        );
        let fast = check_monotone(&m);
        let slow = check_monotone_exhaustive(&m);
        assert_eq!(fast, slow);
        assert!(verify_witness(&m, fast.witness().unwrap()));
    }

    #[test]
    fn injectivity_examples() {
        let proj = FiniteMap::from_pairs(
            SourceStructure::Euclidean,
            vec![
                (p(0, 0), Target::Ordered(OrderValue::rat(0))),
                (p(1, 5), Target::Ordered(OrderValue::rat(1))),
            ],
        )
        .unwrap();
        assert_eq!(check_injective(&proj), Verdict::Ok);

        let constant = planar_map(vec![p(0, 0), p(1, 0)], |_| p(7, 7));
        assert_eq!(
            check_injective(&constant),
            Verdict::Violation(Witness::InjectivityCollision { i: 0, j: 1 })
        );
    }

    #[test]
    fn edge_collapse_collides_off_edge_points() {
        // Triangle (0,0),(1,0),(0,1); the map fixes the edge [a,b] and sends
        // everything else to c, so two off-edge points collide at c.
        let c = p(0, 1);
        let m = planar_map(
            vec![
                p(0, 0),
                p(1, 0),
                point(rat(1, 4), rat(1, 4)),
                point(rat(1, 2), rat(1, 4)),
            ],
            |q| if q.y.is_zero() { q.clone() } else { c.clone() },
        );
        let w = Witness::InjectivityCollision { i: 2, j: 3 };
        assert_eq!(check_injective(&m), Verdict::Violation(w));
        assert!(verify_witness(&m, &w));
    }

    #[test]
    fn isomorphism_detects_reverse_violation() {
        // Independent triple flattened onto a line: forward monotonicity is
        // vacuous, the inverse is not monotone.
        let m = FiniteMap::from_pairs(
            SourceStructure::Euclidean,
            vec![
                (p(0, 0), Target::Planar(p(0, 0))),
                (p(1, 0), Target::Planar(p(1, 1))),
                (p(0, 1), Target::Planar(p(2, 2))),
            ],
        )
        .unwrap();
        assert_eq!(check_monotone(&m), Verdict::Ok);
        let w = Witness::ReverseViolation { a: 0, x: 1, b: 2 };
        assert_eq!(check_isomorphism(&m).unwrap(), Verdict::Violation(w));
        assert!(verify_witness(&m, &w));
    }

    #[test]
    fn affine_bijection_is_isomorphism() {
        // x ↦ 2x + (1, 1) plus a shear.
        let m = planar_map(grid3(), |q| {
            Point2::new(
                Rational::from_int(2) * &q.x + &q.y + Rational::one(),
                Rational::from_int(2) * &q.y + Rational::one(),
            )
        });
        assert_eq!(check_isomorphism(&m).unwrap(), Verdict::Ok);
    }

    #[test]
    fn isomorphism_requires_injectivity() {
        let constant = planar_map(vec![p(0, 0), p(1, 0)], |_| p(7, 7));
        assert_eq!(check_isomorphism(&constant), Err(MapError::NotInjective));
    }

    #[test]
    fn discrete_domain_isomorphism_rejects_collinear_image() {
        let m = FiniteMap::from_pairs(
            SourceStructure::Discrete,
            vec![
                (p(0, 0), Target::Planar(p(0, 0))),
                (p(1, 0), Target::Planar(p(1, 1))),
                (p(0, 1), Target::Planar(p(2, 2))),
            ],
        )
        .unwrap();
        assert_eq!(
            check_isomorphism(&m).unwrap(),
            Verdict::Violation(Witness::ReverseViolation { a: 0, x: 1, b: 2 })
        );
    }

    #[test]
    fn collinear_triples_examples() {
        let diag = FiniteConfig::euclidean(vec![p(0, 0), p(1, 1), p(2, 2)]).unwrap();
        assert_eq!(collinear_triples(&diag), vec![(0, 1, 2)]);

        let triangle = FiniteConfig::euclidean(vec![p(0, 0), p(1, 0), p(0, 1)]).unwrap();
        assert!(collinear_triples(&triangle).is_empty());
    }

    #[test]
    fn collinear_triples_of_grid_match_brute_force() {
        let pts = grid3();
        let config = FiniteConfig::euclidean(pts.clone()).unwrap();
        let fast = collinear_triples(&config);
        assert_eq!(fast.len(), 8);

        // Oracle: scan all 84 unordered triples directly.
        let mut slow = Vec::new();
        let n = pts.len();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for (a, x, b) in [(i, j, k), (j, i, k), (i, k, j)] {
                        if between(&pts[a], &pts[x], &pts[b]) {
                            slow.push((a.min(b), x, a.max(b)));
                        }
                    }
                }
            }
        }
        slow.sort_unstable();
        assert_eq!(fast, slow);
    }

    #[test]
    fn affine_map_preserves_barycentric_coordinates() {
        let m = planar_map(grid3(), |q| {
            Point2::new(
                Rational::from_int(2) * &q.x + Rational::one(),
                Rational::from_int(2) * &q.y + Rational::one(),
            )
        });
        assert_eq!(check_affine_barycentric(&m).unwrap(), Verdict::Ok);
    }

    #[test]
    fn edge_collapse_breaks_barycentric_coordinates() {
        // Triangle (0,0),(1,0),(0,1), f fixes the edge y = 0 and sends the
        // rest to c. Domain: a, an interior point q, and their midpoint —
        // collinear, with f(a) = a and both others mapped to c.
        let a = p(0, 0);
        let c = p(0, 1);
        let q = point(rat(1, 4), rat(1, 4));
        let mid = point(rat(1, 8), rat(1, 8));
        let m = planar_map(vec![a, mid, q], |t| {
            if t.y.is_zero() {
                t.clone()
            } else {
                c.clone()
            }
        });
        let w = Witness::BarycentricViolation { a: 0, x: 1, b: 2 };
        assert_eq!(check_affine_barycentric(&m).unwrap(), Verdict::Violation(w));
        assert!(verify_witness(&m, &w));
        // The same map is still monotone on this domain.
        assert_eq!(check_monotone(&m), Verdict::Ok);
    }

    #[test]
    fn barycentric_check_is_vacuous_without_collinear_triples() {
        let m = planar_map(vec![p(0, 0), p(1, 0), p(0, 1)], |_| p(3, 3));
        assert_eq!(check_affine_barycentric(&m).unwrap(), Verdict::Ok);
    }

    #[test]
    fn construction_validation() {
        assert_eq!(
            FiniteConfig::euclidean(vec![p(0, 0), p(0, 0)]),
            Err(MapError::DuplicatePoints)
        );
        assert_eq!(
            FiniteMap::new(FiniteConfig::euclidean(vec![p(0, 0)]).unwrap(), vec![]),
            Err(MapError::LengthMismatch {
                points: 1,
                values: 0
            })
        );
        assert_eq!(
            FiniteMap::from_pairs(
                SourceStructure::Euclidean,
                vec![
                    (p(0, 0), Target::Planar(p(0, 0))),
                    (p(1, 0), Target::Ordered(OrderValue::rat(1))),
                ],
            ),
            Err(MapError::MixedTargets)
        );
        assert_eq!(
            FiniteMap::from_pairs(
                SourceStructure::Euclidean,
                vec![
                    (p(0, 0), Target::Ordered(OrderValue::rat(0))),
                    (p(1, 0), Target::Ordered(OrderValue::lex(1, 1))),
                ],
            ),
            Err(MapError::MixedOrderShapes)
        );
        // Distinct sum components with different inner shapes are comparable.
        assert!(FiniteMap::from_pairs(
            SourceStructure::Euclidean,
            vec![
                (
                    p(0, 0),
                    Target::Ordered(OrderValue::sum(0, OrderValue::double_arrow(0, 0)))
                ),
                (
                    p(1, 0),
                    Target::Ordered(OrderValue::sum(1, OrderValue::rat(2)))
                ),
            ],
        )
        .is_ok());
        // Same label, same shape: fine. Same label, different shape: not.
        assert_eq!(
            FiniteMap::from_pairs(
                SourceStructure::Euclidean,
                vec![
                    (
                        p(0, 0),
                        Target::Ordered(OrderValue::sum(0, OrderValue::rat(0)))
                    ),
                    (
                        p(1, 0),
                        Target::Ordered(OrderValue::sum(0, OrderValue::double_arrow(0, 1)))
                    ),
                ],
            ),
            Err(MapError::MixedOrderShapes)
        );
    }

    #[test]
    fn map_json_wire_format() {
        let m = FiniteMap::from_pairs(
            SourceStructure::Euclidean,
            vec![
                (p(0, 0), Target::Planar(p(2, 0))),
                (point(rat(1, 2), rat(0, 1)), Target::Planar(p(3, 0))),
            ],
        )
        .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(
            json,
            r#"{"structure":"euclidean","pairs":[[["0","0"],["2","0"]],[["1/2","0"],["3","0"]]]}"#
        );
        let back: FiniteMap = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);

        let ordered = r#"{"structure":"discrete","pairs":[[["0","0"],{"rat":"1/2"}]]}"#;
        let m2: FiniteMap = serde_json::from_str(ordered).unwrap();
        assert_eq!(m2.values()[0], Target::Ordered(OrderValue::rat(rat(1, 2))));

        let dup =
            r#"{"structure":"euclidean","pairs":[[["0","0"],["1","0"]],[["0","0"],["2","0"]]]}"#;
        assert!(serde_json::from_str::<FiniteMap>(dup).is_err());
    }

    #[test]
    fn verdict_json_shape() {
        assert_eq!(serde_json::to_string(&Verdict::Ok).unwrap(), "\"ok\"");
        let v = Verdict::Violation(Witness::MonotonicityViolation { a: 0, x: 1, b: 2 });
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"violation":{"monotonicity_violation":{"a":0,"x":1,"b":2}}}"#
        );
    }
}
