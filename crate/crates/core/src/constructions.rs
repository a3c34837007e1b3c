//! Piecewise collapses of a triangle, the five-point square map, and
//! classification of finite monotone images.
//!
//! A betweenness-preserving map on a convex planar set can only produce three
//! shapes of image: a subset of a line plus at most one extra point, a set
//! with a genuinely two-dimensional core (four points, one strictly inside
//! the triangle of the others), or an exact five-point configuration — four
//! convex independent points together with the crossing of their diagonals.
//! This module provides evaluators realizing each shape and a classifier
//! that, given a finite image, finds which certificate holds.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    between, convex_hull, crossing_diagonal, in_closed_triangle, in_triangle_interior,
    line_through, point, segment_intersect, strictly_between, GeometryError, Line, Point2, Segment,
    SegmentIntersection,
};
use crate::monotone::{FiniteMap, MapError};
use crate::rational::Rational;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    /// The evaluation point is outside the map's domain.
    #[error("point outside the map's domain")]
    OutsideDomain,
    /// `fan_collapse` requires `v` strictly inside the open segment `(b, c)`.
    #[error("v is not strictly between b and c")]
    InvalidV,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Collapses the closed triangle `[a, b, c]` onto the edge `[a, b]` plus the
/// opposite vertex: `x` maps to itself on the edge and to `c` everywhere
/// else. The image is a segment with one extra point, and the map preserves
/// betweenness while being far from injective.
pub fn collapse_to_edge(
    a: &Point2,
    b: &Point2,
    c: &Point2,
    x: &Point2,
) -> Result<Point2, ConstructionError> {
    if !in_closed_triangle(x, a, b, c)? {
        return Err(ConstructionError::OutsideDomain);
    }
    Ok(if between(a, x, b) {
        x.clone()
    } else {
        c.clone()
    })
}

/// Collapses the closed triangle `[a, b, c]` onto three points. With `v`
/// strictly inside the edge `(b, c)`, the vertex `a` is fixed, the closed
/// sub-triangle `[a, b, v]` (minus `a`) goes to `b`, and the rest goes to
/// `c`. The fan of segments from `a` never crosses the cut line `[a, v]`
/// sideways, which is what keeps betweenness intact.
pub fn fan_collapse(
    a: &Point2,
    b: &Point2,
    c: &Point2,
    v: &Point2,
    x: &Point2,
) -> Result<Point2, ConstructionError> {
    if !strictly_between(b, v, c) {
        return Err(ConstructionError::InvalidV);
    }
    if !in_closed_triangle(x, a, b, c)? {
        return Err(ConstructionError::OutsideDomain);
    }
    if x == a {
        return Ok(a.clone());
    }
    // [a, b, v] is non-degenerate: v is on (b, c), and the lines through
    // a,b and b,c meet only at b, which v is not.
    Ok(if in_closed_triangle(x, a, b, v)? {
        b.clone()
    } else {
        c.clone()
    })
}

/// The five-point map on the unit square: everything strictly above the
/// diagonal goes to `(0,1)`, everything strictly below to `(1,0)`, and the
/// diagonal itself splits into its two endpoints and `(1/2, 1/2)` for the
/// open part. The image is four convex independent points plus the crossing
/// of their diagonals.
pub fn five_point_map(x0: &Rational, x1: &Rational) -> Result<Point2, ConstructionError> {
    let zero = Rational::zero();
    let one = Rational::one();
    if *x0 < zero || *x0 > one || *x1 < zero || *x1 > one {
        return Err(ConstructionError::OutsideDomain);
    }
    Ok(match x0.cmp(x1) {
        Ordering::Less => point(0, 1),
        Ordering::Greater => point(1, 0),
        Ordering::Equal if x0.is_zero() => point(0, 0),
        Ordering::Equal if *x0 == one => point(1, 1),
        Ordering::Equal => Point2::new(Rational::new(1, 2), Rational::new(1, 2)),
    })
}

/// The shape of a finite image set, with a re-checkable certificate.
///
/// Exactly one class applies to the image of a betweenness-preserving map on
/// a convex domain; `Violation` can only arise for point sets that are not
/// such an image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum TrichotomyClass {
    /// Every image point lies on `line`, except possibly the single point
    /// `q`.
    LineUnionPoint { line: Line, q: Option<Point2> },
    /// Four image points with `d` strictly inside the triangle `[a, b, c]`:
    /// the image has a two-dimensional core.
    InteriorCertificate {
        a: Point2,
        b: Point2,
        c: Point2,
        d: Point2,
    },
    /// The image is exactly `{a, b, c, d, e}` with `a, b, c, d` convex
    /// independent in cyclic order and `e` the crossing of the diagonals
    /// `[a, c]` and `[b, d]`.
    FivePointConfig {
        a: Point2,
        b: Point2,
        c: Point2,
        d: Point2,
        e: Point2,
    },
    /// No certificate fits the point set.
    Violation { detail: String },
}

/// Classifies the image of a planar-valued map. The domain should be sampled
/// from a convex set and the map should already be verified monotone;
/// `classify_image` looks only at the image points.
pub fn classify_image(m: &FiniteMap) -> Result<TrichotomyClass, MapError> {
    Ok(classify_points(&m.planar_image()?))
}

/// Classifies a finite point set directly (duplicates allowed).
///
/// The three certificate searches run in order — line plus exception, then
/// interior quadruple, then exact five-point configuration — and the search
/// order is deterministic, so equal inputs yield identical certificates.
/// The classes are mutually exclusive on realizable images: a true
/// five-point configuration has its fifth point on both diagonals, hence
/// strictly inside no triangle of the other four.
pub fn classify_points(points: &[Point2]) -> TrichotomyClass {
    let mut v = points.to_vec();
    v.sort_by(|p, q| (&p.x, &p.y).cmp(&(&q.x, &q.y)));
    v.dedup();
    if v.is_empty() {
        return TrichotomyClass::Violation {
            detail: "empty image".into(),
        };
    }
    if let Some(cls) = line_union_point(&v) {
        return cls;
    }
    if let Some(cls) = interior_certificate(&v) {
        return cls;
    }
    if let Some(cls) = five_point_config(&v) {
        return cls;
    }
    TrichotomyClass::Violation {
        detail: format!(
            "{} image points: no line-plus-point cover, no interior quadruple, \
             no five-point configuration",
            v.len()
        ),
    }
}

/// `v` is sorted and deduplicated. With at least three points, any line
/// covering all but one of them passes through two of the first three, so
/// three candidate lines suffice.
fn line_union_point(v: &[Point2]) -> Option<TrichotomyClass> {
    if v.len() == 1 {
        let line = Line::from_coefficients(&Rational::zero(), &Rational::one(), &v[0].y)
            .expect("horizontal line");
        return Some(TrichotomyClass::LineUnionPoint { line, q: None });
    }
    if v.len() == 2 {
        let line = line_through(&v[0], &v[1]).expect("distinct points");
        return Some(TrichotomyClass::LineUnionPoint { line, q: None });
    }
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let line = line_through(&v[i], &v[j]).expect("distinct points");
        let mut q = None;
        let mut covered = true;
        for p in v {
            if line.contains(p) {
                continue;
            }
            if q.is_some() {
                covered = false;
                break;
            }
            q = Some(p.clone());
        }
        if covered {
            return Some(TrichotomyClass::LineUnionPoint { line, q });
        }
    }
    None
}

/// Searches for a point strictly inside a triangle of three other image
/// points. Interior points are tried against hull-vertex triangles first
/// (enough for images with a two-dimensional core); small sets get an
/// exhaustive quadruple sweep as a completeness net.
fn interior_certificate(v: &[Point2]) -> Option<TrichotomyClass> {
    if v.len() < 4 {
        return None;
    }
    let hull = convex_hull(v);
    if hull.len() >= 3 {
        let on_hull: HashSet<&Point2> = hull.iter().collect();
        for d in v.iter().filter(|p| !on_hull.contains(p)) {
            for i in 0..hull.len() {
                for j in (i + 1)..hull.len() {
                    for k in (j + 1)..hull.len() {
                        if matches!(
                            in_triangle_interior(d, &hull[i], &hull[j], &hull[k]),
                            Ok(true)
                        ) {
                            return Some(TrichotomyClass::InteriorCertificate {
                                a: hull[i].clone(),
                                b: hull[j].clone(),
                                c: hull[k].clone(),
                                d: d.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    if v.len() <= 40 {
        for (di, d) in v.iter().enumerate() {
            for i in 0..v.len() {
                for j in (i + 1)..v.len() {
                    for k in (j + 1)..v.len() {
                        if di == i || di == j || di == k {
                            continue;
                        }
                        if matches!(in_triangle_interior(d, &v[i], &v[j], &v[k]), Ok(true)) {
                            return Some(TrichotomyClass::InteriorCertificate {
                                a: v[i].clone(),
                                b: v[j].clone(),
                                c: v[k].clone(),
                                d: d.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Exactly five points, one of which is the diagonal crossing of the other
/// four in convex position.
fn five_point_config(v: &[Point2]) -> Option<TrichotomyClass> {
    if v.len() != 5 {
        return None;
    }
    for e_idx in 0..5 {
        let e = &v[e_idx];
        let rest: Vec<&Point2> = v
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != e_idx)
            .map(|(_, p)| p)
            .collect();
        if let Ok((quad, x)) = crossing_diagonal(rest[0], rest[1], rest[2], rest[3]) {
            if &x == e {
                let [a, b, c, d] = quad;
                return Some(TrichotomyClass::FivePointConfig {
                    a,
                    b,
                    c,
                    d,
                    e: e.clone(),
                });
            }
        }
    }
    None
}

/// Re-verifies a classification certificate against the point set it claims
/// to describe. `Violation` never verifies.
pub fn verify_trichotomy(points: &[Point2], class: &TrichotomyClass) -> bool {
    let mut v = points.to_vec();
    v.sort_by(|p, q| (&p.x, &p.y).cmp(&(&q.x, &q.y)));
    v.dedup();
    match class {
        TrichotomyClass::LineUnionPoint { line, q } => {
            !v.is_empty() && v.iter().all(|p| line.contains(p) || Some(p) == q.as_ref())
        }
        TrichotomyClass::InteriorCertificate { a, b, c, d } => {
            [a, b, c, d].iter().all(|p| v.contains(p))
                && matches!(in_triangle_interior(d, a, b, c), Ok(true))
        }
        TrichotomyClass::FivePointConfig { a, b, c, d, e } => {
            let mut expected = vec![a.clone(), b.clone(), c.clone(), d.clone(), e.clone()];
            expected.sort_by(|p, q| (&p.x, &p.y).cmp(&(&q.x, &q.y)));
            expected.dedup();
            expected == v
                && matches!(
                    segment_intersect(
                        &Segment::new(a.clone(), c.clone()),
                        &Segment::new(b.clone(), d.clone()),
                    ),
                    Ok(SegmentIntersection::Point(x)) if x == *e
                )
        }
        TrichotomyClass::Violation { .. } => false,
    }
}
