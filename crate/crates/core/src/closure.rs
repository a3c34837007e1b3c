//! The segment-intersection closure of a triangle with one interior point,
//! rule-based value propagation, and density measurement.
//!
//! Starting from a base quadruple `(a, b, c, d)` — a nondegenerate triangle
//! and a strictly interior point — the closure is the smallest superset
//! closed under two derivation rules:
//!
//! * **R1**: if two segments between known points intersect in a single
//!   point, that point is in the closure;
//! * **R2**: if there is a unique `z ∈ [x₀, x₁]` with `y₁ ∈ [y₀, z]` (the
//!   ray from `y₀` through `y₁` hits the segment), then `z` is in the
//!   closure.
//!
//! The full closure is infinite and dense in the triangle, so growth is
//! budgeted: each [`ClosureState::grow`] call runs breadth-first waves of
//! rule applications, in a fixed lexicographic order over parent index
//! tuples (R1 before R2 within a wave), until it has added `budget` new
//! points; everything added by one call is labeled with the next generation
//! number. The schedule is deterministic, and every derived point carries a
//! provenance record sufficient to replay its derivation exactly.
//!
//! A monotone map is rigid on such a base: its values on the closure are
//! forced by replaying each rule on the image side. [`rigidity_check`]
//! makes that executable — it grows the closure, propagates values by rule
//! replay, and compares every propagated value against the homography
//! fitted to the base correspondence alone, demanding exact agreement.
//!
//! Density in the triangle is measured by [`covering_radius`] — a max-min
//! squared distance over a barycentric grid — and on the boundary by
//! [`side_covering_radius`]; both are square-root-free so the arithmetic
//! stays rational. The limit statements (true density, extension to the
//! boundary by continuity) are not finitely computable; decreasing radii
//! are the finite surrogate.

use std::collections::HashMap;

use crate::geometry::{
    between, in_triangle_interior, line_through, orient, segment_intersect, Point2, Segment,
    SegmentIntersection,
};
use crate::projective::{fit_homography, ProjectiveError, ProjectiveTransform};
use crate::rational::Rational;

/// Default per-generation growth budget: two generations comfortably clear
/// a hundred points on any valid base.
pub const DEFAULT_GROWTH_BUDGET: usize = 64;

/// Per-generation budget for density measurements. Smaller than the
/// rigidity budget so consecutive generations sample the coverage curve
/// while it is still falling: with 16 points per generation the canonical
/// base's grid-17 covering radius strictly decreases over generations 0→3.
pub const DENSITY_BUDGET: usize = 16;

/// Errors from closure construction and value propagation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosureError {
    #[error("base is degenerate: triangle collinear or fourth point not strictly interior")]
    InvalidBase,
    #[error("image-side rule replay did not produce a unique point")]
    ImageDegeneracy,
    #[error("grown state does not extend the valued state")]
    InvalidExtension,
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
}

/// How a closure point was derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// One of the four base points.
    Base(usize),
    /// R1: the single intersection point of segments `[p0, p1]` and
    /// `[q0, q1]` (indices into the point list).
    SegmentIntersection {
        p0: usize,
        p1: usize,
        q0: usize,
        q1: usize,
    },
    /// R2: the unique `z ∈ [x0, x1]` with `y1 ∈ [y0, z]`.
    RayTarget {
        x0: usize,
        x1: usize,
        y0: usize,
        y1: usize,
    },
}

/// Which rule the scan cursor is currently enumerating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    R1,
    R2,
}

/// Resumable position inside the breadth-first rule schedule.
///
/// A wave fixes its partner set to the points existing when it starts
/// (`[0, f_hi)`) and requires every parent tuple to touch the frontier
/// `[f_lo, f_hi)`; `last` is the most recently examined tuple of the
/// current phase. Pausing at a budget and resuming later walks the exact
/// same tuple sequence, so the points produced do not depend on how the
/// budget is sliced across calls.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ScanState {
    f_lo: usize,
    f_hi: usize,
    phase: Phase,
    last: Option<[usize; 4]>,
    done: bool,
}

/// A budget-grown fragment of the closure of a base quadruple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureState {
    base: [Point2; 4],
    points: Vec<Point2>,
    generations: Vec<u32>,
    provenance: Vec<Provenance>,
    index: HashMap<Point2, usize>,
    scan: ScanState,
    max_generation: u32,
}

impl ClosureState {
    /// Starts a closure from `(a, b, c, d)`: a nondegenerate triangle
    /// `[a, b, c]` and a strictly interior point `d`.
    pub fn new(base: [Point2; 4]) -> Result<Self, ClosureError> {
        let [a, b, c, d] = &base;
        let interior = in_triangle_interior(d, a, b, c).map_err(|_| ClosureError::InvalidBase)?;
        if !interior {
            return Err(ClosureError::InvalidBase);
        }
        let points: Vec<Point2> = base.to_vec();
        let mut index = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            index.insert(p.clone(), i);
        }
        Ok(ClosureState {
            base,
            points,
            generations: vec![0; 4],
            provenance: (0..4).map(Provenance::Base).collect(),
            index,
            scan: ScanState {
                f_lo: 0,
                f_hi: 4,
                phase: Phase::R1,
                last: None,
                done: false,
            },
            max_generation: 0,
        })
    }

    pub fn base(&self) -> &[Point2; 4] {
        &self.base
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn generations(&self) -> &[u32] {
        &self.generations
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always holds the base
    }

    pub fn max_generation(&self) -> u32 {
        self.max_generation
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.index.contains_key(p)
    }

    fn try_add(&mut self, p: Point2, gen: u32, prov: Provenance) -> bool {
        if self.index.contains_key(&p) {
            return false;
        }
        self.index.insert(p.clone(), self.points.len());
        self.points.push(p);
        self.generations.push(gen);
        self.provenance.push(prov);
        true
    }

    /// Runs budgeted breadth-first closure growth; returns how many points
    /// were added. All additions get the next generation label.
    ///
    /// Growth proceeds in complete waves: each wave applies R1 then R2 over
    /// every parent tuple touching the wave's frontier (the points the
    /// previous wave appended), in lexicographic tuple order, and the next
    /// wave's frontier is everything added meanwhile. The budget only
    /// pauses the scan — a later call resumes at the stored cursor — so the
    /// sequence of points is an invariant of the base, no matter how the
    /// budget is split across calls. Generation labels record which call
    /// added each point.
    pub fn grow(&mut self, budget: usize) -> usize {
        if budget == 0 || self.scan.done {
            return 0;
        }
        let next_gen = self.max_generation + 1;
        let start_len = self.points.len();
        let mut remaining = budget;
        while remaining > 0 {
            match self.scan.phase {
                Phase::R1 => {
                    self.run_r1(next_gen, &mut remaining);
                    if remaining > 0 {
                        // R1 tuples exhausted for this wave.
                        self.scan.phase = Phase::R2;
                        self.scan.last = None;
                    }
                }
                Phase::R2 => {
                    self.run_r2(next_gen, &mut remaining);
                    if remaining > 0 {
                        // Wave complete; its additions form the next frontier.
                        if self.points.len() == self.scan.f_hi {
                            // No rule application produced anything new:
                            // the closure is finite and fully enumerated.
                            self.scan.done = true;
                            break;
                        }
                        self.scan = ScanState {
                            f_lo: self.scan.f_hi,
                            f_hi: self.points.len(),
                            phase: Phase::R1,
                            last: None,
                            done: false,
                        };
                    }
                }
            }
        }
        let added = self.points.len() - start_len;
        if added > 0 {
            self.max_generation = next_gen;
        }
        added
    }

    /// Evaluates R1 tuples from the cursor until the budget is spent
    /// (cursor left on the last examined tuple) or the wave's R1 range is
    /// exhausted (`remaining` stays positive).
    fn run_r1(&mut self, gen: u32, remaining: &mut usize) {
        while *remaining > 0 {
            let Some(t) = next_r1(self.scan.last, self.scan.f_hi, self.scan.f_lo) else {
                return;
            };
            self.scan.last = Some(t);
            let [p0, p1, q0, q1] = t;
            let candidate = single_point_intersection(
                &self.points[p0],
                &self.points[p1],
                &self.points[q0],
                &self.points[q1],
            );
            if let Some(z) = candidate {
                if self.try_add(z, gen, Provenance::SegmentIntersection { p0, p1, q0, q1 }) {
                    *remaining -= 1;
                }
            }
        }
    }

    /// R2 counterpart of [`Self::run_r1`].
    fn run_r2(&mut self, gen: u32, remaining: &mut usize) {
        while *remaining > 0 {
            let Some(t) = next_r2(self.scan.last, self.scan.f_hi, self.scan.f_lo) else {
                return;
            };
            self.scan.last = Some(t);
            let [x0, x1, y0, y1] = t;
            let candidate = ray_target(
                &self.points[x0],
                &self.points[x1],
                &self.points[y0],
                &self.points[y1],
            );
            if let Some(z) = candidate {
                if self.try_add(z, gen, Provenance::RayTarget { x0, x1, y0, y1 }) {
                    *remaining -= 1;
                }
            }
        }
    }
}

/// Advances the R1 cursor: lexicographically next `(p0, p1, q0, q1)` with
/// `p0 < p1`, `p0 < q0 < q1`, all four indices distinct (disjoint segments
/// represented once, by their lesser-min endpoint pair), everything below
/// `wn`, and `max(p1, q1) ≥ f_lo` so the tuple touches the frontier.
fn next_r1(prev: Option<[usize; 4]>, wn: usize, f_lo: usize) -> Option<[usize; 4]> {
    let (sp0, sp1, sq0, sq1) = match prev {
        Some([a, b, c, d]) => (a, b, c, d + 1),
        None => (0, 1, 1, 0),
    };
    let mut p0 = sp0;
    while p0 + 3 < wn {
        let mut p1 = if p0 == sp0 { sp1 } else { p0 + 1 };
        while p1 < wn {
            let mut q0 = if (p0, p1) == (sp0, sp1) { sq0 } else { p0 + 1 };
            while q0 + 1 < wn {
                if q0 != p1 {
                    let start = if (p0, p1, q0) == (sp0, sp1, sq0) {
                        sq1
                    } else {
                        0
                    };
                    let mut q1 = start.max(q0 + 1);
                    if p1 < f_lo {
                        q1 = q1.max(f_lo);
                    }
                    while q1 < wn {
                        if q1 != p1 {
                            return Some([p0, p1, q0, q1]);
                        }
                        q1 += 1;
                    }
                }
                q0 += 1;
            }
            p1 += 1;
        }
        p0 += 1;
    }
    None
}

/// Advances the R2 cursor: lexicographically next `(x0, x1, y0, y1)` with
/// `x0 < x1 < wn`, `y0 ≠ y1` an ordered pair below `wn` (ray direction
/// matters), and at least one index in the frontier `[f_lo, wn)`.
fn next_r2(prev: Option<[usize; 4]>, wn: usize, f_lo: usize) -> Option<[usize; 4]> {
    let (sx0, sx1, sy0, sy1) = match prev {
        Some([a, b, c, d]) => (a, b, c, d + 1),
        None => (0, 1, 0, 0),
    };
    let mut x0 = sx0;
    while x0 + 1 < wn {
        let mut x1 = if x0 == sx0 { sx1 } else { x0 + 1 };
        while x1 < wn {
            let mut y0 = if (x0, x1) == (sx0, sx1) { sy0 } else { 0 };
            while y0 < wn {
                let mut y1 = if (x0, x1, y0) == (sx0, sx1, sy0) {
                    sy1
                } else {
                    0
                };
                if x1 < f_lo && y0 < f_lo {
                    y1 = y1.max(f_lo);
                }
                while y1 < wn {
                    if y1 != y0 {
                        return Some([x0, x1, y0, y1]);
                    }
                    y1 += 1;
                }
                y0 += 1;
            }
            x1 += 1;
        }
        x0 += 1;
    }
    None
}

/// Functional wrapper over [`ClosureState::grow`].
pub fn closure_grow(s: &ClosureState, budget: usize) -> ClosureState {
    let mut grown = s.clone();
    grown.grow(budget);
    grown
}

/// R1 core: the intersection of `[a0,a1]` and `[b0,b1]` when it is a single
/// point; `None` for empty, overlapping, or degenerate cases.
fn single_point_intersection(a0: &Point2, a1: &Point2, b0: &Point2, b1: &Point2) -> Option<Point2> {
    if a0 == a1 || b0 == b1 {
        return None;
    }
    let s = Segment::new(a0.clone(), a1.clone());
    let t = Segment::new(b0.clone(), b1.clone());
    match segment_intersect(&s, &t) {
        Ok(SegmentIntersection::Point(z)) => Some(z),
        _ => None,
    }
}

/// R2 core: the unique `z ∈ [x0,x1]` with `y1 ∈ [y0,z]`, i.e. the point
/// where the ray from `y0` through `y1` reaches the segment at or beyond
/// `y1`. `None` when the line through `y0,y1` is undefined or parallel to
/// the segment (the collinear case has no unique `z` and is skipped), when
/// the lines cross outside the segment, or when the crossing is short of
/// `y1`.
fn ray_target(x0: &Point2, x1: &Point2, y0: &Point2, y1: &Point2) -> Option<Point2> {
    if y0 == y1 || x0 == x1 {
        return None;
    }
    let ray = line_through(y0, y1).expect("distinct");
    let seg = line_through(x0, x1).expect("distinct");
    let z = ray.intersect(&seg)?;
    if between(x0, &z, x1) && between(y0, y1, &z) {
        Some(z)
    } else {
        None
    }
}

/// Max over a barycentric grid of the min squared distance to the state's
/// points: the square of how far the triangle can stray from the closure.
///
/// The grid is `{a + (i/(n-1))(b-a) + (j/(n-1))(c-a) : i + j ≤ n-1}`; for
/// `n = 2` it is exactly the three vertices.
pub fn covering_radius(s: &ClosureState, grid_n: usize) -> Rational {
    assert!(grid_n >= 2, "covering_radius needs grid_n >= 2");
    let [a, b, c, _] = s.base();
    let steps = grid_n as i64 - 1;
    let mut worst = Rational::zero();
    for i in 0..grid_n {
        for j in 0..(grid_n - i) {
            let l1 = Rational::new(i as i64, steps);
            let l2 = Rational::new(j as i64, steps);
            let node = Point2::new(
                &a.x + &(&l1 * &(&b.x - &a.x)) + &l2 * &(&c.x - &a.x),
                &a.y + &(&l1 * &(&b.y - &a.y)) + &l2 * &(&c.y - &a.y),
            );
            let nearest = s
                .points()
                .iter()
                .map(|p| node.dist_sq(p))
                .min()
                .expect("state is never empty");
            if nearest > worst {
                worst = nearest;
            }
        }
    }
    worst
}

/// Covering radius of each triangle side `[a,b]`, `[b,c]`, `[c,a]`: max
/// over `grid_n` equally spaced nodes on the side of the min squared
/// distance to the state's points.
pub fn side_covering_radius(s: &ClosureState, grid_n: usize) -> [Rational; 3] {
    assert!(grid_n >= 2);
    let [a, b, c, _] = s.base();
    let sides = [(a, b), (b, c), (c, a)];
    let steps = Rational::from_int(grid_n as i64 - 1);
    sides.map(|(u, v)| {
        let mut worst = Rational::zero();
        for i in 0..grid_n {
            let t = Rational::from_int(i as i64) / &steps;
            let node = u.lerp(v, &t);
            let nearest = s
                .points()
                .iter()
                .map(|p| node.dist_sq(p))
                .min()
                .expect("state is never empty");
            if nearest > worst {
                worst = nearest;
            }
        }
        worst
    })
}

/// A closure fragment with an image value for every point, propagated from
/// an image base by rule replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedClosure {
    state: ClosureState,
    values: Vec<Point2>,
    image_base: [Point2; 4],
}

impl ValuedClosure {
    /// Seeds values on a base-only state: `values(base) = image_base`.
    ///
    /// The image base must itself be a valid base — `(fa, fb, fc)` not
    /// collinear and `fd` strictly inside — otherwise rule replay is
    /// meaningless and the error is surfaced immediately.
    pub fn seed(state: ClosureState, image_base: [Point2; 4]) -> Result<Self, ClosureError> {
        if state.len() != 4 {
            return Err(ClosureError::InvalidExtension);
        }
        let [fa, fb, fc, fd] = &image_base;
        match in_triangle_interior(fd, fa, fb, fc) {
            Ok(true) => {}
            _ => return Err(ClosureError::ImageDegeneracy),
        }
        let values = image_base.to_vec();
        Ok(ValuedClosure {
            state,
            values,
            image_base,
        })
    }

    pub fn state(&self) -> &ClosureState {
        &self.state
    }

    pub fn values(&self) -> &[Point2] {
        &self.values
    }

    pub fn image_base(&self) -> &[Point2; 4] {
        &self.image_base
    }
}

/// Propagates values over a grown extension of the valued state by
/// replaying each new point's provenance rule on the image side.
///
/// Monotone maps admit no choice here: the image of an R1 point must be the
/// single intersection of the image segments, and the image of an R2 point
/// the unique ray target. If a replay fails to produce a unique point the
/// image base is not rigid and [`ClosureError::ImageDegeneracy`] is
/// returned.
pub fn extend_values(
    v: &ValuedClosure,
    grown: &ClosureState,
) -> Result<ValuedClosure, ClosureError> {
    if grown.base() != v.state.base()
        || grown.len() < v.state.len()
        || grown.points()[..v.state.len()] != v.state.points()[..]
    {
        return Err(ClosureError::InvalidExtension);
    }
    let mut values = v.values.clone();
    for i in v.state.len()..grown.len() {
        let value = match grown.provenance()[i] {
            Provenance::Base(_) => return Err(ClosureError::InvalidExtension),
            Provenance::SegmentIntersection { p0, p1, q0, q1 } => {
                single_point_intersection(&values[p0], &values[p1], &values[q0], &values[q1])
            }
            Provenance::RayTarget { x0, x1, y0, y1 } => {
                ray_target(&values[x0], &values[x1], &values[y0], &values[y1])
            }
        };
        values.push(value.ok_or(ClosureError::ImageDegeneracy)?);
    }
    Ok(ValuedClosure {
        state: grown.clone(),
        values,
        image_base: v.image_base.clone(),
    })
}

/// Outcome of comparing rule-propagated values against a fitted homography.
///
/// The mismatch variant carries the full diagnostic payload (point plus both
/// computed values); it is constructed at most once per run, so the size
/// imbalance with the success variant does not matter in practice.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum RigidityOutcome {
    /// Every closure point's propagated value equals its homography image.
    Ok { points: usize },
    /// First point (in derivation order) where the two computations differ.
    Mismatch {
        point: Point2,
        extended: Point2,
        homography: Point2,
    },
}

impl RigidityOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, RigidityOutcome::Ok { .. })
    }
}

/// Compares every propagated value against `h`'s evaluation, exactly.
pub fn verify_against_homography(
    v: &ValuedClosure,
    h: &ProjectiveTransform,
) -> Result<RigidityOutcome, ClosureError> {
    for (p, val) in v.state.points().iter().zip(v.values.iter()) {
        let image = h.eval(p)?;
        if image != *val {
            return Ok(RigidityOutcome::Mismatch {
                point: p.clone(),
                extended: val.clone(),
                homography: image,
            });
        }
    }
    Ok(RigidityOutcome::Ok {
        points: v.state.len(),
    })
}

/// End-to-end rigidity run: fit the homography through `base ↦ image_base`,
/// grow the closure for `generations` rounds of `budget` points, propagate
/// values by rule replay, and demand exact agreement everywhere.
///
/// Two independent computations meet here: the fitted matrix never sees the
/// derived points, and the rule replay never sees the matrix.
pub fn rigidity_check_with_budget(
    base: [Point2; 4],
    image_base: [Point2; 4],
    generations: usize,
    budget: usize,
) -> Result<RigidityOutcome, ClosureError> {
    let mut state = ClosureState::new(base)?;
    let seed = ValuedClosure::seed(state.clone(), image_base)?;
    let h = fit_homography(state.base(), seed.image_base())?;
    for _ in 0..generations {
        state.grow(budget);
    }
    let valued = extend_values(&seed, &state)?;
    verify_against_homography(&valued, &h)
}

/// [`rigidity_check_with_budget`] with the default per-generation budget.
pub fn rigidity_check(
    base: [Point2; 4],
    image_base: [Point2; 4],
    generations: usize,
) -> Result<RigidityOutcome, ClosureError> {
    rigidity_check_with_budget(base, image_base, generations, DEFAULT_GROWTH_BUDGET)
}

/// The worked base used across tests and the command-line defaults.
pub fn canonical_base() -> [Point2; 4] {
    [
        Point2::from_ints(0, 0),
        Point2::from_ints(1, 0),
        Point2::from_ints(0, 1),
        Point2::new(Rational::new(1, 4), Rational::new(1, 4)),
    ]
}

/// Quick validity test for a quadruple: triangle nondegenerate, fourth
/// point strictly interior (this also rules out any collinear triple).
pub fn is_valid_base(q: &[Point2; 4]) -> bool {
    let [a, b, c, d] = q;
    orient(a, b, c) != 0 && in_triangle_interior(d, a, b, c).unwrap_or(false)
}
