//! Order embeddings of planar configurations: linear projections with
//! verified certificates, Cantor-interval values for parallel line families,
//! lexicographic targets for line arrangements, and a betweenness constraint
//! solver for arbitrary finite configurations.
//!
//! Every embedding routine certifies its own output by running the map
//! checkers on the values it produces: a projection is accepted only when
//! the induced finite map is injective and betweenness-preserving, and the
//! constraint solver re-verifies satisfying assignments before returning
//! them. For finite point sets a suitable projection direction always
//! exists — only finitely many directions are bad — so the searches here
//! are deterministic sweeps over small rational candidates.

use std::collections::HashSet;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{collapse_to_edge, fan_collapse, five_point_map, ConstructionError};
use crate::geometry::{between, line_through, point, GeometryError, Line, Point2, Segment};
use crate::monotone::{
    check_injective, check_monotone, collinear_triples, FiniteConfig, FiniteMap, MapError,
    SourceStructure, Target, Verdict,
};
use crate::orders::{rescale, squash, OrderValue};
use crate::projective::ProjectiveTransform;
use crate::rational::Rational;
use crate::sampling::{
    box_grid, convex_polygon_grid, dedup_points, random_point, random_rational, unit_square_grid,
};

/// Shear candidates tried by `project_to_plane`: `t = 0, ±1, …, ±64`.
const PROJECTION_CANDIDATES: i64 = 64;

/// Node budget for one backtracking run of the betweenness solver.
const SOLVER_NODE_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("input points are not pairwise distinct")]
    DuplicatePoints,
    #[error("point does not lie on the line family")]
    NotOnFamily,
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("tuple dimension {got} unusable: {reason}")]
    DimensionMismatch { got: usize, reason: &'static str },
    #[error("candidate search exhausted its budget")]
    SearchExhausted,
    #[error("configuration has {len} points, cap is {cap}")]
    CapExceeded { len: usize, cap: usize },
    #[error("constraint references point {index} out of {len}")]
    BadConstraint { index: usize, len: usize },
    #[error("solver requires a euclidean source structure")]
    RequiresEuclidean,
    #[error("unknown plugin `{0}`")]
    UnknownPlugin(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

// ---------------------------------------------------------------------------
// Linear projection to the line.

/// A verified linear functional `φ(x, y) = u·x + v·y` that is injective on
/// the points it was built for. Linear maps preserve betweenness outright,
/// so injectivity is the entire content of the certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionEmbedding {
    pub u: Rational,
    pub v: Rational,
    /// `φ` evaluated at each input point, in input order.
    pub values: Vec<Rational>,
}

impl ProjectionEmbedding {
    pub fn eval(&self, p: &Point2) -> Rational {
        &self.u * &p.x + &self.v * &p.y
    }
}

/// Finds a linear functional injective on `points` and certifies it.
///
/// `φ = x + t·y` collides on a pair exactly when `t` equals the pair's
/// collision value `−Δx/Δy` (horizontal pairs never collide), so the sweep
/// over `t = 0, 1, 2, …` stops at the first integer avoiding that finite
/// set. The result is certified by `check_injective` and `check_monotone`;
/// a failure there is a bug, not an input condition, hence the assert.
pub fn projection_embed(points: &[Point2]) -> Result<ProjectionEmbedding, EmbedError> {
    let mut forbidden: HashSet<Rational> = HashSet::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let dx = &points[i].x - &points[j].x;
            let dy = &points[i].y - &points[j].y;
            if dy.is_zero() {
                if dx.is_zero() {
                    return Err(EmbedError::DuplicatePoints);
                }
            } else {
                forbidden.insert(-(dx / dy));
            }
        }
    }
    let mut k: i64 = 0;
    let mut t = Rational::zero();
    while forbidden.contains(&t) {
        k += 1;
        t = Rational::from(k);
    }
    let emb = ProjectionEmbedding {
        u: Rational::one(),
        v: t,
        values: Vec::new(),
    };
    let values: Vec<Rational> = points.iter().map(|p| emb.eval(p)).collect();
    let config = FiniteConfig::euclidean(points.to_vec())?;
    let targets = values
        .iter()
        .map(|r| Target::Ordered(OrderValue::Rat(r.clone())))
        .collect();
    let m = FiniteMap::new(config, targets)?;
    assert!(
        check_injective(&m).is_ok() && check_monotone(&m).is_ok(),
        "projection functional failed its own certificate"
    );
    Ok(ProjectionEmbedding { values, ..emb })
}

// ---------------------------------------------------------------------------
// Projection from higher dimensions to the plane.

/// A verified linear projection of an `n`-dimensional point set onto the
/// plane: images plus the two coefficient rows that produced them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarProjection {
    /// The shear parameter the search accepted.
    pub shear: Rational,
    /// Row `r` maps a tuple `x` to coordinate `Σ_j rows[r][j]·x[j]`.
    pub rows: [Vec<Rational>; 2],
    pub images: Vec<Point2>,
}

impl PlanarProjection {
    pub fn apply(&self, tuple: &[Rational]) -> Point2 {
        let coord = |row: &[Rational]| {
            row.iter()
                .zip(tuple)
                .fold(Rational::zero(), |acc, (c, x)| acc + c * x)
        };
        Point2::new(coord(&self.rows[0]), coord(&self.rows[1]))
    }
}

/// Projects an `n`-dimensional finite point set (`n ≥ 3`) onto the plane so
/// that betweenness is preserved in both directions.
///
/// Candidate projections shear the trailing coordinates onto the first two
/// with distinct powers of a single parameter `t`; each candidate is checked
/// against the exhaustive triple oracle (collinearity and betweenness both
/// ways, plus injectivity) and the first survivor is returned. Only finitely
/// many `t` are degenerate for a finite set, so exhaustion of the candidate
/// budget signals an insufficient budget rather than nonexistence.
pub fn project_to_plane(points: &[Vec<Rational>]) -> Result<PlanarProjection, EmbedError> {
    let dim = match points.first() {
        None => {
            return Ok(PlanarProjection {
                shear: Rational::zero(),
                rows: [Vec::new(), Vec::new()],
                images: Vec::new(),
            })
        }
        Some(p) => p.len(),
    };
    if dim < 3 {
        return Err(EmbedError::DimensionMismatch {
            got: dim,
            reason: "projection needs tuples of at least 3 coordinates",
        });
    }
    if points.iter().any(|p| p.len() != dim) {
        return Err(EmbedError::DimensionMismatch {
            got: dim,
            reason: "tuples must share one dimension",
        });
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(EmbedError::DuplicatePoints);
    }

    for k in 0..=(2 * PROJECTION_CANDIDATES) {
        // 0, 1, -1, 2, -2, …
        let t = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
        let t = Rational::from(t);
        let rows = shear_rows(dim, &t);
        let proj = PlanarProjection {
            shear: t,
            images: Vec::new(),
            rows,
        };
        let images: Vec<Point2> = points.iter().map(|p| proj.apply(p)).collect();
        if projection_is_isomorphism(points, &images) {
            return Ok(PlanarProjection { images, ..proj });
        }
    }
    Err(EmbedError::SearchExhausted)
}

/// Coefficient rows `(1, 0, t, t², …)` and `(0, 1, t^{n−1}, …, t^{2(n−2)})`:
/// all trailing powers are distinct, which makes the projection generic for
/// all but finitely many `t`.
fn shear_rows(dim: usize, t: &Rational) -> [Vec<Rational>; 2] {
    let mut row0 = vec![Rational::zero(); dim];
    let mut row1 = vec![Rational::zero(); dim];
    row0[0] = Rational::one();
    row1[1] = Rational::one();
    let mut power = Rational::one();
    for c in row0.iter_mut().skip(2) {
        power = power * t;
        *c = power.clone();
    }
    for c in row1.iter_mut().skip(2) {
        power = power * t;
        *c = power.clone();
    }
    [row0, row1]
}

/// `x ∈ [a, b]` in arbitrary dimension: `x − a` is a multiple `λ(b − a)`
/// with `λ ∈ [0, 1]`. Callers guarantee the three tuples are distinct.
fn between_nd(a: &[Rational], x: &[Rational], b: &[Rational]) -> bool {
    let d1: Vec<Rational> = x.iter().zip(a).map(|(p, q)| p - q).collect();
    let d2: Vec<Rational> = b.iter().zip(a).map(|(p, q)| p - q).collect();
    for i in 0..d1.len() {
        for j in (i + 1)..d1.len() {
            if &d1[i] * &d2[j] != &d1[j] * &d2[i] {
                return false;
            }
        }
    }
    let dot = |u: &[Rational], v: &[Rational]| {
        u.iter()
            .zip(v)
            .fold(Rational::zero(), |acc, (p, q)| acc + p * q)
    };
    let proj = dot(&d1, &d2);
    proj >= Rational::zero() && proj <= dot(&d2, &d2)
}

/// The exhaustive oracle: images pairwise distinct, and for every triple
/// betweenness holds upstairs exactly when it holds downstairs.
fn projection_is_isomorphism(points: &[Vec<Rational>], images: &[Point2]) -> bool {
    let n = points.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if images[i] == images[j] {
                return false;
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for (a, x, b) in [(i, j, k), (j, i, k), (i, k, j)] {
                    let up = between_nd(&points[a], &points[x], &points[b]);
                    let down = between(&images[a], &images[x], &images[b]);
                    if up != down {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Cantor intervals and parallel line families.

/// The middle-third intervals removed during the first `level` steps of the
/// Cantor construction on `[0, 1]`, in left-to-right order. There are
/// `2^level − 1` of them and they are pairwise disjoint with strictly
/// increasing endpoints.
pub fn cantor_removed_intervals(level: u32) -> Vec<(Rational, Rational)> {
    fn rec(lo: Rational, hi: Rational, depth: u32, out: &mut Vec<(Rational, Rational)>) {
        if depth == 0 {
            return;
        }
        let third = (&hi - &lo) * Rational::new(1, 3);
        let l = &lo + &third;
        let r = &hi - &third;
        rec(lo, l.clone(), depth - 1, out);
        out.push((l, r.clone()));
        rec(r, hi, depth - 1, out);
    }
    let mut out = Vec::new();
    rec(Rational::zero(), Rational::one(), level, &mut out);
    out
}

/// The `k` pairwise disjoint value intervals assigned to `k` parallel lines:
/// the leftmost `k` removed intervals at the shallowest Cantor level that
/// provides enough of them (`⌈log₂(k+1)⌉`). Lower height rank gets the
/// further-left interval, so the intervals are strictly increasing with
/// rank.
pub fn parallel_value_intervals(k: usize) -> Vec<(Rational, Rational)> {
    if k == 0 {
        return Vec::new();
    }
    let mut level = 0u32;
    while (1usize << level) < k + 1 {
        level += 1;
    }
    let mut intervals = cantor_removed_intervals(level);
    intervals.truncate(k);
    intervals
}

/// Value of the order embedding for a family of horizontal lines at the
/// given heights: the line of height rank `i` maps increasingly onto the
/// `i`-th Cantor interval, via the order-preserving squash of the
/// x-coordinate. Points on distinct lines compare by height rank, points on
/// one line by x.
pub fn parallel_lines_map(heights: &[Rational], pt: &Point2) -> Result<OrderValue, EmbedError> {
    if heights.is_empty() || heights.windows(2).any(|w| w[0] >= w[1]) {
        return Err(EmbedError::InvalidFamily(
            "heights must be non-empty and strictly increasing".into(),
        ));
    }
    let rank = heights
        .iter()
        .position(|h| *h == pt.y)
        .ok_or(EmbedError::NotOnFamily)?;
    let (lo, hi) = &parallel_value_intervals(heights.len())[rank];
    let value = rescale(&squash(&pt.x), lo, hi).expect("non-empty interval");
    Ok(OrderValue::Rat(value))
}

// ---------------------------------------------------------------------------
// Lexicographic targets.

/// The identity onto the lexicographically ordered plane.
pub fn lex_identity(pt: &Point2) -> OrderValue {
    OrderValue::LexPair(pt.x.clone(), pt.y.clone())
}

/// Three pairwise non-parallel lines, one of them vertical. Target values
/// live in the lexicographic sum `(ℝ·2) + ℝ + (ℝ·2)`: everything strictly
/// left of the vertical line, then the vertical line itself, then
/// everything strictly right of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ThreeLinesWire", into = "ThreeLinesWire")]
pub struct ThreeLinesConfig {
    vertical: Line,
    slanted: [Line; 2],
}

#[derive(Serialize, Deserialize)]
struct ThreeLinesWire {
    vertical: Line,
    slanted: [Line; 2],
}

impl TryFrom<ThreeLinesWire> for ThreeLinesConfig {
    type Error = EmbedError;

    fn try_from(w: ThreeLinesWire) -> Result<Self, EmbedError> {
        let [l1, l2] = w.slanted;
        ThreeLinesConfig::new(w.vertical, l1, l2)
    }
}

impl From<ThreeLinesConfig> for ThreeLinesWire {
    fn from(c: ThreeLinesConfig) -> Self {
        ThreeLinesWire {
            vertical: c.vertical,
            slanted: c.slanted,
        }
    }
}

impl ThreeLinesConfig {
    pub fn new(vertical: Line, l1: Line, l2: Line) -> Result<Self, EmbedError> {
        if !vertical.is_vertical() {
            return Err(EmbedError::InvalidFamily(
                "the distinguished line must be vertical".into(),
            ));
        }
        if l1.is_vertical() || l2.is_vertical() {
            return Err(EmbedError::InvalidFamily(
                "the two remaining lines must not be vertical".into(),
            ));
        }
        if l1.is_parallel_to(&l2) {
            return Err(EmbedError::InvalidFamily(
                "the two slanted lines must not be parallel".into(),
            ));
        }
        // Fix the double-arrow side bit by the canonical line order.
        let slanted = if l1 <= l2 { [l1, l2] } else { [l2, l1] };
        Ok(ThreeLinesConfig { vertical, slanted })
    }

    pub fn vertical(&self) -> &Line {
        &self.vertical
    }

    pub fn slanted(&self) -> &[Line; 2] {
        &self.slanted
    }

    /// x-coordinate of the vertical line.
    pub fn vertical_x(&self) -> Rational {
        self.vertical.c() / self.vertical.a()
    }

    pub fn lines(&self) -> [&Line; 3] {
        [&self.vertical, &self.slanted[0], &self.slanted[1]]
    }
}

/// Order value of a point of a three-line arrangement inside
/// `(ℝ·2) + ℝ + (ℝ·2)`.
///
/// The component label is the horizontal position relative to the vertical
/// line; inside the outer components the value is the double-arrow pair
/// `(x, which slanted line)`, and on the vertical line it is plainly `y`.
/// The side bit only breaks ties between points of equal `x` on the two
/// slanted lines, and no collinear triple ever compares two such points
/// against each other, so any fixed line order is sound.
pub fn three_lines_lexsum(cfg: &ThreeLinesConfig, pt: &Point2) -> Result<OrderValue, EmbedError> {
    let vx = cfg.vertical_x();
    if pt.x == vx {
        return Ok(OrderValue::LexSum(
            1,
            Box::new(OrderValue::Rat(pt.y.clone())),
        ));
    }
    let bit = if cfg.slanted[0].contains(pt) {
        0
    } else if cfg.slanted[1].contains(pt) {
        1
    } else {
        return Err(EmbedError::NotOnFamily);
    };
    let label = if pt.x < vx { 0 } else { 2 };
    Ok(OrderValue::LexSum(
        label,
        Box::new(OrderValue::DoubleArrow(pt.x.clone(), bit)),
    ))
}

// ---------------------------------------------------------------------------
// Line families.

/// A finite family of lines, each optionally clipped to a segment of
/// itself, with small integer labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineFamily {
    lines: Vec<(Line, Option<Segment>)>,
    labels: Vec<u32>,
}

impl LineFamily {
    /// Horizontal lines at strictly increasing heights.
    pub fn parallel(heights: &[Rational]) -> Result<Self, EmbedError> {
        if heights.is_empty() || heights.windows(2).any(|w| w[0] >= w[1]) {
            return Err(EmbedError::InvalidFamily(
                "heights must be non-empty and strictly increasing".into(),
            ));
        }
        let lines = heights
            .iter()
            .map(|h| {
                let line = Line::from_coefficients(&Rational::zero(), &Rational::one(), h)
                    .expect("horizontal line");
                (line, None)
            })
            .collect();
        Ok(LineFamily {
            lines,
            labels: (0..heights.len() as u32).collect(),
        })
    }

    /// Bounded segments, each clipped to itself.
    pub fn segments(segs: &[Segment]) -> Result<Self, EmbedError> {
        let mut lines = Vec::with_capacity(segs.len());
        for s in segs {
            if s.is_degenerate() {
                return Err(EmbedError::InvalidFamily(
                    "family segments must be non-degenerate".into(),
                ));
            }
            let line = line_through(&s.p, &s.q).expect("non-degenerate segment");
            lines.push((line, Some(s.clone())));
        }
        Ok(LineFamily {
            lines,
            labels: (0..segs.len() as u32).collect(),
        })
    }

    /// Unclipped lines.
    pub fn lines_only(lines: &[Line]) -> Self {
        LineFamily {
            lines: lines.iter().map(|l| (l.clone(), None)).collect(),
            labels: (0..lines.len() as u32).collect(),
        }
    }

    pub fn lines(&self) -> &[(Line, Option<Segment>)] {
        &self.lines
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Index of the first member containing `p` (inside the clip, when the
    /// member is clipped).
    pub fn member_containing(&self, p: &Point2) -> Option<usize> {
        self.lines.iter().position(|(line, clip)| {
            line.contains(p)
                && clip
                    .as_ref()
                    .map(|s| between(&s.p, p, &s.q))
                    .unwrap_or(true)
        })
    }

    fn member_contains(&self, idx: usize, p: &Point2) -> bool {
        let (line, clip) = &self.lines[idx];
        line.contains(p)
            && clip
                .as_ref()
                .map(|s| between(&s.p, p, &s.q))
                .unwrap_or(true)
    }
}

/// Collinear triples of the configuration that no single family member
/// covers: the adversarial cases for any per-line value assignment.
pub fn cross_family_triples(
    config: &FiniteConfig,
    family: &LineFamily,
) -> Vec<(usize, usize, usize)> {
    let pts = config.points();
    collinear_triples(config)
        .into_iter()
        .filter(|(a, x, b)| {
            !(0..family.len()).any(|i| {
                family.member_contains(i, &pts[*a])
                    && family.member_contains(i, &pts[*x])
                    && family.member_contains(i, &pts[*b])
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Betweenness constraint solver.

/// Outcome of the betweenness solver: an injective rational assignment, or
/// an unsatisfiable constraint subset (each middle must be strictly
/// order-between its outers, in either orientation).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CspOutcome {
    Sat { values: Vec<Rational> },
    Unsat { core: Vec<(usize, usize, usize)> },
}

impl CspOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, CspOutcome::Sat { .. })
    }
}

enum RawOutcome {
    Sat(Vec<usize>),
    Unsat,
    Exhausted,
}

/// Searches for a total order of `n` points in which every constraint
/// `(a, x, b)` places `x` strictly between `a` and `b`.
///
/// The search places points one by one into a growing linear arrangement —
/// most-constrained point first — and tries insertion gaps starting from the
/// position suggested by `warm` (any injective value list, typically a
/// projection functional). `SearchExhausted` reports a blown node budget,
/// which for satisfiable geometric inputs does not happen: the warm order
/// itself already satisfies all constraints extracted from a planar
/// configuration.
pub fn solve_betweenness(
    n: usize,
    constraints: &[(usize, usize, usize)],
    warm: Option<&[Rational]>,
) -> Result<CspOutcome, EmbedError> {
    for &(a, x, b) in constraints {
        for idx in [a, x, b] {
            if idx >= n {
                return Err(EmbedError::BadConstraint { index: idx, len: n });
            }
        }
        if a == x || x == b || a == b {
            return Err(EmbedError::InvalidFamily(
                "betweenness constraints need three distinct points".into(),
            ));
        }
    }
    if let Some(w) = warm {
        if w.len() != n {
            return Err(EmbedError::InvalidFamily(
                "warm-start values must cover every point".into(),
            ));
        }
    }
    match solve_raw(n, constraints, warm, SOLVER_NODE_BUDGET) {
        RawOutcome::Sat(seq) => {
            let mut values = vec![Rational::zero(); n];
            for (pos, &p) in seq.iter().enumerate() {
                values[p] = Rational::from((pos + 1) as i64);
            }
            Ok(CspOutcome::Sat { values })
        }
        RawOutcome::Unsat => Ok(CspOutcome::Unsat {
            core: minimize_core(n, constraints),
        }),
        RawOutcome::Exhausted => Err(EmbedError::SearchExhausted),
    }
}

fn solve_raw(
    n: usize,
    constraints: &[(usize, usize, usize)],
    warm: Option<&[Rational]>,
    budget: usize,
) -> RawOutcome {
    let mut degree = vec![0usize; n];
    let mut by_point: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ci, &(a, x, b)) in constraints.iter().enumerate() {
        for idx in [a, x, b] {
            degree[idx] += 1;
            by_point[idx].push(ci);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| (usize::MAX - degree[p], p));

    struct Dfs<'a> {
        constraints: &'a [(usize, usize, usize)],
        by_point: &'a [Vec<usize>],
        order: &'a [usize],
        warm: Option<&'a [Rational]>,
        seq: Vec<usize>,
        nodes: usize,
        budget: usize,
    }

    enum Step {
        Found,
        Dead,
        Out,
    }

    impl Dfs<'_> {
        fn consistent(&self, p: usize) -> bool {
            let pos_of = |q: usize| self.seq.iter().position(|&r| r == q);
            for &ci in &self.by_point[p] {
                let (a, x, b) = self.constraints[ci];
                let (pa, px, pb) = match (pos_of(a), pos_of(x), pos_of(b)) {
                    (Some(pa), Some(px), Some(pb)) => (pa, px, pb),
                    _ => continue,
                };
                let ok = (pa < px && px < pb) || (pb < px && px < pa);
                if !ok {
                    return false;
                }
            }
            true
        }

        fn step(&mut self, k: usize) -> Step {
            if self.nodes >= self.budget {
                return Step::Out;
            }
            self.nodes += 1;
            if k == self.order.len() {
                return Step::Found;
            }
            let p = self.order[k];
            let len = self.seq.len();
            let preferred = match self.warm {
                Some(w) => self.seq.iter().filter(|&&q| w[q] < w[p]).count(),
                None => len,
            };
            let gaps = std::iter::once(preferred).chain((0..=len).filter(|&g| g != preferred));
            for gap in gaps {
                self.seq.insert(gap, p);
                if self.consistent(p) {
                    match self.step(k + 1) {
                        Step::Found => return Step::Found,
                        Step::Out => return Step::Out,
                        Step::Dead => {}
                    }
                }
                self.seq.remove(gap);
            }
            Step::Dead
        }
    }

    let mut dfs = Dfs {
        constraints,
        by_point: &by_point,
        order: &order,
        warm,
        seq: Vec::with_capacity(n),
        nodes: 0,
        budget,
    };
    match dfs.step(0) {
        Step::Found => RawOutcome::Sat(dfs.seq),
        Step::Dead => RawOutcome::Unsat,
        Step::Out => RawOutcome::Exhausted,
    }
}

/// Deletion-based core shrinking: drop a constraint whenever the rest stays
/// unsatisfiable. Every member of the result is necessary for the
/// contradiction whenever the trial searches complete within budget.
fn minimize_core(n: usize, constraints: &[(usize, usize, usize)]) -> Vec<(usize, usize, usize)> {
    let mut core = constraints.to_vec();
    let mut i = 0;
    while i < core.len() {
        let mut trial = core.clone();
        trial.remove(i);
        match solve_raw(n, &trial, None, SOLVER_NODE_BUDGET) {
            RawOutcome::Unsat => core = trial,
            _ => i += 1,
        }
    }
    core
}

/// Extracts the strict-betweenness constraints of a planar configuration,
/// solves them (projection-guided), and certifies a satisfying assignment
/// with the map oracles before returning it.
///
/// Geometric inputs are always satisfiable — an injective linear functional
/// witnesses this — so `Unsat` only ever arises from hand-built constraint
/// sets fed to `solve_betweenness` directly.
pub fn betweenness_csp(config: &FiniteConfig, cap: usize) -> Result<CspOutcome, EmbedError> {
    if config.structure() != SourceStructure::Euclidean {
        return Err(EmbedError::RequiresEuclidean);
    }
    if config.len() > cap {
        return Err(EmbedError::CapExceeded {
            len: config.len(),
            cap,
        });
    }
    let constraints = collinear_triples(config);
    let warm = projection_embed(config.points())?;
    let outcome = solve_betweenness(config.len(), &constraints, Some(&warm.values))?;
    if let CspOutcome::Sat { values } = &outcome {
        let targets = values
            .iter()
            .map(|r| Target::Ordered(OrderValue::Rat(r.clone())))
            .collect();
        let m = FiniteMap::new(config.clone(), targets)?;
        assert!(
            check_monotone(&m).is_ok() && check_injective(&m).is_ok(),
            "solver returned an uncertified assignment"
        );
    }
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// Concurrent-segment sampling.

/// A sampled three-segment configuration: the clipped family, a point
/// configuration on it, and the collinear triples spanning several
/// segments.
#[derive(Clone, Debug)]
pub struct SegmentSample {
    pub family: LineFamily,
    pub config: FiniteConfig,
    pub cross_triples: Vec<(usize, usize, usize)>,
}

/// Samples three segments through one common point, with anchor points per
/// segment and every crossing of an anchor-pair line with the third segment
/// added in, so the configuration carries cross-segment collinear triples.
///
/// Deterministic for a given generator state; re-draws until the sample has
/// at least `min_points` points and `min_cross` cross-segment triples.
pub fn sample_concurrent_segments(
    rng: &mut ChaCha8Rng,
    per_segment: usize,
    min_points: usize,
    min_cross: usize,
) -> SegmentSample {
    assert!(per_segment >= 3, "need at least the endpoints and centre");
    for _ in 0..64 {
        let center = random_point(rng, 2, 8);
        let mut dirs: Vec<(Rational, Rational)> = Vec::new();
        while dirs.len() < 3 {
            let d = (random_rational(rng, 3, 4), random_rational(rng, 3, 4));
            if d.0.is_zero() && d.1.is_zero() {
                continue;
            }
            if dirs.iter().any(|e| (&e.0 * &d.1 - &e.1 * &d.0).is_zero()) {
                continue;
            }
            dirs.push(d);
        }
        let segs: Vec<Segment> = dirs
            .iter()
            .map(|d| {
                Segment::new(
                    Point2::new(&center.x - &d.0, &center.y - &d.1),
                    Point2::new(&center.x + &d.0, &center.y + &d.1),
                )
            })
            .collect();
        let family = LineFamily::segments(&segs).expect("non-degenerate segments");

        let mut anchors: Vec<(usize, Point2)> = Vec::new();
        for (i, d) in dirs.iter().enumerate() {
            for j in 0..per_segment {
                let t = Rational::new(2 * j as i64, (per_segment - 1) as i64) - Rational::one();
                anchors.push((i, Point2::new(&center.x + &t * &d.0, &center.y + &t * &d.1)));
            }
        }
        let mut points: Vec<Point2> = anchors.iter().map(|(_, p)| p.clone()).collect();
        for a in 0..anchors.len() {
            for b in (a + 1)..anchors.len() {
                let (ia, pa) = &anchors[a];
                let (ib, pb) = &anchors[b];
                if ia == ib || pa == pb {
                    continue;
                }
                let Ok(through) = line_through(pa, pb) else {
                    continue;
                };
                for k in 0..3 {
                    if k == *ia || k == *ib {
                        continue;
                    }
                    let (line, clip) = &family.lines()[k];
                    if let Some(x) = line.intersect(&through) {
                        let s = clip.as_ref().expect("segments are clipped");
                        if between(&s.p, &x, &s.q) {
                            points.push(x);
                        }
                    }
                }
            }
        }
        let points = dedup_points(points);
        let config = FiniteConfig::euclidean(points).expect("deduplicated points");
        let cross = cross_family_triples(&config, &family);
        if config.len() >= min_points && cross.len() >= min_cross {
            return SegmentSample {
                family,
                config,
                cross_triples: cross,
            };
        }
    }
    panic!("segment sampler failed to reach the requested density");
}

// ---------------------------------------------------------------------------
// Stress harness over total maps.

/// A registered total map the stress harness can sample and verify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "map", rename_all = "snake_case")]
pub enum TotalMapSpec {
    CollapseToEdge {
        a: Point2,
        b: Point2,
        c: Point2,
    },
    FanCollapse {
        a: Point2,
        b: Point2,
        c: Point2,
        v: Point2,
    },
    FivePointMap,
    ParallelLines {
        heights: Vec<Rational>,
    },
    LexIdentity,
    ThreeLinesLexsum(ThreeLinesConfig),
    Homography(ProjectiveTransform),
}

/// The built-in plugin registry, keyed by the CLI-facing identifier. Each
/// entry is a canonical instance of the construction.
pub fn builtin_total_map(id: &str) -> Result<TotalMapSpec, EmbedError> {
    match id {
        "collapse_to_edge" => Ok(TotalMapSpec::CollapseToEdge {
            a: point(0, 0),
            b: point(1, 0),
            c: point(0, 1),
        }),
        "fan_collapse" => Ok(TotalMapSpec::FanCollapse {
            a: point(0, 0),
            b: point(1, 0),
            c: point(0, 1),
            v: Point2::new(Rational::new(1, 2), Rational::new(1, 2)),
        }),
        "five_point_map" => Ok(TotalMapSpec::FivePointMap),
        "parallel_lines_map" => Ok(TotalMapSpec::ParallelLines {
            heights: vec![Rational::zero(), Rational::one(), Rational::from(2)],
        }),
        "lex_identity" => Ok(TotalMapSpec::LexIdentity),
        "three_lines_lexsum" => {
            let vertical =
                Line::from_coefficients(&Rational::one(), &Rational::zero(), &Rational::zero())
                    .expect("vertical line");
            let l1 =
                Line::from_coefficients(&Rational::one(), &-Rational::one(), &Rational::zero())
                    .expect("slope-one line");
            let l2 = Line::from_coefficients(&Rational::one(), &Rational::one(), &Rational::one())
                .expect("slope-minus-one line");
            Ok(TotalMapSpec::ThreeLinesLexsum(ThreeLinesConfig::new(
                vertical, l1, l2,
            )?))
        }
        other => Err(EmbedError::UnknownPlugin(other.into())),
    }
}

/// Evaluates a registered total map at one point. Errors mirror the
/// underlying construction's domain checks.
pub fn eval_total_map(spec: &TotalMapSpec, pt: &Point2) -> Result<Target, EmbedError> {
    Ok(match spec {
        TotalMapSpec::CollapseToEdge { a, b, c } => Target::Planar(collapse_to_edge(a, b, c, pt)?),
        TotalMapSpec::FanCollapse { a, b, c, v } => Target::Planar(fan_collapse(a, b, c, v, pt)?),
        TotalMapSpec::FivePointMap => Target::Planar(five_point_map(&pt.x, &pt.y)?),
        TotalMapSpec::ParallelLines { heights } => {
            Target::Ordered(parallel_lines_map(heights, pt)?)
        }
        TotalMapSpec::LexIdentity => Target::Ordered(lex_identity(pt)),
        TotalMapSpec::ThreeLinesLexsum(cfg) => Target::Ordered(three_lines_lexsum(cfg, pt)?),
        TotalMapSpec::Homography(h) => Target::Planar(h.eval(pt).map_err(|e| {
            EmbedError::InvalidFamily(format!("projective evaluation failed: {e}"))
        })?),
    })
}

/// What the stress run verified, and the first counterexample if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StressReport {
    pub points: usize,
    pub monotone: Verdict,
    pub injective: Option<Verdict>,
}

impl StressReport {
    pub fn is_ok(&self) -> bool {
        self.monotone.is_ok() && self.injective.as_ref().is_none_or(Verdict::is_ok)
    }
}

/// The adversarial domain sample the stress harness verifies on: a grid
/// over the map's domain plus, for line families, every crossing of an
/// anchor-pair line with another family member, so cross-structure
/// collinear triples are present.
pub fn stress_sample(spec: &TotalMapSpec, grid: usize) -> Result<Vec<Point2>, EmbedError> {
    let grid = grid.max(2);
    Ok(match spec {
        TotalMapSpec::CollapseToEdge { a, b, c } => {
            convex_polygon_grid(&[a.clone(), b.clone(), c.clone()], grid)
        }
        TotalMapSpec::FanCollapse { a, b, c, v } => {
            let mut pts = convex_polygon_grid(&[a.clone(), b.clone(), c.clone()], grid);
            pts.push(v.clone());
            dedup_points(pts)
        }
        TotalMapSpec::FivePointMap => unit_square_grid(grid),
        TotalMapSpec::ParallelLines { heights } => {
            family_sample(&LineFamily::parallel(heights)?, grid)
        }
        TotalMapSpec::LexIdentity => box_grid(&point(-1, -1), &point(1, 1), grid),
        TotalMapSpec::ThreeLinesLexsum(cfg) => {
            let family = LineFamily::lines_only(&[
                cfg.vertical().clone(),
                cfg.slanted()[0].clone(),
                cfg.slanted()[1].clone(),
            ]);
            family_sample(&family, grid)
        }
        // Points on the vanishing line are outside the transform's convex
        // domain; the grid is clipped to where evaluation is defined.
        TotalMapSpec::Homography(h) => unit_square_grid(grid)
            .into_iter()
            .filter(|p| h.eval(p).is_ok())
            .collect(),
    })
}

/// Evaluates the map over [`stress_sample`] and runs the monotonicity
/// oracle (and optionally the injectivity oracle) on the result.
pub fn stress_total_map(
    spec: &TotalMapSpec,
    grid: usize,
    check_injectivity: bool,
) -> Result<StressReport, EmbedError> {
    let points = stress_sample(spec, grid)?;
    let targets = points
        .iter()
        .map(|p| eval_total_map(spec, p))
        .collect::<Result<Vec<_>, _>>()?;
    let m = FiniteMap::new(FiniteConfig::euclidean(points.clone())?, targets)?;
    Ok(StressReport {
        points: points.len(),
        monotone: check_monotone(&m),
        injective: check_injectivity.then(|| check_injective(&m)),
    })
}

/// Anchor grid on each family member plus all crossings of anchor-pair
/// lines with the other members: the sample every line-family stress run
/// uses. Anchors sweep `x ∈ [−2, 2]` (or `y` for vertical members).
fn family_sample(family: &LineFamily, grid: usize) -> Vec<Point2> {
    let span = Rational::from(4);
    let lo = Rational::from(-2);
    let mut anchors: Vec<(usize, Point2)> = Vec::new();
    for (i, (line, _)) in family.lines().iter().enumerate() {
        for j in 0..grid {
            let t = &lo + &span * Rational::new(j as i64, (grid - 1) as i64);
            let p = if line.is_vertical() {
                Point2::new(line.c() / line.a(), t)
            } else {
                let y = (line.c() - line.a() * &t) / line.b();
                Point2::new(t, y)
            };
            anchors.push((i, p));
        }
    }
    let mut points: Vec<Point2> = anchors.iter().map(|(_, p)| p.clone()).collect();
    for a in 0..anchors.len() {
        for b in (a + 1)..anchors.len() {
            let (ia, pa) = &anchors[a];
            let (ib, pb) = &anchors[b];
            if ia == ib || pa == pb {
                continue;
            }
            let Ok(through) = line_through(pa, pb) else {
                continue;
            };
            for (k, (line, _)) in family.lines().iter().enumerate() {
                if k == *ia || k == *ib {
                    continue;
                }
                if let Some(x) = line.intersect(&through) {
                    points.push(x);
                }
            }
        }
    }
    dedup_points(points)
}
