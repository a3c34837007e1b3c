//! Partial projective transformations of the rational plane.
//!
//! A transform is a nonzero 3×3 rational matrix `M` acting on homogeneous
//! columns `(x, y, 1)`; the induced planar map is
//!
//! ```text
//! f(x, y) = (row1·x̂ / row3·x̂,  row2·x̂ / row3·x̂)
//! ```
//!
//! so rows 1–2 carry the affine numerator and row 3 the denominator
//! `(v | x) + α` with `row3 = (v₁, v₂, α)`. `f` is undefined exactly on the
//! vanishing line `row3·x̂ = 0`; the two open sides of that line are the
//! maximal convex sets on which the restriction of `f` preserves
//! betweenness.
//!
//! Matrices are kept in a canonical gauge — the first nonzero entry in
//! row-major order is scaled to 1 — because the planar map determines `M`
//! only up to a nonzero scalar. All equality tests (and the fitting
//! round-trip) rely on this normal form.

use serde::{Deserialize, Serialize};

use crate::geometry::{orient, Line, Point2};
use crate::monotone::{
    check_injective, check_isomorphism, check_monotone, FiniteConfig, FiniteMap, Target, Verdict,
};
use crate::rational::Rational;
use crate::sampling::convex_polygon_grid;

type Matrix = [[Rational; 3]; 3];

/// A projective transformation in canonical gauge.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TransformWire", into = "TransformWire")]
pub struct ProjectiveTransform {
    m: Matrix,
}

#[derive(Serialize, Deserialize)]
struct TransformWire {
    m: Matrix,
}

impl TryFrom<TransformWire> for ProjectiveTransform {
    type Error = ProjectiveError;
    fn try_from(w: TransformWire) -> Result<Self, ProjectiveError> {
        ProjectiveTransform::new(w.m)
    }
}

impl From<ProjectiveTransform> for TransformWire {
    fn from(p: ProjectiveTransform) -> Self {
        TransformWire { m: p.m }
    }
}

impl std::fmt::Debug for ProjectiveTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, row) in self.m.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "[{} {} {}]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

/// Errors from construction, evaluation, inversion, and fitting.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProjectiveError {
    #[error("matrix is identically zero")]
    ZeroMatrix,
    #[error("third row is zero: the map would be defined nowhere")]
    ZeroDenominatorRow,
    #[error("point lies on the vanishing line")]
    VanishingDenominator,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("three of the four points are collinear")]
    DegenerateCorrespondence,
    #[error("no projective transform satisfies the correspondences")]
    NoSolution,
    #[error("polygon is not strictly inside one open halfplane")]
    PolygonCrossesBoundary,
}

/// The vanishing line of a transform together with its two open sides.
///
/// `side` returns `+1` on `H⁺` (where the denominator `row3·x̂` is
/// positive), `−1` on `H⁻`, and `0` on the boundary; this agrees with
/// [`ProjectiveTransform::denominator_sign`] by construction even though the
/// canonical [`Line`] form may flip the algebraic sign of the coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfplanePair {
    boundary: Line,
    positive_sign: i32,
}

impl HalfplanePair {
    pub fn boundary(&self) -> &Line {
        &self.boundary
    }

    /// `+1` in the positive open halfplane, `−1` in the negative one, `0` on
    /// the boundary line.
    pub fn side(&self, p: &Point2) -> i32 {
        self.boundary.eval(p).signum() * self.positive_sign
    }

    pub fn in_positive(&self, p: &Point2) -> bool {
        self.side(p) > 0
    }

    pub fn in_negative(&self, p: &Point2) -> bool {
        self.side(p) < 0
    }
}

/// Where a transform is defined: everywhere (affine), or on two open
/// halfplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainDescription {
    AffineEverywhere,
    Halfplanes(HalfplanePair),
}

/// The decomposition `f(x) = T(x) / ((v|x) + α)` into linear, translation,
/// direction, and offset pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformParts {
    /// Rows 1–2, columns 1–2: linear part of the numerator.
    pub linear: [[Rational; 2]; 2],
    /// Rows 1–2, column 3: translation part of the numerator.
    pub translation: [Rational; 2],
    /// Row 3, columns 1–2: the functional `v`.
    pub direction: [Rational; 2],
    /// Row 3, column 3: the offset `α`.
    pub offset: Rational,
}

impl ProjectiveTransform {
    /// Builds a transform from a matrix, normalizing to canonical gauge.
    ///
    /// Rejects the zero matrix, and any matrix with zero third row: such a
    /// matrix has an identically zero denominator, so the map it would
    /// define has empty domain.
    pub fn new(m: Matrix) -> Result<Self, ProjectiveError> {
        let lead = m
            .iter()
            .flatten()
            .find(|e| !e.is_zero())
            .cloned()
            .ok_or(ProjectiveError::ZeroMatrix)?;
        if m[2].iter().all(|e| e.is_zero()) {
            return Err(ProjectiveError::ZeroDenominatorRow);
        }
        let mut m = m;
        for row in m.iter_mut() {
            for e in row.iter_mut() {
                *e = &*e / &lead;
            }
        }
        Ok(ProjectiveTransform { m })
    }

    pub fn from_int_rows(rows: [[i64; 3]; 3]) -> Result<Self, ProjectiveError> {
        ProjectiveTransform::new(rows.map(|r| r.map(Rational::from_int)))
    }

    pub fn identity() -> Self {
        ProjectiveTransform::from_int_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
            .expect("identity is valid")
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    /// The `(T, v, α)` pieces of the matrix.
    pub fn decompose(&self) -> TransformParts {
        TransformParts {
            linear: [
                [self.m[0][0].clone(), self.m[0][1].clone()],
                [self.m[1][0].clone(), self.m[1][1].clone()],
            ],
            translation: [self.m[0][2].clone(), self.m[1][2].clone()],
            direction: [self.m[2][0].clone(), self.m[2][1].clone()],
            offset: self.m[2][2].clone(),
        }
    }

    fn row_dot(&self, i: usize, p: &Point2) -> Rational {
        &self.m[i][0] * &p.x + &self.m[i][1] * &p.y + &self.m[i][2]
    }

    /// Exact image of `p`; fails on the vanishing line.
    pub fn eval(&self, p: &Point2) -> Result<Point2, ProjectiveError> {
        let den = self.row_dot(2, p);
        if den.is_zero() {
            return Err(ProjectiveError::VanishingDenominator);
        }
        Ok(Point2::new(
            self.row_dot(0, p) / &den,
            self.row_dot(1, p) / &den,
        ))
    }

    /// Sign of the denominator `row3·x̂` at `p`: `+1` on `H⁺`, `−1` on `H⁻`,
    /// `0` on the vanishing line.
    pub fn denominator_sign(&self, p: &Point2) -> i32 {
        self.row_dot(2, p).signum()
    }

    /// The domain of the induced map: everywhere for affine transforms, two
    /// open halfplanes otherwise.
    pub fn domain_halfplanes(&self) -> DomainDescription {
        let v1 = &self.m[2][0];
        let v2 = &self.m[2][1];
        if v1.is_zero() && v2.is_zero() {
            return DomainDescription::AffineEverywhere;
        }
        // Boundary v₁x + v₂y = −α in canonical form; recover which side of
        // the canonical line the positive denominator lives on from the sign
        // the canonicalization multiplied through.
        let alpha = &self.m[2][2];
        let boundary = Line::from_coefficients(v1, v2, &-alpha.clone())
            .expect("(v1, v2) != (0, 0) checked above");
        let positive_sign = if !v1.is_zero() {
            boundary.a().signum() * v1.signum()
        } else {
            boundary.b().signum() * v2.signum()
        };
        DomainDescription::Halfplanes(HalfplanePair {
            boundary,
            positive_sign,
        })
    }

    /// True when the denominator is constant: `row3 = (0, 0, α)`.
    pub fn is_affine(&self) -> bool {
        self.m[2][0].is_zero() && self.m[2][1].is_zero()
    }

    /// Matrix product: the transform `x ↦ self(other(x))` wherever both
    /// denominators are nonzero. Fails if the product's third row vanishes
    /// (possible only when one factor is singular).
    pub fn compose(
        &self,
        other: &ProjectiveTransform,
    ) -> Result<ProjectiveTransform, ProjectiveError> {
        let cell = |i: usize, j: usize| {
            let mut acc = Rational::zero();
            for (k, entry) in other.m.iter().enumerate() {
                acc = acc + &self.m[i][k] * &entry[j];
            }
            acc
        };
        let prod: Matrix = [0, 1, 2].map(|i| [0, 1, 2].map(|j| cell(i, j)));
        ProjectiveTransform::new(prod)
    }

    pub fn det(&self) -> Rational {
        let m = &self.m;
        &m[0][0] * &(&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * &(&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * &(&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Projective inverse (the adjugate, canonicalized). Requires
    /// `det(M) ≠ 0`.
    pub fn inverse(&self) -> Result<ProjectiveTransform, ProjectiveError> {
        if self.det().is_zero() {
            return Err(ProjectiveError::SingularMatrix);
        }
        let m = &self.m;
        let cof = |r1: usize, r2: usize, c1: usize, c2: usize| {
            &m[r1][c1] * &m[r2][c2] - &m[r1][c2] * &m[r2][c1]
        };
        let adj: Matrix = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        ProjectiveTransform::new(adj)
    }
}

fn any_three_collinear(pts: &[Point2; 4]) -> bool {
    for i in 0..4 {
        for j in (i + 1)..4 {
            for k in (j + 1)..4 {
                if orient(&pts[i], &pts[j], &pts[k]) == 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// Reduced row echelon form over the rationals; returns the pivot columns.
fn rref(rows: &mut [[Rational; 9]]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..9 {
        let Some(pivot_row) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let inv = rows[r][c].recip();
        for e in rows[r].iter_mut() {
            *e = &*e * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (e, p) in row.iter_mut().zip(&pivot) {
                    *e = &*e - &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// The unique projective transform (up to gauge) sending `src[i] ↦ dst[i]`.
///
/// Both quadruples must be in general position (no three collinear). Each
/// correspondence contributes two homogeneous linear equations in the nine
/// matrix entries; under the preconditions the system has rank 8, and the
/// one-dimensional kernel is the matrix, recovered exactly.
pub fn fit_homography(
    src: &[Point2; 4],
    dst: &[Point2; 4],
) -> Result<ProjectiveTransform, ProjectiveError> {
    if any_three_collinear(src) || any_three_collinear(dst) {
        return Err(ProjectiveError::DegenerateCorrespondence);
    }
    let mut rows: Vec<[Rational; 9]> = Vec::with_capacity(8);
    for (s, d) in src.iter().zip(dst.iter()) {
        let (x, y) = (&s.x, &s.y);
        let (u, v) = (&d.x, &d.y);
        let one = Rational::one();
        let zero = Rational::zero();
        rows.push([
            x.clone(),
            y.clone(),
            one.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            -(u * x),
            -(u * y),
            -u.clone(),
        ]);
        rows.push([
            zero.clone(),
            zero.clone(),
            zero,
            x.clone(),
            y.clone(),
            one,
            -(v * x),
            -(v * y),
            -v.clone(),
        ]);
    }
    let pivots = rref(&mut rows);
    if pivots.len() != 8 {
        return Err(ProjectiveError::NoSolution);
    }
    let free = (0..9).find(|c| !pivots.contains(c)).expect("rank 8 of 9");
    let mut kernel = [
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
    ];
    kernel[free] = Rational::one();
    for (row, &c) in pivots.iter().enumerate() {
        kernel[c] = -rows[row][free].clone();
    }
    let m: Matrix = [
        [kernel[0].clone(), kernel[1].clone(), kernel[2].clone()],
        [kernel[3].clone(), kernel[4].clone(), kernel[5].clone()],
        [kernel[6].clone(), kernel[7].clone(), kernel[8].clone()],
    ];
    let p = ProjectiveTransform::new(m).map_err(|_| ProjectiveError::NoSolution)?;
    for (s, d) in src.iter().zip(dst.iter()) {
        if p.eval(s).ok().as_ref() != Some(d) {
            return Err(ProjectiveError::NoSolution);
        }
    }
    Ok(p)
}

/// Samples the convex hull of `polygon` with an exact grid (vertices, all
/// pairwise midpoints, and the `grid_n × grid_n` bounding-box grid filtered
/// to the hull), maps every sample through `p`, and verifies that the
/// restriction is a monotone isomorphism.
///
/// The hull must lie strictly inside one open halfplane of `p` (trivially
/// true for affine `p`), which also guarantees every sample is evaluable.
pub fn restrict_and_verify(
    p: &ProjectiveTransform,
    polygon: &[Point2],
    grid_n: usize,
) -> Result<Verdict, ProjectiveError> {
    if let DomainDescription::Halfplanes(h) = p.domain_halfplanes() {
        let sides: Vec<i32> = polygon.iter().map(|q| h.side(q)).collect();
        if sides.contains(&0) || !sides.windows(2).all(|w| w[0] == w[1]) {
            return Err(ProjectiveError::PolygonCrossesBoundary);
        }
    }
    let samples = convex_polygon_grid(polygon, grid_n);
    let values = samples
        .iter()
        .map(|q| p.eval(q).map(Target::Planar))
        .collect::<Result<Vec<_>, _>>()?;
    let config = FiniteConfig::euclidean(samples).expect("samples deduplicated");
    let map = FiniteMap::new(config, values).expect("one value per sample");
    if let v @ Verdict::Violation(_) = check_monotone(&map) {
        return Ok(v);
    }
    if let v @ Verdict::Violation(_) = check_injective(&map) {
        return Ok(v);
    }
    Ok(check_isomorphism(&map).expect("injectivity verified above"))
}
