//! Deterministic exact point sampling for the verification drivers.
//!
//! Everything here returns rational points in a reproducible order: grids
//! are enumerated row-major and merged samples are sorted and deduplicated,
//! so a run is a pure function of its inputs (and of the explicit RNG seed
//! for the randomized helpers).

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{in_convex_hull, Point2};
use crate::rational::Rational;

/// `n × n` grid on the closed box `[lo.x, hi.x] × [lo.y, hi.y]`, row-major.
/// `n >= 2`; endpoints included.
pub fn box_grid(lo: &Point2, hi: &Point2, n: usize) -> Vec<Point2> {
    assert!(n >= 2, "grid needs at least 2 points per side");
    let steps = Rational::from_int(n as i64 - 1);
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let tx = Rational::from_int(i as i64) / &steps;
        let x = &lo.x + &((&hi.x - &lo.x) * &tx);
        for j in 0..n {
            let ty = Rational::from_int(j as i64) / &steps;
            let y = &lo.y + &((&hi.y - &lo.y) * &ty);
            out.push(Point2::new(x.clone(), y.clone()));
        }
    }
    out
}

/// `n × n` grid on the closed unit square.
pub fn unit_square_grid(n: usize) -> Vec<Point2> {
    box_grid(&Point2::from_ints(0, 0), &Point2::from_ints(1, 1), n)
}

/// All pairwise segment midpoints of the given points.
pub fn pairwise_midpoints(points: &[Point2]) -> Vec<Point2> {
    let half = Rational::new(1, 2);
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            out.push(points[i].lerp(&points[j], &half));
        }
    }
    out
}

/// Sorts and deduplicates a point list (exact equality).
pub fn dedup_points(mut points: Vec<Point2>) -> Vec<Point2> {
    points.sort();
    points.dedup();
    points
}

/// Exact sample of the convex hull of `vertices`: the vertices themselves,
/// all their pairwise midpoints, and the `n × n` bounding-box grid filtered
/// to the hull. Sorted and deduplicated.
pub fn convex_polygon_grid(vertices: &[Point2], n: usize) -> Vec<Point2> {
    let mut samples: Vec<Point2> = vertices.to_vec();
    samples.extend(pairwise_midpoints(vertices));
    if n >= 2 && !vertices.is_empty() {
        let lo = Point2::new(
            vertices.iter().map(|p| p.x.clone()).min().unwrap(),
            vertices.iter().map(|p| p.y.clone()).min().unwrap(),
        );
        let hi = Point2::new(
            vertices.iter().map(|p| p.x.clone()).max().unwrap(),
            vertices.iter().map(|p| p.y.clone()).max().unwrap(),
        );
        samples.extend(
            box_grid(&lo, &hi, n)
                .into_iter()
                .filter(|p| in_convex_hull(p, vertices)),
        );
    }
    dedup_points(samples)
}

/// Deterministic RNG for a given seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational with numerator in `[-span·den, span·den]` and denominator
/// `den`.
pub fn random_rational(rng: &mut ChaCha8Rng, span: i64, den: i64) -> Rational {
    assert!(den > 0 && span >= 0);
    let bound = span * den;
    Rational::new(rng.random_range(-bound..=bound), den)
}

/// Random point with both coordinates drawn by [`random_rational`].
pub fn random_point(rng: &mut ChaCha8Rng, span: i64, den: i64) -> Point2 {
    Point2::new(
        random_rational(rng, span, den),
        random_rational(rng, span, den),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn grid_contains_corners_and_is_exact() {
        let g = unit_square_grid(5);
        assert_eq!(g.len(), 25);
        assert!(g.contains(&Point2::from_ints(0, 0)));
        assert!(g.contains(&Point2::from_ints(1, 1)));
        assert!(g.contains(&Point2::new(rat(1, 4), rat(3, 4))));
    }

    #[test]
    fn polygon_grid_stays_in_hull() {
        let square = vec![
            Point2::from_ints(0, 0),
            Point2::from_ints(2, 0),
            Point2::from_ints(2, 2),
            Point2::from_ints(0, 2),
        ];
        let samples = convex_polygon_grid(&square, 5);
        assert!(samples.iter().all(|p| in_convex_hull(p, &square)));
        // Vertices and the center midpoint are present.
        assert!(samples.contains(&Point2::from_ints(1, 1)));
        assert!(samples.contains(&Point2::from_ints(0, 0)));
        // Sorted and unique.
        let again = dedup_points(samples.clone());
        assert_eq!(again, samples);
    }

    #[test]
    fn triangle_grid_drops_outside_corner() {
        let tri = vec![
            Point2::from_ints(0, 0),
            Point2::from_ints(2, 0),
            Point2::from_ints(0, 2),
        ];
        let samples = convex_polygon_grid(&tri, 3);
        assert!(!samples.contains(&Point2::from_ints(2, 2)));
        assert!(samples.contains(&Point2::from_ints(1, 1)));
    }

    #[test]
    fn seeded_rng_reproduces() {
        let mut a = seeded_rng(7);
        let mut b = seeded_rng(7);
        for _ in 0..10 {
            assert_eq!(random_point(&mut a, 4, 8), random_point(&mut b, 4, 8));
        }
    }
}
