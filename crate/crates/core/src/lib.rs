//! Exact-arithmetic toolkit for betweenness-preserving maps on planar point
//! sets: verification, projective fitting, closure growth, classification of
//! image configurations, and order-theoretic embeddings.

pub mod closure;
pub mod constructions;
pub mod embeddings;
pub mod geometry;
pub mod monotone;
pub mod orders;
pub mod projective;
pub mod rational;
pub mod report;
pub mod sampling;
pub mod svg;

pub use closure::{
    canonical_base, closure_grow, covering_radius, extend_values, is_valid_base, rigidity_check,
    rigidity_check_with_budget, side_covering_radius, verify_against_homography, ClosureError,
    ClosureState, Provenance, RigidityOutcome, ValuedClosure, DEFAULT_GROWTH_BUDGET,
    DENSITY_BUDGET,
};

pub use constructions::{
    classify_image, classify_points, collapse_to_edge, fan_collapse, five_point_map,
    verify_trichotomy, ConstructionError, TrichotomyClass,
};
pub use embeddings::{
    betweenness_csp, builtin_total_map, cantor_removed_intervals, cross_family_triples,
    eval_total_map, lex_identity, parallel_lines_map, parallel_value_intervals, project_to_plane,
    projection_embed, sample_concurrent_segments, solve_betweenness, stress_sample,
    stress_total_map, three_lines_lexsum, CspOutcome, EmbedError, LineFamily, PlanarProjection,
    ProjectionEmbedding, SegmentSample, StressReport, ThreeLinesConfig, TotalMapSpec,
};
pub use geometry::{
    between, convex_hull, convex_independent, crossing_diagonal, group_by_lines,
    in_closed_triangle, in_convex_hull, in_triangle_interior, line_through, orient, point,
    segment_intersect, strictly_between, GeometryError, Line, Point2, Segment, SegmentIntersection,
};
pub use monotone::{
    check_affine_barycentric, check_injective, check_isomorphism, check_monotone,
    check_monotone_exhaustive, collinear_triples, verify_witness, FiniteConfig, FiniteMap,
    MapError, SourceStructure, Target, Verdict, Witness,
};
pub use orders::{compare, linear_between, rescale, squash, OrderError, OrderValue};
pub use projective::{
    fit_homography, restrict_and_verify, DomainDescription, HalfplanePair, ProjectiveError,
    ProjectiveTransform, TransformParts,
};
pub use rational::{rat, ParseRationalError, Rational};
pub use report::{ReportVerdict, RunReport};
pub use sampling::{
    box_grid, convex_polygon_grid, dedup_points, pairwise_midpoints, random_point, random_rational,
    seeded_rng, unit_square_grid,
};
pub use svg::{decimal12, render_svg, Scene, SvgError};
