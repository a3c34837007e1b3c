//! `btw` — construct, verify, fit, and classify betweenness-preserving maps.
//!
//! Every invocation prints exactly one JSON report on stdout and exits 0
//! when the requested property holds, 1 on a violation or an unsatisfiable
//! instance, and 2 on usage or input errors. Structured I/O is JSON with
//! exact rationals ("p/q" strings); nothing is ever rounded except the
//! coordinate attributes of rendered SVG files. Reports for identical
//! inputs are byte-identical unless `--timings` is passed.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use btw_core::{
    betweenness_csp, builtin_total_map, check_injective, check_monotone, classify_image,
    collinear_triples, covering_radius, dedup_points, eval_total_map, extend_values,
    fit_homography, parallel_lines_map, projection_embed, render_svg, sample_concurrent_segments,
    seeded_rng, stress_sample, stress_total_map, three_lines_lexsum, verify_against_homography,
    ClosureState, CspOutcome, FiniteConfig, FiniteMap, Point2, ProjectiveTransform, Rational,
    ReportVerdict, RigidityOutcome, RunReport, Scene, Segment, SourceStructure, Target,
    ThreeLinesConfig, TotalMapSpec, TrichotomyClass, ValuedClosure, Witness, DEFAULT_GROWTH_BUDGET,
};

const SCHEMA_MAP: &str = r#"{"structure":"euclidean"|"discrete","pairs":[[["x","y"],target],...]} — rationals are "p/q" strings; each target is a point or an order value"#;
const SCHEMA_POINTS: &str =
    r#"[["x","y"],...] or any object carrying a "points" field of that shape"#;
const SCHEMA_FIT: &str = r#"{"source":[["x","y"],...4 points...],"target":[...4 points...]} with no three points collinear on either side"#;
const SCHEMA_TRANSFORM: &str = r#"{"m":[["a","b","c"],["d","e","f"],["g","h","i"]]} — a 3x3 rational matrix (fit reports qualify)"#;
const SCHEMA_FAMILY: &str = r#"{"vertical":["a","b","c"],"slanted":[["a","b","c"],["a","b","c"]]} — lines as coefficients of ax+by=c, first vertical, the others non-vertical and non-parallel"#;
const SCHEMA_SCENE: &str = r#"{"points":[["x","y"],...],"highlights":[...],"segments":[{"p":["x","y"],"q":["x","y"]},...],"lines":[["a","b","c"],...]}"#;
const SCHEMA_POINT_ARG: &str = r#"a rational point "x,y", e.g. --at 1/2,3"#;
const SCHEMA_QUAD_ARG: &str = r#"four semicolon-separated rational points "x,y;x,y;x,y;x,y": a non-degenerate triangle followed by a strictly interior point"#;
const SCHEMA_BUILTIN: &str = "one of: collapse_to_edge, fan_collapse, five_point_map, parallel_lines_map, lex_identity, three_lines_lexsum";
const SCHEMA_STRESS_MAP: &str = r#"a builtin id (see `construct`), or a .json file holding either {"m":[...]} or a tagged map spec {"map":"...", ...}"#;

#[derive(Parser)]
#[command(
    name = "btw",
    version,
    about = "Exact verification, fitting, and classification of betweenness-preserving maps"
)]
struct Cli {
    /// Render the run's configuration to an SVG file.
    #[arg(long, global = true, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Add the elapsed-milliseconds metric (makes reports non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    /// Seed for the deterministic generator behind sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run exhaustive checks past the point-count safety cap.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively verify that a finite map preserves betweenness.
    Check {
        /// Map file (see the schema in error reports).
        map: PathBuf,
        /// Also require injectivity.
        #[arg(long)]
        injective: bool,
    },
    /// Fit the projective transform through four point correspondences.
    Fit {
        /// File with "source" and "target" quadruples.
        correspondences: PathBuf,
    },
    /// Apply a projective transform to a list of points.
    Eval {
        /// Transform file {"m": [...]}.
        transform: PathBuf,
        /// Points file.
        points: PathBuf,
    },
    /// Grow the segment-intersection closure of a quadruple and replay it
    /// through the fitted transform, demanding exact agreement.
    Closure {
        /// Base quadruple "x,y;x,y;x,y;x,y" (triangle + interior point).
        #[arg(long)]
        base: String,
        /// Image quadruple in the same format.
        #[arg(long)]
        image: String,
        /// Growth generations.
        #[arg(long, default_value_t = 2)]
        gens: usize,
        /// Covering-radius sample grid resolution.
        #[arg(long, default_value_t = 17)]
        grid: usize,
        /// New points per generation.
        #[arg(long, default_value_t = DEFAULT_GROWTH_BUDGET)]
        budget: usize,
    },
    /// Classify the planar image of a map: line-plus-point, interior-bearing,
    /// or the exact five-point configuration.
    Classify {
        /// Map file.
        #[arg(long)]
        map: PathBuf,
    },
    /// Evaluate a named builtin construction at one point.
    Construct {
        /// Builtin id, e.g. five_point_map.
        name: String,
        /// Point to evaluate at, "x,y".
        #[arg(long)]
        at: String,
    },
    /// Embed a planar point set into a linear order, or solve the
    /// betweenness constraints directly.
    Embed {
        #[arg(long, value_enum)]
        method: EmbedMethod,
        /// Points file (omit with --sample-segments).
        #[arg(long)]
        points: Option<PathBuf>,
        /// Point-count cap for the constraint solver.
        #[arg(long, default_value_t = 64)]
        cap: usize,
        /// Three-line family file for --method lexsum (defaults to the
        /// builtin arrangement).
        #[arg(long)]
        family: Option<PathBuf>,
        /// Sample a three-concurrent-segment configuration (uses --seed)
        /// instead of reading points.
        #[arg(long)]
        sample_segments: bool,
    },
    /// Check a builtin or file-specified total map on an adversarial sample
    /// of its domain.
    Stress {
        /// Builtin id or a .json transform/map-spec file.
        #[arg(long)]
        map: String,
        /// Sample grid resolution.
        #[arg(long, default_value_t = 9)]
        grid: usize,
        /// Also require injectivity.
        #[arg(long)]
        injective: bool,
    },
    /// Render a scene file to SVG.
    Svg {
        /// Scene file.
        scene: PathBuf,
        /// Output path (defaults to the global --svg path).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Fit { .. } => "fit",
            Command::Eval { .. } => "eval",
            Command::Closure { .. } => "closure",
            Command::Classify { .. } => "classify",
            Command::Construct { .. } => "construct",
            Command::Embed { .. } => "embed",
            Command::Stress { .. } => "stress",
            Command::Svg { .. } => "svg",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmbedMethod {
    /// Injective monotone functional x + t·y.
    Projection,
    /// Backtracking search over the collinearity constraints.
    Csp,
    /// Horizontal-line family into a lexicographic sum of intervals.
    Parallel,
    /// Three-line arrangement into (R·2) + R + (R·2).
    Lexsum,
}

/// A run that cannot produce a verdict: bad usage or unreadable input.
struct Failure {
    message: String,
    schema: Option<&'static str>,
}

impl Failure {
    fn new(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            schema: None,
        }
    }

    fn schema(message: impl Into<String>, schema: &'static str) -> Self {
        Failure {
            message: message.into(),
            schema: Some(schema),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let name = cli.command.name();
    let (mut report, scene) = match dispatch(&cli) {
        Ok(pair) => pair,
        Err(f) => {
            let mut r = RunReport::new(name)
                .verdict(ReportVerdict::Error)
                .field("error", &f.message);
            if let Some(s) = f.schema {
                r = r.field("schema", s);
            }
            (r, Scene::default())
        }
    };
    if report.verdict != ReportVerdict::Error {
        if let Some(path) = &cli.svg {
            if let Err(f) = write_svg(&scene, path) {
                report = RunReport::new(name)
                    .verdict(ReportVerdict::Error)
                    .field("error", &f.message);
            }
        }
    }
    if cli.timings {
        report = report.metric("elapsed", started.elapsed().as_millis() as u64);
    }
    // Ignore a closed pipe on the report write; the exit code still stands.
    let _ = writeln!(io::stdout(), "{}", report.to_json());
    ExitCode::from(report.exit_code())
}

fn dispatch(cli: &Cli) -> Result<(RunReport, Scene), Failure> {
    match &cli.command {
        Command::Check { map, injective } => cmd_check(map, *injective, cli.force),
        Command::Fit { correspondences } => cmd_fit(correspondences),
        Command::Eval { transform, points } => cmd_eval(transform, points),
        Command::Closure {
            base,
            image,
            gens,
            grid,
            budget,
        } => cmd_closure(base, image, *gens, *grid, *budget),
        Command::Classify { map } => cmd_classify(map),
        Command::Construct { name, at } => cmd_construct(name, at),
        Command::Embed {
            method,
            points,
            cap,
            family,
            sample_segments,
        } => cmd_embed(
            *method,
            points.as_deref(),
            *cap,
            family.as_deref(),
            *sample_segments,
            cli.seed,
        ),
        Command::Stress {
            map,
            grid,
            injective,
        } => cmd_stress(map, *grid, *injective, cli.force),
        Command::Svg { scene, out } => cmd_svg(scene, out.as_deref(), cli.svg.as_deref()),
    }
}

// ---------------------------------------------------------------------------
// Subcommands.

fn cmd_check(path: &Path, injective: bool, force: bool) -> Result<(RunReport, Scene), Failure> {
    let map: FiniteMap = read_json(path, SCHEMA_MAP)?;
    let n = map.len();
    let cap = triples_cap();
    let euclidean = map.domain().structure() == SourceStructure::Euclidean;
    if euclidean && n > cap && !force {
        return Err(Failure::new(format!(
            "{n} points exceed the exhaustive-check cap of {cap}; pass --force or raise BTW_MAX_TRIPLES"
        )));
    }
    let triples = if euclidean {
        collinear_triples(map.domain()).len()
    } else {
        0
    };
    let mut verdict = check_monotone(&map);
    if verdict.is_ok() && injective {
        verdict = check_injective(&map);
    }
    let mut report = RunReport::new("check")
        .metric("points", n as u64)
        .metric("triples_checked", triples as u64);
    let mut scene = Scene {
        points: map.domain().points().to_vec(),
        ..Scene::default()
    };
    if let Some(w) = verdict.witness() {
        scene.highlights = witness_highlights(map.domain().points(), w);
        report = report.witness(*w);
    }
    Ok((report, scene))
}

#[derive(Deserialize)]
struct Correspondences {
    source: Vec<Point2>,
    target: Vec<Point2>,
}

fn cmd_fit(path: &Path) -> Result<(RunReport, Scene), Failure> {
    let c: Correspondences = read_json(path, SCHEMA_FIT)?;
    let src = quad(c.source, "source")?;
    let dst = quad(c.target, "target")?;
    let t = fit_homography(&src, &dst).map_err(|e| Failure::schema(e.to_string(), SCHEMA_FIT))?;
    let matrix = serde_json::to_value(&t).expect("transform serializes")["m"].clone();
    let report = RunReport::new("fit")
        .metric("points", 8u64)
        .field("m", matrix);
    let scene = Scene {
        points: src.to_vec(),
        highlights: dst.to_vec(),
        ..Scene::default()
    };
    Ok((report, scene))
}

fn cmd_eval(transform: &Path, points: &Path) -> Result<(RunReport, Scene), Failure> {
    let t: ProjectiveTransform = read_json(transform, SCHEMA_TRANSFORM)?;
    let pts = read_points(points)?;
    let mut images = Vec::with_capacity(pts.len());
    for (i, p) in pts.iter().enumerate() {
        images.push(t.eval(p).map_err(|e| {
            Failure::new(format!("point {i} is outside the transform's domain: {e}"))
        })?);
    }
    let report = RunReport::new("eval")
        .metric("points", pts.len() as u64)
        .field("points", &images);
    let scene = Scene {
        points: pts,
        highlights: images,
        ..Scene::default()
    };
    Ok((report, scene))
}

fn cmd_closure(
    base: &str,
    image: &str,
    gens: usize,
    grid: usize,
    budget: usize,
) -> Result<(RunReport, Scene), Failure> {
    let base = parse_quad_arg(base, "--base")?;
    let image = parse_quad_arg(image, "--image")?;
    let mut state = ClosureState::new(base.clone())
        .map_err(|e| Failure::schema(format!("--base: {e}"), SCHEMA_QUAD_ARG))?;
    let seed = ValuedClosure::seed(state.clone(), image)
        .map_err(|e| Failure::schema(format!("--image: {e}"), SCHEMA_QUAD_ARG))?;
    let h = fit_homography(state.base(), seed.image_base())
        .map_err(|e| Failure::schema(e.to_string(), SCHEMA_QUAD_ARG))?;
    let mut radii = vec![covering_radius(&state, grid)];
    for _ in 0..gens {
        state.grow(budget);
        radii.push(covering_radius(&state, grid));
    }
    let valued = extend_values(&seed, &state).map_err(|e| Failure::new(e.to_string()))?;
    let outcome =
        verify_against_homography(&valued, &h).map_err(|e| Failure::new(e.to_string()))?;
    let final_radius = radii.last().expect("generation 0 present").to_string();
    let mut report = RunReport::new("closure")
        .metric("points", state.len() as u64)
        .metric("generations", gens as u64)
        .metric("radius", final_radius)
        .field("points", state.points())
        .field("radius_by_generation", &radii);
    report = match outcome {
        RigidityOutcome::Ok { .. } => report.field("rigidity", "ok"),
        RigidityOutcome::Mismatch {
            point,
            extended,
            homography,
        } => report
            .verdict(ReportVerdict::Violation)
            .field("rigidity", "mismatch")
            .field(
                "mismatch",
                json!({"point": point, "extended": extended, "homography": homography}),
            ),
    };
    let [a, b, c, d] = &base;
    let scene = Scene {
        points: state.points().to_vec(),
        highlights: vec![a.clone(), b.clone(), c.clone(), d.clone()],
        segments: vec![
            Segment::new(a.clone(), b.clone()),
            Segment::new(b.clone(), c.clone()),
            Segment::new(c.clone(), a.clone()),
        ],
        ..Scene::default()
    };
    Ok((report, scene))
}

fn cmd_classify(path: &Path) -> Result<(RunReport, Scene), Failure> {
    let map: FiniteMap = read_json(path, SCHEMA_MAP)?;
    let image = map
        .planar_image()
        .map(dedup_points)
        .map_err(|e| Failure::schema(e.to_string(), SCHEMA_MAP))?;
    let class = classify_image(&map).map_err(|e| Failure::new(e.to_string()))?;
    let mut report = RunReport::new("classify")
        .metric("points", image.len() as u64)
        .field("classification", &class);
    let mut scene = Scene {
        points: image,
        ..Scene::default()
    };
    match &class {
        TrichotomyClass::LineUnionPoint { line, q } => {
            scene.lines.push(line.clone());
            scene.highlights.extend(q.clone());
        }
        TrichotomyClass::InteriorCertificate { a, b, c, d } => {
            scene.highlights = vec![a.clone(), b.clone(), c.clone(), d.clone()];
        }
        TrichotomyClass::FivePointConfig { a, b, c, d, e } => {
            scene.highlights = vec![e.clone()];
            scene.segments = vec![
                Segment::new(a.clone(), c.clone()),
                Segment::new(b.clone(), d.clone()),
            ];
        }
        TrichotomyClass::Violation { .. } => {
            report = report.verdict(ReportVerdict::Violation);
        }
    }
    Ok((report, scene))
}

fn cmd_construct(name: &str, at: &str) -> Result<(RunReport, Scene), Failure> {
    let spec =
        builtin_total_map(name).map_err(|e| Failure::schema(e.to_string(), SCHEMA_BUILTIN))?;
    let pt = parse_point_arg(at, "--at")?;
    let value = eval_total_map(&spec, &pt).map_err(|e| Failure::new(e.to_string()))?;
    let report = RunReport::new("construct")
        .metric("points", 1u64)
        .field("value", &value);
    let highlights = match &value {
        Target::Planar(q) => vec![q.clone()],
        Target::Ordered(_) => Vec::new(),
    };
    let scene = Scene {
        points: vec![pt],
        highlights,
        ..Scene::default()
    };
    Ok((report, scene))
}

fn cmd_embed(
    method: EmbedMethod,
    points: Option<&Path>,
    cap: usize,
    family: Option<&Path>,
    sample_segments: bool,
    seed: u64,
) -> Result<(RunReport, Scene), Failure> {
    if sample_segments && method != EmbedMethod::Csp {
        return Err(Failure::new(
            "--sample-segments only applies to --method csp",
        ));
    }
    let input = |points: Option<&Path>| -> Result<Vec<Point2>, Failure> {
        let path = points.ok_or_else(|| Failure::schema("--points is required", SCHEMA_POINTS))?;
        read_points(path)
    };
    match method {
        EmbedMethod::Projection => {
            let pts = input(points)?;
            let emb = projection_embed(&pts).map_err(|e| Failure::new(e.to_string()))?;
            let report = RunReport::new("embed")
                .metric("points", pts.len() as u64)
                .field("method", "projection")
                .field("u", &emb.u)
                .field("v", &emb.v)
                .field("values", &emb.values);
            let scene = Scene {
                points: pts,
                ..Scene::default()
            };
            Ok((report, scene))
        }
        EmbedMethod::Csp => {
            let (config, mut report, mut scene) = if sample_segments {
                let mut rng = seeded_rng(seed);
                let sample = sample_concurrent_segments(&mut rng, 5, 30, 10);
                let scene = Scene {
                    points: sample.config.points().to_vec(),
                    segments: sample
                        .family
                        .lines()
                        .iter()
                        .filter_map(|(_, clip)| clip.clone())
                        .collect(),
                    ..Scene::default()
                };
                let report = RunReport::new("embed")
                    .metric("cross_triples", sample.cross_triples.len() as u64)
                    .metric("points", sample.config.len() as u64)
                    .field("method", "csp");
                (sample.config, report, scene)
            } else {
                let pts = input(points)?;
                let config = FiniteConfig::euclidean(pts.clone())
                    .map_err(|e| Failure::schema(e.to_string(), SCHEMA_POINTS))?;
                let report = RunReport::new("embed")
                    .metric("points", pts.len() as u64)
                    .field("method", "csp");
                let scene = Scene {
                    points: pts,
                    ..Scene::default()
                };
                (config, report, scene)
            };
            report = report.metric("triples_checked", collinear_triples(&config).len() as u64);
            match betweenness_csp(&config, cap)
                .map_err(|e| Failure::new(format!("{e}; raise --cap to admit larger instances")))?
            {
                CspOutcome::Sat { values } => Ok((report.field("assignment", &values), scene)),
                CspOutcome::Unsat { core } => {
                    scene.highlights = core
                        .iter()
                        .flat_map(|&(a, x, b)| [a, x, b])
                        .filter_map(|i| config.points().get(i).cloned())
                        .collect();
                    Ok((
                        report.verdict(ReportVerdict::Unsat).field("core", &core),
                        scene,
                    ))
                }
            }
        }
        EmbedMethod::Parallel => {
            let pts = input(points)?;
            let heights: Vec<Rational> = pts
                .iter()
                .map(|p| p.y.clone())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let values = pts
                .iter()
                .map(|p| parallel_lines_map(&heights, p))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::new(e.to_string()))?;
            let report = RunReport::new("embed")
                .metric("points", pts.len() as u64)
                .field("heights", &heights)
                .field("method", "parallel")
                .field("values", &values);
            let scene = Scene {
                points: pts,
                ..Scene::default()
            };
            Ok((report, scene))
        }
        EmbedMethod::Lexsum => {
            let cfg = match family {
                Some(path) => read_json::<ThreeLinesConfig>(path, SCHEMA_FAMILY)?,
                None => match builtin_total_map("three_lines_lexsum") {
                    Ok(TotalMapSpec::ThreeLinesLexsum(cfg)) => cfg,
                    _ => unreachable!("registry entry is a three-line arrangement"),
                },
            };
            let pts = input(points)?;
            let mut values = Vec::with_capacity(pts.len());
            for (i, p) in pts.iter().enumerate() {
                values.push(three_lines_lexsum(&cfg, p).map_err(|e| {
                    Failure::new(format!("point {i} is not on the arrangement: {e}"))
                })?);
            }
            let report = RunReport::new("embed")
                .metric("points", pts.len() as u64)
                .field("family", &cfg)
                .field("method", "lexsum")
                .field("values", &values);
            let scene = Scene {
                points: pts,
                lines: cfg.lines().into_iter().cloned().collect(),
                ..Scene::default()
            };
            Ok((report, scene))
        }
    }
}

fn cmd_stress(
    map: &str,
    grid: usize,
    injective: bool,
    force: bool,
) -> Result<(RunReport, Scene), Failure> {
    let spec = if map.ends_with(".json") {
        let v: Value = read_json(Path::new(map), SCHEMA_STRESS_MAP)?;
        if let Ok(spec) = serde_json::from_value::<TotalMapSpec>(v.clone()) {
            spec
        } else if let Ok(t) = serde_json::from_value::<ProjectiveTransform>(v) {
            TotalMapSpec::Homography(t)
        } else {
            return Err(Failure::schema(
                format!("{map} holds neither a transform nor a map spec"),
                SCHEMA_STRESS_MAP,
            ));
        }
    } else {
        builtin_total_map(map).map_err(|e| Failure::schema(e.to_string(), SCHEMA_STRESS_MAP))?
    };
    let sample = stress_sample(&spec, grid).map_err(|e| Failure::new(e.to_string()))?;
    let cap = triples_cap();
    if sample.len() > cap && !force {
        return Err(Failure::new(format!(
            "a grid-{grid} sample has {} points, over the cap of {cap}; pass --force or raise BTW_MAX_TRIPLES",
            sample.len()
        )));
    }
    let outcome =
        stress_total_map(&spec, grid, injective).map_err(|e| Failure::new(e.to_string()))?;
    let mut report = RunReport::new("stress")
        .metric("points", outcome.points as u64)
        .field("monotone", outcome.monotone);
    if let Some(inj) = &outcome.injective {
        report = report.field("injective", inj);
    }
    let mut scene = Scene {
        points: sample.clone(),
        ..Scene::default()
    };
    let first_witness = outcome
        .monotone
        .witness()
        .or_else(|| outcome.injective.as_ref().and_then(|v| v.witness()));
    if let Some(w) = first_witness {
        scene.highlights = witness_highlights(&sample, w);
        report = report.witness(*w);
    }
    Ok((report, scene))
}

fn cmd_svg(
    scene_path: &Path,
    out: Option<&Path>,
    global_svg: Option<&Path>,
) -> Result<(RunReport, Scene), Failure> {
    let scene: Scene = read_json(scene_path, SCHEMA_SCENE)?;
    let out = out
        .or(global_svg)
        .ok_or_else(|| Failure::new("no output path: pass --out (or --svg)"))?;
    write_svg(&scene, out)?;
    let report = RunReport::new("svg")
        .metric(
            "points",
            (scene.points.len() + scene.highlights.len()) as u64,
        )
        .field("out", out.display().to_string());
    Ok((report, scene))
}

// ---------------------------------------------------------------------------
// Shared plumbing.

/// Point-count guard for the cubic exhaustive passes; BTW_MAX_TRIPLES
/// overrides the default and --force bypasses the guard entirely.
fn triples_cap() -> usize {
    std::env::var("BTW_MAX_TRIPLES")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(3000)
}

fn read_json<T: DeserializeOwned>(path: &Path, schema: &'static str) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::schema(format!("{}: {e}", path.display()), schema))
}

/// Reads a point list: a bare array, or any report-shaped object whose
/// "points" field holds one (so emitted reports feed back in directly).
fn read_points(path: &Path) -> Result<Vec<Point2>, Failure> {
    let v: Value = read_json(path, SCHEMA_POINTS)?;
    let arr = match v {
        Value::Array(_) => v,
        Value::Object(mut m) => m.remove("points").unwrap_or(Value::Null),
        _ => Value::Null,
    };
    serde_json::from_value(arr)
        .map_err(|e| Failure::schema(format!("{}: {e}", path.display()), SCHEMA_POINTS))
}

fn parse_rational(s: &str, what: &str) -> Result<Rational, Failure> {
    s.trim()
        .parse()
        .map_err(|e| Failure::schema(format!("{what}: {e}"), SCHEMA_POINT_ARG))
}

fn parse_point_arg(s: &str, what: &str) -> Result<Point2, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Failure::schema(
            format!("{what}: expected \"x,y\", got {s:?}"),
            SCHEMA_POINT_ARG,
        ));
    }
    Ok(Point2::new(
        parse_rational(parts[0], what)?,
        parse_rational(parts[1], what)?,
    ))
}

fn parse_quad_arg(s: &str, what: &str) -> Result<[Point2; 4], Failure> {
    let pts = s
        .split(';')
        .map(|p| parse_point_arg(p, what))
        .collect::<Result<Vec<_>, _>>()?;
    pts.try_into().map_err(|v: Vec<Point2>| {
        Failure::schema(
            format!("{what}: expected 4 points, got {}", v.len()),
            SCHEMA_QUAD_ARG,
        )
    })
}

fn quad(pts: Vec<Point2>, what: &str) -> Result<[Point2; 4], Failure> {
    pts.try_into().map_err(|v: Vec<Point2>| {
        Failure::schema(
            format!("{what}: expected 4 points, got {}", v.len()),
            SCHEMA_FIT,
        )
    })
}

fn witness_highlights(points: &[Point2], w: &Witness) -> Vec<Point2> {
    let idx = match w {
        Witness::MonotonicityViolation { a, x, b }
        | Witness::ReverseViolation { a, x, b }
        | Witness::BarycentricViolation { a, x, b } => vec![*a, *x, *b],
        Witness::InjectivityCollision { i, j } => vec![*i, *j],
    };
    idx.into_iter()
        .filter_map(|i| points.get(i).cloned())
        .collect()
}

fn write_svg(scene: &Scene, path: &Path) -> Result<(), Failure> {
    let svg = render_svg(scene).map_err(|e| Failure::new(e.to_string()))?;
    fs::write(path, svg).map_err(|e| Failure::new(format!("cannot write {}: {e}", path.display())))
}
