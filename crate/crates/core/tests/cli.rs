//! End-to-end checks of the command-line binary: exit codes, report shapes,
//! report-to-report piping, the safety cap, and SVG output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn workdir(test: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("btw-cli-{}-{test}", std::process::id()));
    fs::create_dir_all(&dir).expect("create temp dir");
    dir
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).expect("write fixture");
    path
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_btw"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn btw")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not a report: {e}\n{}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

const OK_MAP: &str = r#"{"structure":"euclidean","pairs":[
  [["0","0"],["0","0"]],
  [["1","0"],["2","0"]],
  [["2","0"],["4","0"]]]}"#;

const BROKEN_MAP: &str = r#"{"structure":"euclidean","pairs":[
  [["0","0"],["0","0"]],
  [["1","0"],["5","5"]],
  [["2","0"],["1","0"]]]}"#;

#[test]
fn check_reports_ok_with_exit_zero() {
    let dir = workdir("check-ok");
    let map = write(&dir, "map.json", OK_MAP);
    let out = run(&["check", map.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["command"], "check");
    assert_eq!(r["verdict"], "ok");
    assert_eq!(r["metrics"]["points"], 3);
    assert_eq!(r["metrics"]["triples_checked"], 1);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn check_reports_monotonicity_witness_with_exit_one() {
    let dir = workdir("check-witness");
    let map = write(&dir, "map.json", BROKEN_MAP);
    let out = run(&["check", map.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["verdict"], "violation");
    let w = &r["witness"]["monotonicity_violation"];
    assert_eq!(w["a"], 0);
    assert_eq!(w["x"], 1);
    assert_eq!(w["b"], 2);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn check_injective_flag_reports_collisions() {
    let dir = workdir("check-collision");
    let map = write(
        &dir,
        "map.json",
        r#"{"structure":"discrete","pairs":[
          [["0","0"],["7","7"]],
          [["1","0"],["7","7"]]]}"#,
    );
    let out = run(&["check", map.to_str().unwrap(), "--injective"]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    let w = &r["witness"]["injectivity_collision"];
    assert_eq!(w["i"], 0);
    assert_eq!(w["j"], 1);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn missing_input_reports_error_with_exit_two() {
    let out = run(&["check", "/nonexistent/btw-map.json"]);
    assert_eq!(code(&out), 2);
    let r = report(&out);
    assert_eq!(r["verdict"], "error");
    assert!(r["error"].as_str().unwrap().contains("cannot read"));
}

#[test]
fn usage_errors_exit_two_and_help_exits_zero() {
    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty(), "usage errors report on stderr");
    let help = run(&["--help"]);
    assert_eq!(code(&help), 0);
    let eval_help = run(&["eval", "--help"]);
    assert_eq!(code(&eval_help), 0);
}

#[test]
fn fit_report_feeds_eval_directly() {
    let dir = workdir("fit-eval");
    // Correspondences of a pure translation by (1, 0).
    let corr = write(
        &dir,
        "corr.json",
        r#"{"source":[["0","0"],["1","0"],["0","1"],["1","1"]],
            "target":[["1","0"],["2","0"],["1","1"],["2","1"]]}"#,
    );
    let fit = run(&["fit", corr.to_str().unwrap()]);
    assert_eq!(code(&fit), 0);
    let r = report(&fit);
    assert_eq!(r["verdict"], "ok");
    assert!(r["m"].is_array(), "fit report embeds the fitted matrix");
    let transform = write(&dir, "fit.json", &String::from_utf8(fit.stdout).unwrap());

    let points = write(&dir, "pts.json", r#"[["0","0"],["5","7"]]"#);
    let eval = run(&[
        "eval",
        transform.to_str().unwrap(),
        points.to_str().unwrap(),
    ]);
    assert_eq!(code(&eval), 0);
    let r = report(&eval);
    assert_eq!(r["points"][0], serde_json::json!(["1", "0"]));
    assert_eq!(r["points"][1], serde_json::json!(["6", "7"]));

    // The eval report is itself a valid points file: apply the shift again.
    let echoed = write(&dir, "echo.json", &serde_json::to_string(&r).unwrap());
    let again = run(&[
        "eval",
        transform.to_str().unwrap(),
        echoed.to_str().unwrap(),
    ]);
    assert_eq!(code(&again), 0);
    let r = report(&again);
    assert_eq!(r["points"][0], serde_json::json!(["2", "0"]));
    assert_eq!(r["points"][1], serde_json::json!(["7", "7"]));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn degenerate_fit_reports_error() {
    let dir = workdir("fit-degenerate");
    let corr = write(
        &dir,
        "corr.json",
        r#"{"source":[["0","0"],["1","0"],["2","0"],["1","1"]],
            "target":[["0","0"],["1","0"],["2","0"],["1","1"]]}"#,
    );
    let out = run(&["fit", corr.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(report(&out)["verdict"], "error");
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn triples_cap_requires_force_to_exceed() {
    let dir = workdir("cap");
    let pairs: Vec<String> = (0..12)
        .map(|i| format!(r#"[["{i}","0"],["{i}","0"]]"#))
        .collect();
    let map = write(
        &dir,
        "map.json",
        &format!(
            r#"{{"structure":"euclidean","pairs":[{}]}}"#,
            pairs.join(",")
        ),
    );
    let refused = run_env(
        &["check", map.to_str().unwrap()],
        &[("BTW_MAX_TRIPLES", "10")],
    );
    assert_eq!(code(&refused), 2);
    let r = report(&refused);
    assert!(r["error"].as_str().unwrap().contains("--force"));

    let forced = run_env(
        &["check", map.to_str().unwrap(), "--force"],
        &[("BTW_MAX_TRIPLES", "10")],
    );
    assert_eq!(code(&forced), 0);
    assert_eq!(report(&forced)["verdict"], "ok");
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn svg_flag_writes_identical_files_across_runs() {
    let dir = workdir("svg");
    let map = write(&dir, "map.json", OK_MAP);
    let mut rendered = Vec::new();
    for rep in 0..2 {
        let svg = dir.join(format!("scene-{rep}.svg"));
        let out = run(&[
            "check",
            map.to_str().unwrap(),
            "--svg",
            svg.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        rendered.push(fs::read(&svg).expect("svg written"));
    }
    assert!(rendered[0].starts_with(b"<svg"));
    assert_eq!(rendered[0], rendered[1]);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn classify_names_the_image_class() {
    let dir = workdir("classify");
    let map = write(&dir, "map.json", OK_MAP);
    let out = run(&["classify", "--map", map.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["classification"]["class"], "line_union_point");

    // Four image points in convex position fit no certificate.
    let scatter = write(
        &dir,
        "scatter.json",
        r#"{"structure":"discrete","pairs":[
          [["0","0"],["0","0"]],
          [["1","0"],["4","0"]],
          [["2","0"],["0","3"]],
          [["3","0"],["5","4"]]]}"#,
    );
    let out = run(&["classify", "--map", scatter.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["verdict"], "violation");
    assert_eq!(r["classification"]["class"], "violation");
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn construct_evaluates_builtins_at_a_point() {
    let out = run(&["construct", "five_point_map", "--at", "1/4,3/4"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["value"], serde_json::json!(["0", "1"]));

    let unknown = run(&["construct", "no_such_map", "--at", "0,0"]);
    assert_eq!(code(&unknown), 2);
}

#[test]
fn stress_flags_injectivity_collisions() {
    let out = run(&["stress", "--map", "five_point_map", "--injective"]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["verdict"], "violation");
    assert_eq!(r["monotone"], "ok");
    assert!(r["witness"]["injectivity_collision"].is_object());

    // Without the flag the map is simply monotone.
    let plain = run(&["stress", "--map", "five_point_map"]);
    assert_eq!(code(&plain), 0);
    assert_eq!(report(&plain)["verdict"], "ok");
}

#[test]
fn embed_projection_reports_functional_and_values() {
    let dir = workdir("embed-projection");
    let pts = write(
        &dir,
        "pts.json",
        r#"[["0","0"],["1","0"],["0","1"],["2","3"],["1","1"]]"#,
    );
    let out = run(&[
        "embed",
        "--method",
        "projection",
        "--points",
        pts.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert!(r["u"].is_string() && r["v"].is_string());
    assert_eq!(r["values"].as_array().unwrap().len(), 5);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn embed_parallel_derives_heights_from_the_points() {
    let dir = workdir("embed-parallel");
    let pts = write(
        &dir,
        "pts.json",
        r#"[["0","0"],["1","0"],["2","0"],["0","1"],["1","1"],["3","1"]]"#,
    );
    let out = run(&[
        "embed",
        "--method",
        "parallel",
        "--points",
        pts.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["heights"], serde_json::json!(["0", "1"]));
    assert_eq!(r["values"].as_array().unwrap().len(), 6);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn embed_lexsum_rejects_points_off_the_family() {
    let dir = workdir("embed-lexsum");
    let pts = write(&dir, "pts.json", r#"[["0","0"],["1","1"],["2","3"]]"#);
    let out = run(&[
        "embed",
        "--method",
        "lexsum",
        "--points",
        pts.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    let r = report(&out);
    assert!(r["error"].as_str().unwrap().contains("point 2"));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn embed_csp_certifies_sampled_segment_configurations() {
    let out = run(&[
        "embed",
        "--method",
        "csp",
        "--sample-segments",
        "--seed",
        "11",
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["verdict"], "ok");
    assert!(r["metrics"]["points"].as_u64().unwrap() >= 30);
    assert!(r["metrics"]["cross_triples"].as_u64().unwrap() >= 10);
    let n = r["metrics"]["points"].as_u64().unwrap() as usize;
    assert_eq!(r["assignment"].as_array().unwrap().len(), n);

    // Identical seed, identical bytes.
    let again = run(&[
        "embed",
        "--method",
        "csp",
        "--sample-segments",
        "--seed",
        "11",
    ]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn timings_flag_adds_an_elapsed_metric() {
    let dir = workdir("timings");
    let map = write(&dir, "map.json", OK_MAP);
    let out = run(&["check", map.to_str().unwrap(), "--timings"]);
    assert_eq!(code(&out), 0);
    assert!(report(&out)["metrics"]["elapsed"].is_u64());
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn svg_subcommand_renders_a_scene_file() {
    let dir = workdir("svg-cmd");
    let scene = write(
        &dir,
        "scene.json",
        r#"{"points":[["0","0"],["1","1"]],"segments":[[["0","0"],["1","1"]]]}"#,
    );
    let svg = dir.join("out.svg");
    let out = run(&[
        "svg",
        scene.to_str().unwrap(),
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let rendered = fs::read_to_string(&svg).expect("svg written");
    assert!(rendered.starts_with("<svg"));
    assert!(rendered.contains("circle"));

    // Without --out and without the global --svg there is nowhere to write.
    let nowhere = run(&["svg", scene.to_str().unwrap()]);
    assert_eq!(code(&nowhere), 2);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn closure_reports_growth_and_rigidity() {
    let out = run(&[
        "closure",
        "--base",
        "0,0;1,0;0,1;1/4,1/4",
        "--image",
        "0,0;1,0;0,1;1/3,1/3",
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["verdict"], "ok");
    assert_eq!(r["rigidity"], "ok");
    assert!(r["metrics"]["points"].as_u64().unwrap() >= 100);
    assert_eq!(r["radius_by_generation"].as_array().unwrap().len(), 3);

    let malformed = run(&["closure", "--base", "0,0;1,0", "--image", "0,0;1,0"]);
    assert_eq!(code(&malformed), 2);
    let r = report(&malformed);
    assert!(r["error"].as_str().unwrap().contains("expected 4 points"));
}
