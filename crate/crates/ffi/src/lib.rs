//! C ABI over the betweenness toolkit.
//!
//! Handles are opaque boxes; every other exchange is a UTF-8 JSON string
//! in the same schemas the `btw` binary reads and writes. Functions never
//! unwind across the boundary: a caught panic maps to `BTW_STATUS_PANIC`. Strings
//! returned through `char **` outputs are owned by the caller and must be
//! released with [`btw_string_free`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::json;

use btw_core::{
    check_injective, check_monotone, classify_image, fit_homography, projection_embed, render_svg,
    rigidity_check, FiniteMap, Point2, ProjectiveTransform, RigidityOutcome, Scene,
    TrichotomyClass,
};

/// Result discriminant of every call.
///
/// `Ok`, `Violation`, and `Unsat` mirror the CLI exit codes; the remaining
/// values flag misuse of the boundary itself.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Violation = 1,
    Unsat = 2,
    InvalidInput = 3,
    NullArgument = 4,
    Panic = 5,
}

/// A parsed finite map (opaque).
pub struct BtwMap(FiniteMap);

/// A parsed projective transform (opaque).
pub struct BtwTransform(ProjectiveTransform);

fn guarded(f: impl FnOnce() -> Status) -> Status {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(Status::Panic)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Status> {
    if p.is_null() {
        return Err(Status::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| Status::InvalidInput)
}

unsafe fn give(out: *mut *mut c_char, s: String) {
    if out.is_null() {
        return;
    }
    // JSON and SVG output never contain NUL; the fallback keeps the
    // contract total anyway.
    let c = CString::new(s)
        .unwrap_or_else(|_| CString::new(r#"{"error":"output contained NUL"}"#).expect("literal"));
    *out = c.into_raw();
}

unsafe fn give_error(out: *mut *mut c_char, message: &str) {
    give(out, json!({ "error": message }).to_string());
}

unsafe fn parse_json<T: serde::de::DeserializeOwned>(
    json: *const c_char,
    out_error: *mut *mut c_char,
) -> Result<T, Status> {
    let text = read_str(json)?;
    serde_json::from_str(text).map_err(|e| {
        give_error(out_error, &e.to_string());
        Status::InvalidInput
    })
}

unsafe fn parse_quad(
    json: *const c_char,
    out_error: *mut *mut c_char,
) -> Result<[Point2; 4], Status> {
    let pts: Vec<Point2> = parse_json(json, out_error)?;
    pts.try_into().map_err(|v: Vec<Point2>| {
        give_error(out_error, &format!("expected 4 points, got {}", v.len()));
        Status::InvalidInput
    })
}

/// Version of the underlying library, as a static string (do not free).
#[no_mangle]
pub extern "C" fn btw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string returned by any function here. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn btw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a finite-map JSON document
/// (`{"structure":"euclidean"|"discrete","pairs":[[point,target],...]}`).
/// On `BTW_STATUS_INVALID_INPUT` the error message lands in `out_error`.
#[no_mangle]
pub unsafe extern "C" fn btw_map_parse(
    json: *const c_char,
    out_map: *mut *mut BtwMap,
    out_error: *mut *mut c_char,
) -> Status {
    guarded(|| {
        if out_map.is_null() {
            return Status::NullArgument;
        }
        *out_map = ptr::null_mut();
        match parse_json::<FiniteMap>(json, out_error) {
            Ok(m) => {
                *out_map = Box::into_raw(Box::new(BtwMap(m)));
                Status::Ok
            }
            Err(s) => s,
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn btw_map_free(map: *mut BtwMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Number of domain points of the map.
#[no_mangle]
pub unsafe extern "C" fn btw_map_len(map: *const BtwMap) -> usize {
    map.as_ref().map_or(0, |m| m.0.len())
}

/// Exhaustively verifies betweenness preservation (and, when `injective`
/// is set, injectivity). `out_verdict` receives the verdict JSON — `"ok"`
/// or `{"violation":{...witness...}}` — and the status mirrors it.
#[no_mangle]
pub unsafe extern "C" fn btw_map_check(
    map: *const BtwMap,
    injective: bool,
    out_verdict: *mut *mut c_char,
) -> Status {
    guarded(|| {
        let m = match map.as_ref() {
            Some(m) => &m.0,
            None => return Status::NullArgument,
        };
        let mut verdict = check_monotone(m);
        if verdict.is_ok() && injective {
            verdict = check_injective(m);
        }
        give(
            out_verdict,
            serde_json::to_string(&verdict).expect("verdict serializes"),
        );
        if verdict.is_ok() {
            Status::Ok
        } else {
            Status::Violation
        }
    })
}

/// Classifies the map's planar image; `out_class` receives the tagged
/// class JSON. A `violation` class yields `BTW_STATUS_VIOLATION`; a map without
/// planar targets yields `BTW_STATUS_INVALID_INPUT`.
#[no_mangle]
pub unsafe extern "C" fn btw_map_classify(
    map: *const BtwMap,
    out_class: *mut *mut c_char,
) -> Status {
    guarded(|| {
        let m = match map.as_ref() {
            Some(m) => &m.0,
            None => return Status::NullArgument,
        };
        match classify_image(m) {
            Ok(class) => {
                let violation = matches!(class, TrichotomyClass::Violation { .. });
                give(
                    out_class,
                    serde_json::to_string(&class).expect("class serializes"),
                );
                if violation {
                    Status::Violation
                } else {
                    Status::Ok
                }
            }
            Err(e) => {
                give_error(out_class, &e.to_string());
                Status::InvalidInput
            }
        }
    })
}

/// Parses a transform JSON document (`{"m":[[...],[...],[...]]}`).
#[no_mangle]
pub unsafe extern "C" fn btw_transform_parse(
    json: *const c_char,
    out_transform: *mut *mut BtwTransform,
    out_error: *mut *mut c_char,
) -> Status {
    guarded(|| {
        if out_transform.is_null() {
            return Status::NullArgument;
        }
        *out_transform = ptr::null_mut();
        match parse_json::<ProjectiveTransform>(json, out_error) {
            Ok(t) => {
                *out_transform = Box::into_raw(Box::new(BtwTransform(t)));
                Status::Ok
            }
            Err(s) => s,
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn btw_transform_free(transform: *mut BtwTransform) {
    if !transform.is_null() {
        drop(Box::from_raw(transform));
    }
}

/// Fits the transform through two JSON quadruples (4 source points, 4
/// target points, no three collinear on either side).
#[no_mangle]
pub unsafe extern "C" fn btw_transform_fit(
    source: *const c_char,
    target: *const c_char,
    out_transform: *mut *mut BtwTransform,
    out_error: *mut *mut c_char,
) -> Status {
    guarded(|| {
        if out_transform.is_null() {
            return Status::NullArgument;
        }
        *out_transform = ptr::null_mut();
        let src = match parse_quad(source, out_error) {
            Ok(q) => q,
            Err(s) => return s,
        };
        let dst = match parse_quad(target, out_error) {
            Ok(q) => q,
            Err(s) => return s,
        };
        match fit_homography(&src, &dst) {
            Ok(t) => {
                *out_transform = Box::into_raw(Box::new(BtwTransform(t)));
                Status::Ok
            }
            Err(e) => {
                give_error(out_error, &e.to_string());
                Status::InvalidInput
            }
        }
    })
}

/// Serializes the transform back to `{"m":[...]}` JSON.
#[no_mangle]
pub unsafe extern "C" fn btw_transform_to_json(
    transform: *const BtwTransform,
    out_json: *mut *mut c_char,
) -> Status {
    guarded(|| {
        let t = match transform.as_ref() {
            Some(t) => &t.0,
            None => return Status::NullArgument,
        };
        give(
            out_json,
            serde_json::to_string(t).expect("transform serializes"),
        );
        Status::Ok
    })
}

/// Applies the transform to a JSON point list; `out_points` receives the
/// image list. A point on the vanishing line is `BTW_STATUS_INVALID_INPUT`.
#[no_mangle]
pub unsafe extern "C" fn btw_transform_eval(
    transform: *const BtwTransform,
    points: *const c_char,
    out_points: *mut *mut c_char,
) -> Status {
    guarded(|| {
        let t = match transform.as_ref() {
            Some(t) => &t.0,
            None => return Status::NullArgument,
        };
        let pts: Vec<Point2> = match parse_json(points, out_points) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let mut images = Vec::with_capacity(pts.len());
        for (i, p) in pts.iter().enumerate() {
            match t.eval(p) {
                Ok(q) => images.push(q),
                Err(e) => {
                    give_error(out_points, &format!("point {i}: {e}"));
                    return Status::InvalidInput;
                }
            }
        }
        give(
            out_points,
            serde_json::to_string(&images).expect("points serialize"),
        );
        Status::Ok
    })
}

/// Grows the segment-intersection closure of `base` for `generations`
/// rounds, replays it through the transform fitted on `base ↦ image`, and
/// demands exact agreement. `out_report` receives
/// `{"rigidity":"ok","points":n}` or the mismatch record
/// (`BTW_STATUS_VIOLATION`). Both arguments are JSON quadruples: a triangle
/// followed by a strictly interior point.
#[no_mangle]
pub unsafe extern "C" fn btw_rigidity_check(
    base: *const c_char,
    image: *const c_char,
    generations: usize,
    out_report: *mut *mut c_char,
) -> Status {
    guarded(|| {
        let b = match parse_quad(base, out_report) {
            Ok(q) => q,
            Err(s) => return s,
        };
        let im = match parse_quad(image, out_report) {
            Ok(q) => q,
            Err(s) => return s,
        };
        match rigidity_check(b, im, generations) {
            Ok(RigidityOutcome::Ok { points }) => {
                give(
                    out_report,
                    json!({"rigidity": "ok", "points": points}).to_string(),
                );
                Status::Ok
            }
            Ok(RigidityOutcome::Mismatch {
                point,
                extended,
                homography,
            }) => {
                give(
                    out_report,
                    json!({
                        "rigidity": "mismatch",
                        "point": point,
                        "extended": extended,
                        "homography": homography,
                    })
                    .to_string(),
                );
                Status::Violation
            }
            Err(e) => {
                give_error(out_report, &e.to_string());
                Status::InvalidInput
            }
        }
    })
}

/// Embeds a JSON point list through the injective monotone functional
/// `x + t·y`; `out_result` receives `{"u":...,"v":...,"values":[...]}`.
#[no_mangle]
pub unsafe extern "C" fn btw_projection_embed(
    points: *const c_char,
    out_result: *mut *mut c_char,
) -> Status {
    guarded(|| {
        let pts: Vec<Point2> = match parse_json(points, out_result) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match projection_embed(&pts) {
            Ok(emb) => {
                give(
                    out_result,
                    json!({"u": emb.u, "v": emb.v, "values": emb.values}).to_string(),
                );
                Status::Ok
            }
            Err(e) => {
                give_error(out_result, &e.to_string());
                Status::InvalidInput
            }
        }
    })
}

/// Renders a scene JSON document to an SVG string.
#[no_mangle]
pub unsafe extern "C" fn btw_render_svg(scene: *const c_char, out_svg: *mut *mut c_char) -> Status {
    guarded(|| {
        let scene: Scene = match parse_json(scene, out_svg) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match render_svg(&scene) {
            Ok(svg) => {
                give(out_svg, svg);
                Status::Ok
            }
            Err(e) => {
                give_error(out_svg, &e.to_string());
                Status::InvalidInput
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
        btw_string_free(p);
        s
    }

    #[test]
    fn map_parse_check_classify_lifecycle() {
        let json = c(r#"{"structure":"euclidean","pairs":[
            [["0","0"],["0","0"]],[["1","0"],["2","0"]],
            [["1/2","0"],["1","0"]],[["0","1"],["0","1"]]]}"#);
        unsafe {
            let mut map: *mut BtwMap = ptr::null_mut();
            let mut err: *mut c_char = ptr::null_mut();
            assert_eq!(btw_map_parse(json.as_ptr(), &mut map, &mut err), Status::Ok);
            assert!(err.is_null());
            assert_eq!(btw_map_len(map), 4);

            let mut verdict: *mut c_char = ptr::null_mut();
            assert_eq!(btw_map_check(map, true, &mut verdict), Status::Ok);
            assert_eq!(take(verdict), "\"ok\"");

            let mut class: *mut c_char = ptr::null_mut();
            assert_eq!(btw_map_classify(map, &mut class), Status::Ok);
            assert!(take(class).contains("line_union_point"));
            btw_map_free(map);
        }
    }

    #[test]
    fn broken_map_yields_violation_and_witness() {
        let json = c(r#"{"structure":"euclidean","pairs":[
            [["0","0"],["0","0"]],[["1","0"],["2","0"]],[["1/2","0"],["5","7"]]]}"#);
        unsafe {
            let mut map: *mut BtwMap = ptr::null_mut();
            assert_eq!(
                btw_map_parse(json.as_ptr(), &mut map, ptr::null_mut()),
                Status::Ok
            );
            let mut verdict: *mut c_char = ptr::null_mut();
            assert_eq!(btw_map_check(map, false, &mut verdict), Status::Violation);
            assert!(take(verdict).contains("monotonicity_violation"));
            btw_map_free(map);
        }
    }

    #[test]
    fn bad_json_reports_invalid_input() {
        let json = c("not json");
        unsafe {
            let mut map: *mut BtwMap = ptr::null_mut();
            let mut err: *mut c_char = ptr::null_mut();
            assert_eq!(
                btw_map_parse(json.as_ptr(), &mut map, &mut err),
                Status::InvalidInput
            );
            assert!(map.is_null());
            assert!(take(err).contains("error"));
            assert_eq!(
                btw_map_parse(ptr::null(), &mut map, ptr::null_mut()),
                Status::NullArgument
            );
        }
    }

    #[test]
    fn fit_eval_round_trip() {
        let src = c(r#"[["0","0"],["1","0"],["0","1"],["1/4","1/4"]]"#);
        let dst = c(r#"[["0","0"],["1","0"],["0","1"],["1/3","1/3"]]"#);
        unsafe {
            let mut t: *mut BtwTransform = ptr::null_mut();
            assert_eq!(
                btw_transform_fit(src.as_ptr(), dst.as_ptr(), &mut t, ptr::null_mut()),
                Status::Ok
            );
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(btw_transform_to_json(t, &mut json), Status::Ok);
            let text = take(json);
            assert!(text.starts_with(r#"{"m":"#));

            let mut t2: *mut BtwTransform = ptr::null_mut();
            let reparse = c(&text);
            assert_eq!(
                btw_transform_parse(reparse.as_ptr(), &mut t2, ptr::null_mut()),
                Status::Ok
            );

            let mut images: *mut c_char = ptr::null_mut();
            assert_eq!(
                btw_transform_eval(t2, src.as_ptr(), &mut images),
                Status::Ok
            );
            assert_eq!(
                take(images),
                r#"[["0","0"],["1","0"],["0","1"],["1/3","1/3"]]"#
            );
            btw_transform_free(t);
            btw_transform_free(t2);
        }
    }

    #[test]
    fn degenerate_fit_is_invalid_input() {
        let src = c(r#"[["0","0"],["1","0"],["2","0"],["1/4","1/4"]]"#);
        let dst = c(r#"[["0","0"],["1","0"],["0","1"],["1/3","1/3"]]"#);
        unsafe {
            let mut t: *mut BtwTransform = ptr::null_mut();
            let mut err: *mut c_char = ptr::null_mut();
            assert_eq!(
                btw_transform_fit(src.as_ptr(), dst.as_ptr(), &mut t, &mut err),
                Status::InvalidInput
            );
            assert!(t.is_null());
            assert!(take(err).contains("collinear"));
        }
    }

    #[test]
    fn rigidity_runs_through_the_boundary() {
        let base = c(r#"[["0","0"],["1","0"],["0","1"],["1/4","1/4"]]"#);
        let image = c(r#"[["0","0"],["1","0"],["0","1"],["1/3","1/3"]]"#);
        unsafe {
            let mut report: *mut c_char = ptr::null_mut();
            assert_eq!(
                btw_rigidity_check(base.as_ptr(), image.as_ptr(), 2, &mut report),
                Status::Ok
            );
            let text = take(report);
            assert!(text.contains(r#""rigidity":"ok""#));
        }
    }

    #[test]
    fn projection_and_svg_produce_output() {
        let pts = c(r#"[["0","0"],["1","0"],["0","1"],["1","1"]]"#);
        unsafe {
            let mut result: *mut c_char = ptr::null_mut();
            assert_eq!(btw_projection_embed(pts.as_ptr(), &mut result), Status::Ok);
            assert!(take(result).contains("\"values\""));

            let scene = c(r#"{"points":[["0","0"],["1","1"]]}"#);
            let mut svg: *mut c_char = ptr::null_mut();
            assert_eq!(btw_render_svg(scene.as_ptr(), &mut svg), Status::Ok);
            assert!(take(svg).starts_with("<svg"));

            let empty = c("{}");
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(
                btw_render_svg(empty.as_ptr(), &mut out),
                Status::InvalidInput
            );
            btw_string_free(out);
        }
    }

    #[test]
    fn version_is_a_static_string() {
        unsafe {
            let v = CStr::from_ptr(btw_version()).to_str().unwrap();
            assert_eq!(v, env!("CARGO_PKG_VERSION"));
        }
    }
}
