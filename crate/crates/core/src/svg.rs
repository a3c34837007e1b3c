//! Deterministic SVG rendering of planar scenes.
//!
//! Scenes hold exact rational geometry; rendering converts coordinates to
//! decimal strings only in the output attributes, with a fixed
//! 12-significant-digit truncation (display only — nothing is ever parsed
//! back from the decimals). Equal scenes render to byte-identical files:
//! elements are emitted in input order and no floating point is involved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Line, Point2, Segment};
use crate::rational::Rational;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SvgError {
    #[error("scene has nothing to draw")]
    EmptyScene,
}

/// What to draw: plain points, highlighted points (witnesses), segments,
/// and unbounded lines (clipped to the viewport at render time).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scene {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Point2>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub highlights: Vec<Point2>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub segments: Vec<Segment>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<Line>,
}

impl Scene {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
            && self.highlights.is_empty()
            && self.segments.is_empty()
            && self.lines.is_empty()
    }
}

/// Exact decimal rendering capped at 12 significant digits.
///
/// The integer part is always written in full; fractional digits follow
/// until the expansion terminates or 12 significant digits have been
/// emitted, whichever comes first, and trailing zeros are stripped. The
/// result is deterministic and never round-trips back into arithmetic.
pub fn decimal12(r: &Rational) -> String {
    const SIG: usize = 12;
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.signum() < 0;
    let num = {
        let n = r.numer().clone();
        if neg {
            -n
        } else {
            n
        }
    };
    let den = r.denom();
    let (int_part, mut rem) = num.div_rem(den);
    let int_str = int_part.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int_str);
    if rem.is_zero() {
        return out;
    }
    let mut sig = if int_part == BigInt::from(0) {
        0
    } else {
        int_str.len()
    };
    let ten = BigInt::from(10);
    let mut frac = String::new();
    while rem != BigInt::from(0) && sig < SIG {
        rem *= &ten;
        let (digit, next) = rem.div_rem(den);
        frac.push_str(&digit.to_string());
        rem = next;
        if sig > 0 || digit != BigInt::from(0) {
            sig += 1;
        }
    }
    while frac.ends_with('0') {
        frac.pop();
    }
    if !frac.is_empty() {
        out.push('.');
        out.push_str(&frac);
    }
    out
}

struct Viewport {
    min_x: Rational,
    max_x: Rational,
    min_y: Rational,
    max_y: Rational,
}

impl Viewport {
    fn contains(&self, p: &Point2) -> bool {
        p.x >= self.min_x && p.x <= self.max_x && p.y >= self.min_y && p.y <= self.max_y
    }
}

/// Bounding box of the scene's bounded elements plus a 5% margin. Scenes
/// holding only unbounded lines fall back to the square `[-1, 1]²`; a
/// degenerate (point-sized) box gets a unit margin instead.
fn viewport(scene: &Scene) -> Viewport {
    let mut xs: Vec<&Rational> = Vec::new();
    let mut ys: Vec<&Rational> = Vec::new();
    for p in scene.points.iter().chain(&scene.highlights) {
        xs.push(&p.x);
        ys.push(&p.y);
    }
    for s in &scene.segments {
        xs.extend([&s.p.x, &s.q.x]);
        ys.extend([&s.p.y, &s.q.y]);
    }
    let (one, minus_one) = (Rational::one(), -Rational::one());
    let (mut min_x, mut max_x, mut min_y, mut max_y) = match (xs.iter().min(), ys.iter().min()) {
        (Some(_), Some(_)) => (
            (*xs.iter().min().unwrap()).clone(),
            (*xs.iter().max().unwrap()).clone(),
            (*ys.iter().min().unwrap()).clone(),
            (*ys.iter().max().unwrap()).clone(),
        ),
        _ => (
            minus_one.clone(),
            one.clone(),
            minus_one.clone(),
            one.clone(),
        ),
    };
    let span_x = &max_x - &min_x;
    let span_y = &max_y - &min_y;
    let span = if span_x > span_y { span_x } else { span_y };
    let margin = if span.is_zero() {
        Rational::one()
    } else {
        span * Rational::new(1, 20)
    };
    min_x = min_x - &margin;
    max_x = max_x + &margin;
    min_y = min_y - &margin;
    max_y = max_y + &margin;
    Viewport {
        min_x,
        max_x,
        min_y,
        max_y,
    }
}

/// Clips an unbounded line to the viewport rectangle; `None` when the line
/// misses it (or only touches a corner).
fn clip_line(line: &Line, vp: &Viewport) -> Option<(Point2, Point2)> {
    let borders = [
        Line::from_coefficients(&Rational::one(), &Rational::zero(), &vp.min_x),
        Line::from_coefficients(&Rational::one(), &Rational::zero(), &vp.max_x),
        Line::from_coefficients(&Rational::zero(), &Rational::one(), &vp.min_y),
        Line::from_coefficients(&Rational::zero(), &Rational::one(), &vp.max_y),
    ];
    let mut hits: Vec<Point2> = Vec::new();
    for border in borders {
        let border = border.expect("border coefficients are valid");
        if let Some(p) = line.intersect(&border) {
            if vp.contains(&p) && !hits.contains(&p) {
                hits.push(p);
            }
        }
    }
    hits.sort_by(|p, q| (&p.x, &p.y).cmp(&(&q.x, &q.y)));
    match hits.len() {
        0 | 1 => None,
        _ => Some((hits[0].clone(), hits[hits.len() - 1].clone())),
    }
}

/// Renders the scene to an SVG document string.
///
/// The viewport is the bounding box of the bounded elements plus 5%; the
/// y-axis is flipped so larger `y` is drawn higher. All attribute values go
/// through `decimal12`, and equal scenes produce byte-identical documents.
pub fn render_svg(scene: &Scene) -> Result<String, SvgError> {
    if scene.is_empty() {
        return Err(SvgError::EmptyScene);
    }
    let vp = viewport(scene);
    let width = &vp.max_x - &vp.min_x;
    let height = &vp.max_y - &vp.min_y;
    let span = if width > height {
        width.clone()
    } else {
        height.clone()
    };
    let dot = &span * Rational::new(1, 100);
    let stroke = &span * Rational::new(1, 200);
    // Flip y: a point (x, y) is drawn at (x, -y).
    let view_box = format!(
        "{} {} {} {}",
        decimal12(&vp.min_x),
        decimal12(&-&vp.max_y),
        decimal12(&width),
        decimal12(&height),
    );
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{view_box}\">\n"
    ));
    out.push_str(&format!(
        "<g fill=\"none\" stroke=\"#444444\" stroke-width=\"{}\">\n",
        decimal12(&stroke)
    ));
    for line in &scene.lines {
        if let Some((p, q)) = clip_line(line, &vp) {
            out.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-dasharray=\"{}\"/>\n",
                decimal12(&p.x),
                decimal12(&-&p.y),
                decimal12(&q.x),
                decimal12(&-&q.y),
                decimal12(&(&dot * Rational::from(2))),
            ));
        }
    }
    for s in &scene.segments {
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
            decimal12(&s.p.x),
            decimal12(&-&s.p.y),
            decimal12(&s.q.x),
            decimal12(&-&s.q.y),
        ));
    }
    out.push_str("</g>\n");
    for p in &scene.points {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#1f6fb2\"/>\n",
            decimal12(&p.x),
            decimal12(&-&p.y),
            decimal12(&dot),
        ));
    }
    for p in &scene.highlights {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#c23b22\"/>\n",
            decimal12(&p.x),
            decimal12(&-&p.y),
            decimal12(&(&dot * Rational::new(3, 2))),
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
