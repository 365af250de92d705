//! Closed C¹ curves in the plane and in space, all parametrized by `[0, 2π)`.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

mod builtin;
mod helix;
mod rounded;
mod sampled;

pub use builtin::{Ellipse, Parametric, Reversed, UnitCircle};
pub use helix::HelixChord;
pub use rounded::RoundedPolygon;
pub use sampled::SampledCurve;

/// Ambient point. Planar curves keep `z = 0`.
pub type Point = Vector3<f64>;

pub trait Curve: Send + Sync + fmt::Debug {
    /// Ambient dimension, 2 or 3.
    fn dim(&self) -> usize;

    fn eval(&self, t: f64) -> Point;

    /// Derivative of [`Curve::eval`] with respect to `t`.
    fn tangent(&self, t: f64) -> Point;

    /// Short human-readable descriptor.
    fn describe(&self) -> String;
}

pub type SharedCurve = Arc<dyn Curve>;

impl<C: Curve + ?Sized> Curve for Arc<C> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, t: f64) -> Point {
        (**self).eval(t)
    }
    fn tangent(&self, t: f64) -> Point {
        (**self).tangent(t)
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
}

impl<C: Curve + ?Sized> Curve for Box<C> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn eval(&self, t: f64) -> Point {
        (**self).eval(t)
    }
    fn tangent(&self, t: f64) -> Point {
        (**self).tangent(t)
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
}

pub(crate) fn wrap(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Central difference of `eval`, used by curves without an analytic tangent.
pub fn fd_tangent<C: Curve + ?Sized>(c: &C, t: f64, h: f64) -> Point {
    (c.eval(t + h) - c.eval(t - h)) / (2.0 * h)
}

/// Samples used for injectivity.
pub const INJECTIVITY_SAMPLES: usize = 512;
/// Samples used for tangent checks.
pub const TANGENT_SAMPLES: usize = 1024;
/// Points closer than this at well-separated parameters count as a collision.
pub const INJECTIVITY_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    /// Smallest distance between samples at parameter separation `>= 2π/64`.
    pub injectivity_margin: f64,
    /// Sampled polyline crosses itself (planar curves only).
    pub polyline_crossing: bool,
    /// Turning number of the tangent (planar curves only).
    pub winding: Option<i64>,
    pub min_tangent_norm: f64,
    pub failures: Vec<String>,
}

impl EmbeddingReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn injective(&self) -> bool {
        self.injectivity_margin > INJECTIVITY_TOL && !self.polyline_crossing
    }
}

/// Sampled embedding diagnostics. Never fails; problems land in `failures`.
pub fn check_embedding<C: Curve + ?Sized>(c: &C) -> EmbeddingReport {
    let n = INJECTIVITY_SAMPLES;
    let pts: Vec<Point> = (0..n).map(|k| c.eval(TAU * k as f64 / n as f64)).collect();
    let min_sep = n / 64;
    let mut margin = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let sep = (j - i).min(n - (j - i));
            if sep >= min_sep {
                margin = margin.min((pts[i] - pts[j]).norm());
            }
        }
    }

    let polyline_crossing = c.dim() == 2 && polyline_self_crosses(&pts);

    let m = TANGENT_SAMPLES;
    let tangents: Vec<Point> = (0..m).map(|k| c.tangent(TAU * k as f64 / m as f64)).collect();
    let min_tangent_norm = tangents.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);

    let winding = (c.dim() == 2).then(|| {
        let total: f64 = (0..m)
            .map(|k| {
                let a = tangents[k];
                let b = tangents[(k + 1) % m];
                (a.x * b.y - a.y * b.x).atan2(a.x * b.x + a.y * b.y)
            })
            .sum();
        (total / TAU).round() as i64
    });

    let mut failures = Vec::new();
    if margin <= INJECTIVITY_TOL {
        failures.push(format!("sampled points collide (margin {margin:.3e})"));
    }
    if polyline_crossing {
        failures.push("sampled polyline crosses itself".into());
    }
    if !(min_tangent_norm > 0.0) {
        failures.push("tangent vanishes".into());
    }
    if let Some(w) = winding {
        if w != 1 {
            failures.push(format!("tangent winding number is {w}, expected +1"));
        }
    }
    EmbeddingReport { injectivity_margin: margin, polyline_crossing, winding, min_tangent_norm, failures }
}

fn polyline_self_crosses(pts: &[Point]) -> bool {
    let n = pts.len();
    let orient = |a: &Point, b: &Point, c: &Point| (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    for i in 0..n {
        let (a, b) = (&pts[i], &pts[(i + 1) % n]);
        for j in i + 2..n {
            if (j + 1) % n == i {
                continue;
            }
            let (c, d) = (&pts[j], &pts[(j + 1) % n]);
            let d1 = orient(a, b, c);
            let d2 = orient(a, b, d);
            let d3 = orient(c, d, a);
            let d4 = orient(c, d, b);
            if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
                return true;
            }
        }
    }
    false
}

/// Reverse planar curves whose tangent winds clockwise.
pub fn orient_counterclockwise(c: SharedCurve) -> SharedCurve {
    if c.dim() != 2 {
        return c;
    }
    match check_embedding(&c).winding {
        Some(-1) => {
            log::info!("{}: clockwise parametrization reversed", c.describe());
            Arc::new(Reversed::new(c))
        }
        _ => c,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn circle_passes() {
        let r = check_embedding(&UnitCircle);
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!(r.winding, Some(1));
        assert!(r.injective());
    }

    #[test]
    fn clockwise_circle_flagged_and_fixed() {
        let cw: SharedCurve = Arc::new(Parametric::planar("cw-circle", |t| Point::new((-t).cos(), (-t).sin(), 0.0)));
        let r = check_embedding(&cw);
        assert_eq!(r.winding, Some(-1));
        assert!(!r.ok());
        let fixed = orient_counterclockwise(cw);
        assert_eq!(check_embedding(&fixed).winding, Some(1));
        assert_abs_diff_eq!((fixed.eval(0.3) - Point::new(0.3f64.cos(), 0.3f64.sin(), 0.0)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn figure_eight_flagged() {
        // (sin t, sin 2t / 2) passes through the origin at t = 0 and t = π
        let eight = Parametric::planar("figure-eight", |t| Point::new(t.sin(), (2.0 * t).sin() / 2.0, 0.0));
        let r = check_embedding(&eight);
        assert!(r.injectivity_margin < INJECTIVITY_TOL);
        assert!(!r.injective());
        assert!(!r.ok());
    }

    #[test]
    fn crossing_between_samples_is_caught() {
        // shifted figure-eight: the crossing no longer sits on a sample
        let eight = Parametric::planar("shifted-eight", |t| {
            let s = t + 0.0037;
            Point::new(s.sin(), (2.0 * s).sin() / 2.0, 0.0)
        });
        let r = check_embedding(&eight);
        assert!(r.polyline_crossing);
        assert!(!r.injective());
    }
}
