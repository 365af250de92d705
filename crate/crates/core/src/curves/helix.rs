use std::f64::consts::{PI, TAU};

use super::{wrap, Curve, Point};
use crate::error::{PegsError, Result};

/// One turn of the helix `(cos s, sin s, s)`, `s ∈ [0, 2π]`, closed by the
/// vertical segment from `(1, 0, 2π)` back to `(1, 0, 0)`.
///
/// The underlying path runs over `s ∈ [0, 4π]` (segment `(1, 0, 4π - s)` on
/// the second half) and the curve parameter is `t = s / 2`. The two corners,
/// at `t = 0` and `t = π`, are replaced on `[c - ρ, c + ρ]` by cubic Hermite
/// blends that match position and derivative at both ends. `ρ = 0` keeps the
/// raw corners.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HelixChord {
    rho: f64,
}

pub const DEFAULT_HELIX_RHO: f64 = 0.05;

impl Default for HelixChord {
    fn default() -> Self {
        HelixChord { rho: DEFAULT_HELIX_RHO }
    }
}

impl HelixChord {
    pub fn new(rho: f64) -> Result<Self> {
        if !(0.0..PI / 4.0).contains(&rho) {
            return Err(PegsError::InvalidCurve(format!("smoothing radius {rho} outside [0, π/4)")));
        }
        Ok(HelixChord { rho })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Curve parameter of the unsmoothed path at `s ∈ [0, 4π)`.
    pub fn param_of_path(s: f64) -> f64 {
        s / 2.0
    }

    /// Unsmoothed path and its `t`-derivative.
    pub fn raw(t: f64) -> (Point, Point) {
        let s = 2.0 * wrap(t);
        if s <= TAU {
            (Point::new(s.cos(), s.sin(), s), Point::new(-s.sin(), s.cos(), 1.0) * 2.0)
        } else {
            (Point::new(1.0, 0.0, 2.0 * TAU - s), Point::new(0.0, 0.0, -2.0))
        }
    }

    /// `Some((corner, u))` when `t` lies in a blend window; `u ∈ [0, 1]`.
    fn blend_window(&self, t: f64) -> Option<(f64, f64)> {
        if self.rho == 0.0 {
            return None;
        }
        let t = wrap(t);
        for corner in [0.0, PI, TAU] {
            let d = t - corner;
            if d.abs() < self.rho {
                return Some((corner, (d + self.rho) / (2.0 * self.rho)));
            }
        }
        None
    }

    fn hermite(&self, corner: f64, u: f64) -> (Point, Point) {
        let w = 2.0 * self.rho;
        let (p0, d0) = HelixChord::raw(corner - self.rho);
        let (p1, d1) = HelixChord::raw(corner + self.rho);
        let (u2, u3) = (u * u, u * u * u);
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h10 = u3 - 2.0 * u2 + u;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h11 = u3 - u2;
        let pos = p0 * h00 + d0 * (w * h10) + p1 * h01 + d1 * (w * h11);
        let g00 = 6.0 * u2 - 6.0 * u;
        let g10 = 3.0 * u2 - 4.0 * u + 1.0;
        let g01 = -6.0 * u2 + 6.0 * u;
        let g11 = 3.0 * u2 - 2.0 * u;
        let vel = (p0 * g00 + d0 * (w * g10) + p1 * g01 + d1 * (w * g11)) / w;
        (pos, vel)
    }
}

impl Curve for HelixChord {
    fn dim(&self) -> usize {
        3
    }

    fn eval(&self, t: f64) -> Point {
        match self.blend_window(t) {
            Some((c, u)) => self.hermite(c, u).0,
            None => HelixChord::raw(t).0,
        }
    }

    fn tangent(&self, t: f64) -> Point {
        match self.blend_window(t) {
            Some((c, u)) => self.hermite(c, u).1,
            None => HelixChord::raw(t).1,
        }
    }

    fn describe(&self) -> String {
        format!("helix-chord:{}", self.rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{check_embedding, fd_tangent};
    use std::f64::consts::FRAC_PI_2;

    fn close(a: Point, b: Point, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn rhombus_vertices_and_tangents() {
        let c = HelixChord::default();
        let s = [FRAC_PI_2, PI, 1.5 * PI, 3.0 * PI];
        let pts = [
            Point::new(0.0, 1.0, FRAC_PI_2),
            Point::new(-1.0, 0.0, PI),
            Point::new(0.0, -1.0, 1.5 * PI),
            Point::new(1.0, 0.0, PI),
        ];
        let dirs = [
            Point::new(-1.0, 0.0, 1.0),
            Point::new(0.0, -1.0, 1.0),
            Point::new(1.0, 0.0, 1.0),
            Point::new(0.0, 0.0, -1.0),
        ];
        for k in 0..4 {
            let t = HelixChord::param_of_path(s[k]);
            assert!(close(c.eval(t), pts[k], 1e-12));
            let tan = c.tangent(t);
            assert!(close(tan.normalize(), dirs[k].normalize(), 1e-12));
        }
    }

    #[test]
    fn continuous_and_c1_across_blends() {
        let c = HelixChord::default();
        for corner in [0.0, PI] {
            for edge in [corner - c.rho, corner + c.rho] {
                let (a, b) = (edge - 1e-9, edge + 1e-9);
                assert!(close(c.eval(a), c.eval(b), 1e-7));
                assert!(close(c.tangent(a), c.tangent(b), 1e-6));
            }
        }
    }

    #[test]
    fn embedded_with_nonvanishing_tangent() {
        let r = check_embedding(&HelixChord::default());
        assert!(r.ok(), "{:?}", r.failures);
        assert!(r.min_tangent_norm > 0.1);
        assert_eq!(r.winding, None);
    }

    #[test]
    fn fd_tangent_agrees() {
        let c = HelixChord::default();
        for k in 0..200 {
            let t = TAU * (k as f64 + 0.31) / 200.0;
            let a = c.tangent(t);
            assert!((fd_tangent(&c, t, 1e-6) - a).norm() <= 1e-5 * a.norm(), "t = {t}");
            assert!(close(c.eval(t), c.eval(t + TAU), 1e-12));
        }
    }

    #[test]
    fn radius_validated() {
        assert!(HelixChord::new(-0.1).is_err());
        assert!(HelixChord::new(1.0).is_err());
        assert!(HelixChord::new(0.0).is_ok());
    }
}
