use std::fmt;
use std::sync::Arc;

use super::{fd_tangent, Curve, Point};
use crate::error::{PegsError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct UnitCircle;

impl Curve for UnitCircle {
    fn dim(&self) -> usize {
        2
    }
    fn eval(&self, t: f64) -> Point {
        Point::new(t.cos(), t.sin(), 0.0)
    }
    fn tangent(&self, t: f64) -> Point {
        Point::new(-t.sin(), t.cos(), 0.0)
    }
    fn describe(&self) -> String {
        "circle".into()
    }
}

/// Axis-aligned ellipse `(a cos t, b sin t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ellipse {
    pub a: f64,
    pub b: f64,
}

impl Ellipse {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(PegsError::InvalidCurve(format!("ellipse semi-axes must be positive, got {a}, {b}")));
        }
        Ok(Ellipse { a, b })
    }
}

impl Curve for Ellipse {
    fn dim(&self) -> usize {
        2
    }
    fn eval(&self, t: f64) -> Point {
        Point::new(self.a * t.cos(), self.b * t.sin(), 0.0)
    }
    fn tangent(&self, t: f64) -> Point {
        Point::new(-self.a * t.sin(), self.b * t.cos(), 0.0)
    }
    fn describe(&self) -> String {
        format!("ellipse:{},{}", self.a, self.b)
    }
}

type EvalFn = dyn Fn(f64) -> Point + Send + Sync;

/// A curve given by a closure; tangents by central differences.
#[derive(Clone)]
pub struct Parametric {
    name: String,
    dim: usize,
    f: Arc<EvalFn>,
}

impl Parametric {
    pub fn new(name: &str, dim: usize, f: impl Fn(f64) -> Point + Send + Sync + 'static) -> Self {
        Parametric { name: name.to_string(), dim, f: Arc::new(f) }
    }

    pub fn planar(name: &str, f: impl Fn(f64) -> Point + Send + Sync + 'static) -> Self {
        Parametric::new(name, 2, f)
    }
}

impl fmt::Debug for Parametric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Parametric").field("name", &self.name).field("dim", &self.dim).finish()
    }
}

impl Curve for Parametric {
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, t: f64) -> Point {
        (self.f)(t)
    }
    fn tangent(&self, t: f64) -> Point {
        fd_tangent(self, t, 1e-6)
    }
    fn describe(&self) -> String {
        self.name.clone()
    }
}

/// The same image traversed backwards: `t ↦ c(-t)`.
#[derive(Clone, Debug)]
pub struct Reversed<C> {
    inner: C,
}

impl<C: Curve> Reversed<C> {
    pub fn new(inner: C) -> Self {
        Reversed { inner }
    }
}

impl<C: Curve> Curve for Reversed<C> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn eval(&self, t: f64) -> Point {
        self.inner.eval(-t)
    }
    fn tangent(&self, t: f64) -> Point {
        -self.inner.tangent(-t)
    }
    fn describe(&self) -> String {
        format!("reversed({})", self.inner.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, TAU};

    #[test]
    fn eval_examples() {
        assert_abs_diff_eq!((UnitCircle.eval(0.0) - Point::new(1.0, 0.0, 0.0)).norm(), 0.0);
        let e = Ellipse::new(2.0, 1.0).unwrap();
        assert_abs_diff_eq!((e.eval(FRAC_PI_2) - Point::new(0.0, 1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((UnitCircle.tangent(0.0) - Point::new(0.0, 1.0, 0.0)).norm(), 0.0);
    }

    #[test]
    fn ellipse_rejects_bad_axes() {
        assert!(Ellipse::new(0.0, 1.0).is_err());
        assert!(Ellipse::new(1.0, -2.0).is_err());
    }

    #[test]
    fn periodic_and_fd_consistent() {
        let e = Ellipse::new(3.0, 1.0).unwrap();
        for k in 0..50 {
            let t = 0.13 * k as f64;
            assert!((e.eval(t) - e.eval(t + TAU)).norm() < 1e-12);
            let fd = fd_tangent(&e, t, 1e-6);
            assert!((fd - e.tangent(t)).norm() <= 1e-5 * e.tangent(t).norm());
        }
    }
}
