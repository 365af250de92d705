//! Test maps whose zeros are inscribed squares, affine-regular hexagons and
//! rhombi, their rescaled versions and their collapse limits.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::configspace::{eta_raw, CyclicConfiguration};
use crate::curves::{Curve, Point};
use crate::error::{PegsError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TestMapKind {
    #[serde(rename = "square")]
    SquarePeg,
    #[serde(rename = "hexagon")]
    AffineHexagon,
    #[serde(rename = "rhombus")]
    Rhombus,
}

impl TestMapKind {
    pub const ALL: [TestMapKind; 3] = [TestMapKind::SquarePeg, TestMapKind::AffineHexagon, TestMapKind::Rhombus];

    /// Number of points, which is also the number of value components.
    pub fn points(&self) -> usize {
        match self {
            TestMapKind::SquarePeg | TestMapKind::Rhombus => 4,
            TestMapKind::AffineHexagon => 6,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            TestMapKind::SquarePeg | TestMapKind::AffineHexagon => 2,
            TestMapKind::Rhombus => 3,
        }
    }

    /// Named slices of the value vector.
    pub fn blocks(&self) -> &'static [(&'static str, usize)] {
        match self {
            TestMapKind::SquarePeg => &[("phi1", 2), ("phi2", 1), ("phi3", 1)],
            TestMapKind::AffineHexagon => &[("alpha", 2), ("beta", 2), ("delta", 2)],
            TestMapKind::Rhombus => &[("psi1", 3), ("psi2", 1)],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TestMapKind::SquarePeg => "square",
            TestMapKind::AffineHexagon => "hexagon",
            TestMapKind::Rhombus => "rhombus",
        }
    }

    /// How the value transforms when labels shift by one (`q_i ← q_{i+1}`).
    pub fn shift_action(&self) -> DMatrix<f64> {
        match self {
            TestMapKind::SquarePeg | TestMapKind::Rhombus => -DMatrix::identity(4, 4),
            // (α, β, δ) ↦ (β, γ, -δ) with γ = -α - β
            TestMapKind::AffineHexagon => {
                let mut r = DMatrix::zeros(6, 6);
                for c in 0..2 {
                    r[(c, 2 + c)] = 1.0;
                    r[(2 + c, c)] = -1.0;
                    r[(2 + c, 2 + c)] = -1.0;
                    r[(4 + c, 4 + c)] = -1.0;
                }
                r
            }
        }
    }
}

impl fmt::Display for TestMapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestMapKind {
    type Err = PegsError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(TestMapKind::SquarePeg),
            "hexagon" => Ok(TestMapKind::AffineHexagon),
            "rhombus" => Ok(TestMapKind::Rhombus),
            other => Err(PegsError::Parse(format!("unknown kind {other:?} (square|hexagon|rhombus)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestValue {
    pub kind: TestMapKind,
    pub components: Vec<f64>,
}

impl TestValue {
    pub fn norm(&self) -> f64 {
        self.components.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn block(&self, name: &str) -> Option<&[f64]> {
        let mut at = 0;
        for &(b, len) in self.kind.blocks() {
            if b == name {
                return Some(&self.components[at..at + len]);
            }
            at += len;
        }
        None
    }

    /// `γ = -α - β` for hexagon values.
    pub fn gamma(&self) -> Option<[f64; 2]> {
        (self.kind == TestMapKind::AffineHexagon)
            .then(|| [-self.components[0] - self.components[2], -self.components[1] - self.components[3]])
    }

    /// Norm invariant under cyclic relabelling. For the hexagon this also
    /// counts the eliminated `γ` block.
    pub fn invariant_norm(&self) -> f64 {
        match self.gamma() {
            Some(g) => (self.norm().powi(2) + g[0] * g[0] + g[1] * g[1]).sqrt(),
            None => self.norm(),
        }
    }

    pub fn scaled(mut self, s: f64) -> Self {
        for c in &mut self.components {
            *c *= s;
        }
        self
    }
}

fn dist2(a: &Point, b: &Point) -> f64 {
    ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt()
}

/// `(φ₁, φ₂, φ₃)`: diagonal midpoints, diagonal lengths and alternating side
/// lengths of the planar quadrilateral `y₁y₂y₃y₄`.
pub fn square_test(y: &[Point; 4]) -> TestValue {
    let d = dist2;
    let phi1x = (y[0].x + y[2].x) / 2.0 - (y[1].x + y[3].x) / 2.0;
    let phi1y = (y[0].y + y[2].y) / 2.0 - (y[1].y + y[3].y) / 2.0;
    let phi2 = d(&y[0], &y[2]) - d(&y[1], &y[3]);
    let phi3 = d(&y[0], &y[1]) - d(&y[1], &y[2]) + d(&y[2], &y[3]) - d(&y[3], &y[0]);
    TestValue { kind: TestMapKind::SquarePeg, components: vec![phi1x, phi1y, phi2, phi3] }
}

/// `(α, β, δ)` for the planar hexagon `x₁…x₆`; `γ` is implied.
pub fn hexagon_test(x: &[Point; 6]) -> TestValue {
    let alpha = x[0] + x[3] - x[1] - x[4];
    let beta = x[1] + x[4] - x[2] - x[5];
    let delta = x[0] - x[1] + x[2] - x[3] + x[4] - x[5];
    TestValue {
        kind: TestMapKind::AffineHexagon,
        components: vec![alpha.x, alpha.y, beta.x, beta.y, delta.x, delta.y],
    }
}

/// `(Ψ₁, Ψ₂)`: parallelogram defect and alternating side lengths in space.
pub fn rhombus_test(x: &[Point; 4]) -> TestValue {
    let psi1 = x[0] - x[1] + x[2] - x[3];
    let psi2 = (x[0] - x[1]).norm() - (x[1] - x[2]).norm() + (x[2] - x[3]).norm() - (x[3] - x[0]).norm();
    TestValue { kind: TestMapKind::Rhombus, components: vec![psi1.x, psi1.y, psi1.z, psi2] }
}

/// Dispatch on `kind`; `points.len()` must equal `kind.points()`.
pub fn evaluate(kind: TestMapKind, points: &[Point]) -> Result<TestValue> {
    if points.len() != kind.points() {
        return Err(PegsError::Contract(format!(
            "{kind} test needs {} points, got {}",
            kind.points(),
            points.len()
        )));
    }
    Ok(evaluate_unchecked(kind, points))
}

pub(crate) fn evaluate_unchecked(kind: TestMapKind, p: &[Point]) -> TestValue {
    match kind {
        TestMapKind::SquarePeg => square_test(&[p[0], p[1], p[2], p[3]]),
        TestMapKind::AffineHexagon => hexagon_test(&[p[0], p[1], p[2], p[3], p[4], p[5]]),
        TestMapKind::Rhombus => rhombus_test(&[p[0], p[1], p[2], p[3]]),
    }
}

fn check_kind<C: Curve + ?Sized>(c: &C, n: usize, kind: TestMapKind) -> Result<()> {
    if c.dim() != kind.ambient_dim() {
        return Err(PegsError::Contract(format!(
            "{kind} test needs a curve in R^{}, got R^{}",
            kind.ambient_dim(),
            c.dim()
        )));
    }
    if n != kind.points() {
        return Err(PegsError::Contract(format!("{kind} test needs {} points, got {n}", kind.points())));
    }
    Ok(())
}

/// `ξ(q) · Φ(c(q₁), …, c(qₙ))` with `ξ = 1/η`.
pub fn rescaled_test<C: Curve + ?Sized>(c: &C, q: &CyclicConfiguration, kind: TestMapKind) -> Result<TestValue> {
    check_kind(c, q.len(), kind)?;
    Ok(rescaled_raw(c, q.params(), kind))
}

/// Rescaled test on raw angles, without order validation.
pub(crate) fn rescaled_raw<C: Curve + ?Sized>(c: &C, params: &[f64], kind: TestMapKind) -> TestValue {
    let pts: Vec<Point> = params.iter().map(|&t| c.eval(t)).collect();
    let xi = 1.0 / eta_raw(params);
    evaluate_unchecked(kind, &pts).scaled(xi)
}

/// Limit of the rescaled test along a total collapse onto a point with
/// tangent `tangent`: point `y` sits at `offsets[k] * tangent`, where the
/// letters are read linearly starting after `cut` (1-based, as in
/// [`crate::cyclohedron::Bracket::Full`]), and the value is divided by the
/// infinitesimal diameter `r_n - r_1`.
pub fn collapse_limit(kind: TestMapKind, tangent: &Point, offsets: &[f64], cut: usize) -> Result<TestValue> {
    let n = kind.points();
    if offsets.len() != n {
        return Err(PegsError::Contract(format!("{kind} collapse needs {n} offsets, got {}", offsets.len())));
    }
    if offsets.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(PegsError::Contract("collapse offsets must be strictly increasing".into()));
    }
    if !(1..=n).contains(&cut) {
        return Err(PegsError::Contract(format!("cut {cut} outside 1..={n}")));
    }
    if tangent.norm() == 0.0 {
        return Err(PegsError::DegenerateInput("zero tangent".into()));
    }
    let mut pts = vec![Point::zeros(); n];
    for (k, r) in offsets.iter().enumerate() {
        pts[(cut + k) % n] = tangent * *r;
    }
    let eta = offsets[n - 1] - offsets[0];
    Ok(evaluate_unchecked(kind, &pts).scaled(1.0 / eta))
}

/// Accepted range for finite-difference steps.
pub const FD_STEP_RANGE: (f64, f64) = (1e-8, 1e-4);
pub const DEFAULT_FD_STEP: f64 = 1e-6;

/// Central-difference Jacobian of the rescaled test in the circle
/// parameters; column `i` is the derivative in `q_{i+1}`.
pub fn jacobian<C: Curve + ?Sized>(c: &C, q: &CyclicConfiguration, kind: TestMapKind, h: f64) -> Result<DMatrix<f64>> {
    check_kind(c, q.len(), kind)?;
    if !(FD_STEP_RANGE.0..=FD_STEP_RANGE.1).contains(&h) {
        return Err(PegsError::Contract(format!("finite-difference step {h} outside [1e-8, 1e-4]")));
    }
    Ok(jacobian_raw(c, q.params(), kind, h))
}

pub(crate) fn jacobian_raw<C: Curve + ?Sized>(c: &C, params: &[f64], kind: TestMapKind, h: f64) -> DMatrix<f64> {
    let n = params.len();
    let mut jac = DMatrix::zeros(n, n);
    let mut p = params.to_vec();
    for i in 0..n {
        p[i] = params[i] + h;
        let plus = rescaled_raw(c, &p, kind);
        p[i] = params[i] - h;
        let minus = rescaled_raw(c, &p, kind);
        p[i] = params[i];
        for r in 0..n {
            jac[(r, i)] = (plus.components[r] - minus.components[r]) / (2.0 * h);
        }
    }
    jac
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{Ellipse, HelixChord, UnitCircle};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn p2(x: f64, y: f64) -> Point {
        Point::new(x, y, 0.0)
    }

    #[test]
    fn square_examples() {
        let sq = square_test(&[p2(1.0, 0.0), p2(0.0, 1.0), p2(-1.0, 0.0), p2(0.0, -1.0)]);
        assert!(sq.norm() < 1e-15);
        let v = p2(0.3, -2.0);
        assert_eq!(square_test(&[v, v, v, v]).norm(), 0.0);
        let rect = square_test(&[p2(2.0, 1.0), p2(-2.0, 1.0), p2(-2.0, -1.0), p2(2.0, -1.0)]);
        assert_eq!(rect.components, vec![0.0, 0.0, 0.0, 4.0]);
    }

    #[test]
    fn hexagon_examples() {
        let reg: Vec<Point> = (0..6).map(|k| {
            let a = PI * k as f64 / 3.0;
            p2(a.cos(), a.sin())
        }).collect();
        assert!(evaluate(TestMapKind::AffineHexagon, &reg).unwrap().norm() < 1e-15);
        let a = p2(1.0, 0.0);
        let z = p2(0.0, 0.0);
        assert_eq!(hexagon_test(&[a, a, z, -a, -a, z]).norm(), 0.0);
        let v = hexagon_test(&[p2(1.0, 0.0), p2(0.0, 1.0), p2(-1.0, 0.0), p2(0.0, -1.0), p2(1.0, 0.0), p2(0.0, 1.0)]);
        assert_eq!(v.block("alpha").unwrap(), &[0.0, -2.0]);
    }

    #[test]
    fn hexagon_gamma_identity() {
        let x = [p2(0.3, 1.0), p2(-0.7, 0.2), p2(-1.1, -0.4), p2(0.1, -0.9), p2(0.8, -0.5), p2(1.2, 0.6)];
        let v = hexagon_test(&x);
        let gamma = x[2] + x[5] - x[0] - x[3];
        let g = v.gamma().unwrap();
        assert_abs_diff_eq!(g[0], gamma.x, epsilon = 1e-12);
        assert_abs_diff_eq!(g[1], gamma.y, epsilon = 1e-12);
    }

    #[test]
    fn rhombus_examples() {
        let x = [
            Point::new(0.0, 1.0, FRAC_PI_2),
            Point::new(-1.0, 0.0, PI),
            Point::new(0.0, -1.0, 1.5 * PI),
            Point::new(1.0, 0.0, PI),
        ];
        assert!(rhombus_test(&x).norm() < 1e-15);
        let sq = [p2(1.0, 0.0), p2(0.0, 1.0), p2(-1.0, 0.0), p2(0.0, -1.0)];
        assert!(rhombus_test(&sq).norm() < 1e-15);
        let par = rhombus_test(&[p2(0.0, 0.0), p2(2.0, 0.0), p2(3.0, 1.0), p2(1.0, 1.0)]);
        assert_eq!(par.block("psi1").unwrap(), &[0.0, 0.0, 0.0]);
        assert_abs_diff_eq!(par.block("psi2").unwrap()[0], 4.0 - 2.0 * 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn rescaled_examples() {
        let q = CyclicConfiguration::equally_spaced(4, 0.0);
        assert!(rescaled_test(&UnitCircle, &q, TestMapKind::SquarePeg).unwrap().norm() < 1e-15);

        let e = Ellipse::new(2.0, 1.0).unwrap();
        let q = CyclicConfiguration::new(&[0.4, 1.1, 2.9, 4.0]).unwrap();
        let raw: Vec<Point> = q.params().iter().map(|&t| e.eval(t)).collect();
        let direct = evaluate(TestMapKind::SquarePeg, &raw).unwrap().scaled(1.0 / crate::configspace::eta(&q));
        assert_eq!(rescaled_test(&e, &q, TestMapKind::SquarePeg).unwrap(), direct);
    }

    #[test]
    fn shrinking_cluster_stays_away_from_zero() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let mut norms = Vec::new();
        for eps in [1e-2, 1e-3, 1e-4] {
            let q = CyclicConfiguration::new(&[0.0, eps, 2.0 * eps, 3.0 * eps]).unwrap();
            norms.push(rescaled_test(&e, &q, TestMapKind::SquarePeg).unwrap().norm());
        }
        assert!(norms.iter().all(|&v| v > 0.1));
        let lim = collapse_limit(TestMapKind::SquarePeg, &e.tangent(0.0), &[0.0, 1.0, 2.0, 3.0], 4).unwrap().norm();
        assert!((norms[2] - lim).abs() < 10.0 * 1e-4);
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let q = CyclicConfiguration::equally_spaced(4, 0.0);
        assert!(rescaled_test(&UnitCircle, &q, TestMapKind::Rhombus).is_err());
        assert!(rescaled_test(&HelixChord::default(), &q, TestMapKind::SquarePeg).is_err());
        assert!(rescaled_test(&UnitCircle, &q, TestMapKind::AffineHexagon).is_err());
        assert!(jacobian(&UnitCircle, &q, TestMapKind::SquarePeg, 1e-2).is_err());
    }

    #[test]
    fn collapse_examples() {
        let t = p2(1.0, 0.0);
        let v = collapse_limit(TestMapKind::SquarePeg, &t, &[0.0, 1.0, 2.0, 3.0], 4).unwrap();
        assert_abs_diff_eq!(v.components[0], -1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.components[1], 0.0);
        let v = collapse_limit(TestMapKind::SquarePeg, &t, &[0.0, 1.0, 3.0, 4.0], 4).unwrap();
        assert_abs_diff_eq!(v.components[0], -0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(v.components[3], -1.0, epsilon = 1e-15);
        let t3 = Point::new(0.2, -0.4, 1.0);
        let v = collapse_limit(TestMapKind::Rhombus, &t3, &[0.0, 1.0, 2.0, 3.0], 4).unwrap();
        let want = t3 * (-2.0 / 3.0);
        for k in 0..3 {
            assert_abs_diff_eq!(v.components[k], want[k], epsilon = 1e-15);
        }
        assert!(collapse_limit(TestMapKind::SquarePeg, &t, &[0.0, 1.0, 1.0, 3.0], 4).is_err());
        assert!(collapse_limit(TestMapKind::SquarePeg, &Point::zeros(), &[0.0, 1.0, 2.0, 3.0], 4).is_err());
    }

    #[test]
    fn kind_parsing() {
        for k in TestMapKind::ALL {
            assert_eq!(k.name().parse::<TestMapKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{}\"", k.name()));
        }
        assert!("pentagon".parse::<TestMapKind>().is_err());
    }
}
