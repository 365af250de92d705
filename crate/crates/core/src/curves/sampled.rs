use std::f64::consts::TAU;
use std::path::Path;

use super::{wrap, Curve, Point};
use crate::error::{PegsError, Result};

/// Closed periodic cubic spline through sample points, knots at cumulative
/// chord length rescaled to `[0, 2π]`.
#[derive(Clone, Debug)]
pub struct SampledCurve {
    dim: usize,
    points: Vec<Point>,
    knots: Vec<f64>,
    /// Second derivatives at the knots, per point.
    second: Vec<Point>,
    name: String,
}

impl SampledCurve {
    pub fn new(points: Vec<Point>, dim: usize) -> Result<Self> {
        let mut points = points;
        if points.len() > 1 && (points[0] - points[points.len() - 1]).norm() == 0.0 {
            points.pop();
        }
        let n = points.len();
        if n < 4 {
            return Err(PegsError::InvalidCurve(format!("sampled curve needs at least 4 distinct points, got {n}")));
        }
        let mut knots = Vec::with_capacity(n + 1);
        knots.push(0.0);
        for i in 0..n {
            let h = (points[(i + 1) % n] - points[i]).norm();
            if h == 0.0 {
                return Err(PegsError::InvalidCurve(format!("repeated sample point at index {i}")));
            }
            knots.push(knots[i] + h);
        }
        let total = knots[n];
        for k in knots.iter_mut() {
            *k *= TAU / total;
        }
        let h: Vec<f64> = (0..n).map(|i| knots[i + 1] - knots[i]).collect();

        let mut second = vec![Point::zeros(); n];
        for axis in 0..3 {
            let y: Vec<f64> = points.iter().map(|p| p[axis]).collect();
            let sub: Vec<f64> = (0..n).map(|i| h[(i + n - 1) % n]).collect();
            let diag: Vec<f64> = (0..n).map(|i| 2.0 * (h[(i + n - 1) % n] + h[i])).collect();
            let sup: Vec<f64> = h.clone();
            let rhs: Vec<f64> = (0..n)
                .map(|i| {
                    let ip = (i + 1) % n;
                    let im = (i + n - 1) % n;
                    6.0 * ((y[ip] - y[i]) / h[i] - (y[i] - y[im]) / h[im])
                })
                .collect();
            let m = solve_cyclic_tridiagonal(&sub, &diag, &sup, &rhs);
            for i in 0..n {
                second[i][axis] = m[i];
            }
        }
        Ok(SampledCurve { dim, points, knots, second, name: "sampled".into() })
    }

    /// CSV with one `x,y[,z]` point per line; `#` starts a comment line.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut pts = Vec::new();
        let mut dim = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let vals: std::result::Result<Vec<f64>, _> = line.split(',').map(|s| s.trim().parse::<f64>()).collect();
            let vals = vals.map_err(|e| PegsError::Parse(format!("line {}: {e}", lineno + 1)))?;
            if !(2..=3).contains(&vals.len()) {
                return Err(PegsError::Parse(format!("line {}: expected 2 or 3 coordinates", lineno + 1)));
            }
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(PegsError::Parse(format!("line {}: non-finite coordinate", lineno + 1)));
            }
            match dim {
                None => dim = Some(vals.len()),
                Some(d) if d != vals.len() => {
                    return Err(PegsError::Parse(format!("line {}: mixed 2-D and 3-D points", lineno + 1)))
                }
                _ => {}
            }
            pts.push(Point::new(vals[0], vals[1], vals.get(2).copied().unwrap_or(0.0)));
        }
        let dim = dim.ok_or_else(|| PegsError::Parse("no points in curve file".into()))?;
        SampledCurve::new(pts, dim)
    }

    pub fn from_csv_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut c = SampledCurve::parse_csv(&text)?;
        c.name = format!("file:{}", path.display());
        Ok(c)
    }

    pub fn sample_points(&self) -> &[Point] {
        &self.points
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    fn segment(&self, t: f64) -> (usize, f64, f64) {
        let t = wrap(t);
        let n = self.points.len();
        let i = match self.knots.binary_search_by(|k| k.total_cmp(&t)) {
            Ok(i) => i,
            Err(i) => i - 1,
        }
        .min(n - 1);
        let h = self.knots[i + 1] - self.knots[i];
        (i, t - self.knots[i], h)
    }
}

impl Curve for SampledCurve {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, t: f64) -> Point {
        let (i, a, h) = self.segment(t);
        let j = (i + 1) % self.points.len();
        let b = h - a;
        let (mi, mj) = (self.second[i], self.second[j]);
        mi * (b * b * b / (6.0 * h))
            + mj * (a * a * a / (6.0 * h))
            + (self.points[i] / h - mi * (h / 6.0)) * b
            + (self.points[j] / h - mj * (h / 6.0)) * a
    }

    fn tangent(&self, t: f64) -> Point {
        let (i, a, h) = self.segment(t);
        let j = (i + 1) % self.points.len();
        let b = h - a;
        let (mi, mj) = (self.second[i], self.second[j]);
        -mi * (b * b / (2.0 * h)) + mj * (a * a / (2.0 * h)) - (self.points[i] / h - mi * (h / 6.0))
            + (self.points[j] / h - mj * (h / 6.0))
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}

/// Solve a cyclic tridiagonal system (Sherman–Morrison on top of Thomas).
/// Row `i` reads `sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]`.
pub(crate) fn solve_cyclic_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let gamma = -diag[0];
    let mut b = diag.to_vec();
    b[0] -= gamma;
    b[n - 1] -= sup[n - 1] * sub[0] / gamma;
    let x = thomas(sub, &b, sup, rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = sup[n - 1];
    let z = thomas(sub, &b, sup, &u);
    let vx = x[0] + sub[0] / gamma * x[n - 1];
    let vz = z[0] + sub[0] / gamma * z[n - 1];
    let f = vx / (1.0 + vz);
    x.iter().zip(&z).map(|(xi, zi)| xi - f * zi).collect()
}

fn thomas(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - sub[i] * c[i - 1];
        c[i] = sup[i] / m;
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}
