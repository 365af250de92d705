use std::f64::consts::TAU;

use nalgebra::Vector2;

use super::{wrap, Curve, Point};
use crate::error::{PegsError, Result};

#[derive(Clone, Debug)]
enum Piece {
    Line { start: Vector2<f64>, dir: Vector2<f64> },
    Arc { center: Vector2<f64>, radius: f64, start_angle: f64, sweep: f64 },
}

/// A polygon whose corners are replaced by circular arcs of radius `rho`
/// tangent to both adjacent edges. Parametrized proportionally to arc length.
#[derive(Clone, Debug)]
pub struct RoundedPolygon {
    vertices: Vec<Vector2<f64>>,
    rho: f64,
    pieces: Vec<Piece>,
    /// `offsets[k]` is the arc length at which piece `k` starts; last entry is the total.
    offsets: Vec<f64>,
}

impl RoundedPolygon {
    /// Clockwise vertex lists are reversed so the curve runs counterclockwise.
    pub fn new(vertices: &[[f64; 2]], rho: f64) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(PegsError::InvalidCurve("rounded polygon needs at least 3 vertices".into()));
        }
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(PegsError::InvalidCurve(format!("corner radius must be positive, got {rho}")));
        }
        let mut vs: Vec<Vector2<f64>> = vertices.iter().map(|v| Vector2::new(v[0], v[1])).collect();
        let area2: f64 = (0..n).map(|i| vs[i].perp(&vs[(i + 1) % n])).sum();
        if area2 < 0.0 {
            log::info!("rounded polygon given clockwise; reversing vertex order");
            vs.reverse();
        }

        let edge = |i: usize| vs[(i + 1) % n] - vs[i];
        let shortest = (0..n).map(|i| edge(i).norm()).fold(f64::INFINITY, f64::min);
        if !(shortest > 0.0) {
            return Err(PegsError::InvalidCurve("polygon has a zero-length edge".into()));
        }
        if rho >= shortest / 2.0 {
            return Err(PegsError::InvalidCurve(format!(
                "corner radius {rho} must be below half the shortest edge ({})",
                shortest / 2.0
            )));
        }

        // signed turning angle and tangent setback at each vertex
        let mut turn = vec![0.0; n];
        let mut setback = vec![0.0; n];
        for i in 0..n {
            let din = edge((i + n - 1) % n).normalize();
            let dout = edge(i).normalize();
            let tau = din.perp(&dout).atan2(din.dot(&dout));
            if (tau.abs() - std::f64::consts::PI).abs() < 1e-9 {
                return Err(PegsError::InvalidCurve(format!("polygon folds back at vertex {i}")));
            }
            turn[i] = tau;
            setback[i] = rho * (tau.abs() / 2.0).tan();
        }

        let mut pieces = Vec::with_capacity(2 * n);
        let mut lengths = Vec::with_capacity(2 * n);
        for i in 0..n {
            let j = (i + 1) % n;
            let e = edge(i);
            let len = e.norm();
            let dir = e / len;
            let straight = len - setback[i] - setback[j];
            if straight <= 0.0 {
                return Err(PegsError::InvalidCurve(format!(
                    "corner radius {rho} too large for edge {i} (arcs overlap)"
                )));
            }
            pieces.push(Piece::Line { start: vs[i] + dir * setback[i], dir });
            lengths.push(straight);

            if turn[j] != 0.0 {
                let entry = vs[j] - dir * setback[j];
                let normal = if turn[j] > 0.0 { Vector2::new(-dir.y, dir.x) } else { Vector2::new(dir.y, -dir.x) };
                let center = entry + normal * rho;
                let r = entry - center;
                pieces.push(Piece::Arc { center, radius: rho, start_angle: r.y.atan2(r.x), sweep: turn[j] });
                lengths.push(rho * turn[j].abs());
            }
        }
        let mut offsets = Vec::with_capacity(lengths.len() + 1);
        let mut acc = 0.0;
        offsets.push(0.0);
        for l in lengths {
            acc += l;
            offsets.push(acc);
        }
        Ok(RoundedPolygon { vertices: vs, rho, pieces, offsets })
    }

    /// Equilateral triangle inscribed in the unit circle, first vertex at `(1, 0)`.
    pub fn equilateral_triangle(rho: f64) -> Result<Self> {
        let v: Vec<[f64; 2]> = (0..3)
            .map(|k| {
                let a = TAU * k as f64 / 3.0;
                [a.cos(), a.sin()]
            })
            .collect();
        RoundedPolygon::new(&v, rho)
    }

    pub fn vertices(&self) -> Vec<[f64; 2]> {
        self.vertices.iter().map(|v| [v.x, v.y]).collect()
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn perimeter(&self) -> f64 {
        *self.offsets.last().unwrap()
    }

    /// Curve parameter of the point at arc length `s` from the start.
    pub fn param_at_length(&self, s: f64) -> f64 {
        TAU * s / self.perimeter()
    }

    /// Curve parameter of the point `v_i + f (v_{i+1} - v_i)` on edge `i`.
    /// Only valid on the straight part of the edge.
    pub fn param_on_edge(&self, i: usize, f: f64) -> Option<f64> {
        // straight parts are pieces with Line kind in vertex order
        let (k, start, dir) = self
            .pieces
            .iter()
            .enumerate()
            .filter_map(|(k, p)| match p {
                Piece::Line { start, dir } => Some((k, *start, *dir)),
                _ => None,
            })
            .nth(i)?;
        let n = self.vertices.len();
        let target = self.vertices[i] + (self.vertices[(i + 1) % n] - self.vertices[i]) * f;
        let along = (target - start).dot(&dir);
        let len = self.offsets[k + 1] - self.offsets[k];
        (0.0..=len).contains(&along).then(|| self.param_at_length(self.offsets[k] + along))
    }

    fn locate(&self, t: f64) -> (usize, f64) {
        let s = wrap(t) / TAU * self.perimeter();
        let k = match self.offsets.binary_search_by(|o| o.total_cmp(&s)) {
            Ok(k) => k,
            Err(k) => k - 1,
        }
        .min(self.pieces.len() - 1);
        (k, s - self.offsets[k])
    }
}

impl Curve for RoundedPolygon {
    fn dim(&self) -> usize {
        2
    }

    fn eval(&self, t: f64) -> Point {
        let (k, ds) = self.locate(t);
        let p = match &self.pieces[k] {
            Piece::Line { start, dir } => start + dir * ds,
            Piece::Arc { center, radius, start_angle, sweep } => {
                let a = start_angle + sweep.signum() * ds / radius;
                center + Vector2::new(a.cos(), a.sin()) * *radius
            }
        };
        Point::new(p.x, p.y, 0.0)
    }

    fn tangent(&self, t: f64) -> Point {
        let (k, ds) = self.locate(t);
        let speed = self.perimeter() / TAU;
        let d = match &self.pieces[k] {
            Piece::Line { dir, .. } => *dir,
            Piece::Arc { radius, start_angle, sweep, .. } => {
                let a = start_angle + sweep.signum() * ds / radius;
                Vector2::new(-a.sin(), a.cos()) * sweep.signum()
            }
        };
        Point::new(d.x * speed, d.y * speed, 0.0)
    }

    fn describe(&self) -> String {
        let vs: Vec<String> = self.vertices.iter().map(|v| format!("{},{}", v.x, v.y)).collect();
        format!("rounded-poly:{}@{}", vs.join(";"), self.rho)
    }
}
