//! Coordinates on the space of cyclically ordered points on the circle and
//! numerical diagnostics for its compactification.
//!
//! Point indices in the public API are 1-based, matching stratum labels.

use std::f64::consts::TAU;

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::cyclohedron::{Bracket, StratumLabel};
use crate::error::{PegsError, Result};

/// Minimum gap between consecutive parameters at construction.
pub const DISTINCT_TOL: f64 = 1e-12;

/// Default ratio used by [`classify_stratum`].
pub const DEFAULT_STRATUM_THRESHOLD: f64 = 0.05;

/// Counterclockwise arc length from `p` to `q`, in `[0, 2π)`.
pub fn arc(p: f64, q: f64) -> f64 {
    let d = (q - p).rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if d >= TAU {
        0.0
    } else {
        d
    }
}

fn normalize(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `n >= 3` distinct angles in `[0, 2π)`, met in index order when walking
/// counterclockwise from the first one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclicConfiguration {
    params: Vec<f64>,
}

impl CyclicConfiguration {
    pub fn new(params: &[f64]) -> Result<Self> {
        let n = params.len();
        if n < 3 {
            return Err(PegsError::InvalidConfiguration(format!("need n >= 3 points, got {n}")));
        }
        if params.iter().any(|t| !t.is_finite()) {
            return Err(PegsError::InvalidConfiguration("non-finite parameter".into()));
        }
        let params: Vec<f64> = params.iter().map(|&t| normalize(t)).collect();
        let gaps = gaps_of(&params);
        if let Some(g) = gaps.iter().position(|&g| g <= DISTINCT_TOL) {
            return Err(PegsError::InvalidConfiguration(format!(
                "points {} and {} coincide",
                g + 1,
                (g + 1) % n + 1
            )));
        }
        let winding = gaps.iter().sum::<f64>() / TAU;
        if (winding - 1.0).abs() > 1e-9 {
            return Err(PegsError::InvalidConfiguration(format!(
                "parameters are not cyclically ordered (winding {winding:.3})"
            )));
        }
        Ok(CyclicConfiguration { params })
    }

    /// `n` equally spaced points starting at `offset`.
    pub fn equally_spaced(n: usize, offset: f64) -> Self {
        let params: Vec<f64> = (0..n).map(|k| offset + TAU * k as f64 / n as f64).collect();
        CyclicConfiguration::new(&params).expect("equally spaced points are valid")
    }

    /// Rebuild a configuration from `θ_2, ..., θ_n` and the angle of point 1.
    pub fn from_thetas(anchor: f64, thetas: &[f64]) -> Result<Self> {
        let n = thetas.len() + 1;
        let mut gaps = Vec::with_capacity(n);
        gaps.push(1.0);
        for &th in thetas {
            if !(th > 0.0 && th < 1.0) {
                return Err(PegsError::Contract(format!("theta {th} outside (0, 1)")));
            }
            let prev = *gaps.last().unwrap();
            gaps.push(prev * (1.0 - th) / th);
        }
        let total: f64 = gaps.iter().sum();
        let mut t = anchor;
        let mut params = Vec::with_capacity(n);
        for g in &gaps[..n - 1] {
            params.push(t);
            t += TAU * g / total;
        }
        params.push(t);
        CyclicConfiguration::new(&params)
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    /// Angle of point `i` (1-based).
    pub fn point(&self, i: usize) -> f64 {
        self.params[(i + self.len() - 1) % self.len()]
    }

    /// `gaps()[k]` is the arc from point `k+1` to point `k+2` (cyclically).
    pub fn gaps(&self) -> Vec<f64> {
        gaps_of(&self.params)
    }

    /// Relabel so that point `k+1` becomes point 1.
    pub fn shift_labels(&self, k: usize) -> Self {
        let n = self.len();
        CyclicConfiguration { params: (0..n).map(|i| self.params[(i + k) % n]).collect() }
    }

    /// Add `delta` to every angle.
    pub fn rotate(&self, delta: f64) -> Self {
        CyclicConfiguration { params: self.params.iter().map(|t| normalize(t + delta)).collect() }
    }

    /// The labelling whose first angle is smallest.
    pub fn canonical(&self) -> Self {
        let k = self
            .params
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        self.shift_labels(k)
    }
}

fn gaps_of(params: &[f64]) -> Vec<f64> {
    let n = params.len();
    (0..n).map(|k| arc(params[k], params[(k + 1) % n])).collect()
}

/// `θ_i = ∡(q_{i-1}, q_i) / ∡(q_{i-1}, q_{i+1})`, with `i` 1-based and cyclic.
pub fn theta(q: &CyclicConfiguration, i: usize) -> f64 {
    let n = q.len();
    let gaps = q.gaps();
    // gaps[k] runs from point k+1 to point k+2
    let before = gaps[(i + n - 2) % n];
    let after = gaps[(i + n - 1) % n];
    before / (before + after)
}

/// Barycentric coordinates on a 2-simplex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScreenPoint(pub [f64; 3]);

impl ScreenPoint {
    pub fn coords(&self) -> [f64; 3] {
        self.0
    }
}

/// Relative position of four points `i ≺ j ≺ k ≺ l` (1-based) of `q`.
pub fn screen(q: &CyclicConfiguration, idx: (usize, usize, usize, usize)) -> Result<ScreenPoint> {
    let n = q.len();
    let (i, j, k, l) = idx;
    if [i, j, k, l].iter().any(|&x| x == 0 || x > n) {
        return Err(PegsError::Contract(format!("screen indices {idx:?} out of 1..={n}")));
    }
    let off = |x: usize| (x + n - i) % n;
    if !(off(j) > 0 && off(j) < off(k) && off(k) < off(l)) {
        return Err(PegsError::Contract(format!("screen indices {idx:?} not in cyclic order")));
    }
    let gaps = q.gaps();
    let span = |from: usize, to: usize| -> f64 { (0..off(to) - off(from)).map(|s| gaps[(from - 1 + s) % n]).sum() };
    let (a, b, c) = (span(i, j), span(j, k), span(k, l));
    let d = a + b + c;
    Ok(ScreenPoint([a / d, b / d, c / d]))
}

/// Arc-length diameter: the shortest closed arc containing every point.
pub fn eta(q: &CyclicConfiguration) -> f64 {
    eta_of_gaps(&q.gaps())
}

pub(crate) fn eta_of_gaps(gaps: &[f64]) -> f64 {
    let max = gaps.iter().cloned().fold(0.0, f64::max);
    TAU - max
}

/// `η` for raw (possibly unordered) angles; used on perturbed configurations.
pub(crate) fn eta_raw(params: &[f64]) -> f64 {
    let mut sorted: Vec<f64> = params.iter().map(|&t| normalize(t)).collect();
    sorted.sort_by(f64::total_cmp);
    eta_of_gaps(&gaps_of(&sorted))
}

/// Numerical stand-in for the limit stratification.
///
/// A run of consecutive points forms a proper bracket when its internal
/// diameter is below `ratio_threshold` times the gap to the nearest outside
/// point. When the whole configuration fits in an arc shorter than
/// `ratio_threshold * 2π` a full bracket is emitted, cut at the largest gap.
pub fn classify_stratum(q: &CyclicConfiguration, ratio_threshold: f64) -> StratumLabel {
    let n = q.len();
    let gaps = q.gaps();
    let mut brackets = Vec::new();

    let cut = if eta_of_gaps(&gaps) < ratio_threshold * TAU {
        let (j, _) = gaps
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("n >= 3");
        brackets.push(Bracket::full(j + 1));
        Some(j + 1)
    } else {
        None
    };

    for s in 0..n {
        for len in 2..n {
            let diam: f64 = (0..len - 1).map(|k| gaps[(s + k) % n]).sum();
            let before = gaps[(s + n - 1) % n];
            let after = gaps[(s + len - 1) % n];
            if diam < ratio_threshold * before.min(after) {
                let b = Bracket::proper(s + 1, len);
                let crosses_cut = cut.is_some_and(|c| {
                    let m = b.mask(n);
                    m & (1 << (c - 1)) != 0 && m & (1 << (c % n)) != 0
                });
                if !crosses_cut {
                    brackets.push(b);
                }
            }
        }
    }
    StratumLabel::new(n, brackets).unwrap_or_else(|e| {
        // crossing clusters cannot both pass a ratio test with threshold < 1
        unreachable!("classifier produced an invalid label: {e}")
    })
}

/// Direction of the chord from the circle point at angle `y` to the one at
/// angle `x`, `(x - y)/|x - y|`, extended continuously to `y = x` by the
/// limit `y → x⁺` (the negated unit tangent at `x`).
pub fn chord_direction(x: f64, y: f64) -> Vector2<f64> {
    let d = arc(x, y);
    let m = x + d / 2.0;
    Vector2::new(m.sin(), -m.cos())
}

/// `(q - p)/|q - p|`.
pub fn fmask_alpha(p: &[f64], q: &[f64]) -> Result<Vec<f64>> {
    if p.len() != q.len() {
        return Err(PegsError::Contract("points of different dimension".into()));
    }
    let diff: Vec<f64> = q.iter().zip(p).map(|(a, b)| a - b).collect();
    let norm = diff.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(PegsError::DegenerateInput("alpha of coincident points".into()));
    }
    Ok(diff.into_iter().map(|x| x / norm).collect())
}

/// A ratio in `[0, +∞]` with an explicit infinity tag.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ratio {
    Finite(f64),
    Infinite,
}

/// `|p - q| / |p - r|`.
pub fn fmask_beta(p: &[f64], q: &[f64], r: &[f64]) -> Ratio {
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let den = dist(p, r);
    if den == 0.0 {
        Ratio::Infinite
    } else {
        Ratio::Finite(dist(p, q) / den)
    }
}
