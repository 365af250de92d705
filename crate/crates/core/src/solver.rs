//! Zero finding for the rescaled test maps: a scan over cyclically ordered
//! grid tuples, damped Newton refinement from the scan minima, and
//! deduplication of the cyclic relabelling orbits.

use std::f64::consts::TAU;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::configspace::{arc, classify_stratum, CyclicConfiguration, DEFAULT_STRATUM_THRESHOLD};
use crate::curves::{check_embedding, Curve, Point};
use crate::cyclohedron::StratumLabel;
use crate::error::{PegsError, Result};
use crate::testmaps::{evaluate_unchecked, jacobian_raw, rescaled_raw, TestMapKind, DEFAULT_FD_STEP, FD_STEP_RANGE};

/// Upper bound on the number of grid tuples a scan may visit.
pub const MAX_GRID_CONFIGS: u64 = 20_000_000;
/// Jacobians with a larger condition number count as singular.
pub const CONDITION_LIMIT: f64 = 1e12;
/// Relative smallest singular value below which a hexagon counts as collinear.
pub const COLLINEAR_RATIO: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveOptions {
    pub grid: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub fd_step: f64,
    pub stratum_threshold: f64,
    /// Scan threshold as a fraction of the median grid residual.
    pub scan_ratio: f64,
    pub dedup_tol: f64,
    /// Keep at most this many scan minima (lowest residual first).
    pub max_candidates: usize,
    /// Hold parameter `pin` (1-based) fixed during Newton, for curves whose
    /// zeros come in rotation families.
    pub pin: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            grid: 32,
            tol: 1e-10,
            max_iter: 50,
            fd_step: DEFAULT_FD_STEP,
            stratum_threshold: DEFAULT_STRATUM_THRESHOLD,
            scan_ratio: 0.5,
            dedup_tol: 1e-6,
            max_candidates: 4096,
            pin: None,
        }
    }
}

impl SolveOptions {
    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = |msg: String| Err(PegsError::Contract(msg));
        if self.grid < 8 {
            return bad(format!("grid resolution {} below 8", self.grid));
        }
        if !(self.tol > 0.0) {
            return bad(format!("tolerance must be positive, got {}", self.tol));
        }
        if !(FD_STEP_RANGE.0..=FD_STEP_RANGE.1).contains(&self.fd_step) {
            return bad(format!("finite-difference step {} outside [1e-8, 1e-4]", self.fd_step));
        }
        if !(self.stratum_threshold > 0.0 && self.stratum_threshold < 1.0) {
            return bad(format!("stratum threshold {} outside (0, 1)", self.stratum_threshold));
        }
        if !(self.scan_ratio > 0.0) {
            return bad(format!("scan ratio must be positive, got {}", self.scan_ratio));
        }
        if let Some(p) = self.pin {
            if p == 0 || p > n {
                return bad(format!("pinned index {p} outside 1..={n}"));
            }
        }
        Ok(())
    }
}

/// A grid tuple that is a local minimum of the label-invariant residual.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate {
    /// Strictly increasing grid indices in `0..m`.
    pub indices: Vec<usize>,
    pub params: Vec<f64>,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroCertificate {
    #[serde(flatten)]
    pub config: CyclicConfiguration,
    /// Vertices in the ambient space of the curve.
    pub points: Vec<Vec<f64>>,
    pub residual: f64,
    pub det_sign: i8,
    pub det: f64,
    pub condition_estimate: f64,
    #[serde(serialize_with = "rows")]
    pub jacobian: DMatrix<f64>,
    #[serde(serialize_with = "display")]
    pub stratum: StratumLabel,
}

fn rows<S: Serializer>(m: &DMatrix<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let r: Vec<Vec<f64>> = m.row_iter().map(|row| row.iter().copied().collect()).collect();
    r.serialize(s)
}

fn display<S: Serializer, T: fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq)]
pub enum NewtonFailure {
    InvalidSeed(String),
    NearDegenerate { condition: f64 },
    OrderViolation,
    PseudoSolution { stratum: StratumLabel },
    NoConvergence { residual: f64 },
    /// Converged onto six collinear points.
    DegenerateHexagon(Box<ZeroCertificate>),
}

impl NewtonFailure {
    pub fn tag(&self) -> &'static str {
        match self {
            NewtonFailure::InvalidSeed(_) => "invalid-seed",
            NewtonFailure::NearDegenerate { .. } => "near-degenerate",
            NewtonFailure::OrderViolation => "order-violation",
            NewtonFailure::PseudoSolution { .. } => "pseudo-solution",
            NewtonFailure::NoConvergence { .. } => "no-convergence",
            NewtonFailure::DegenerateHexagon(_) => "degenerate-hexagon",
        }
    }
}

impl fmt::Display for NewtonFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NewtonFailure::InvalidSeed(m) => write!(f, "invalid-seed: {m}"),
            NewtonFailure::NearDegenerate { condition } => write!(f, "near-degenerate: condition {condition:e}"),
            NewtonFailure::OrderViolation => f.write_str("order-violation"),
            NewtonFailure::PseudoSolution { stratum } => write!(f, "pseudo-solution: stratum {stratum}"),
            NewtonFailure::NoConvergence { residual } => write!(f, "no-convergence: residual {residual:e}"),
            NewtonFailure::DegenerateHexagon(_) => f.write_str("degenerate-hexagon"),
        }
    }
}

impl PartialEq for ZeroCertificate {
    fn eq(&self, o: &Self) -> bool {
        self.config == o.config && self.residual == o.residual && self.jacobian == o.jacobian
    }
}

fn binomials(m: usize, n: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; n + 1]; m + 1];
    for a in 0..=m {
        t[a][0] = 1;
        for b in 1..=n.min(a) {
            t[a][b] = t[a - 1][b - 1].saturating_add(if b < a { t[a - 1][b] } else { 0 });
        }
    }
    t
}

fn rank(idx: &[usize], binom: &[Vec<u64>]) -> u64 {
    idx.iter().enumerate().map(|(k, &i)| binom[i][k + 1]).sum()
}

fn unrank(mut r: u64, n: usize, m: usize, binom: &[Vec<u64>]) -> Vec<usize> {
    let mut idx = vec![0; n];
    for k in (1..=n).rev() {
        // largest c in k-1..m with C(c, k) <= r
        let (mut lo, mut hi) = (k - 1, m);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if binom[mid][k] <= r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let c = lo;
        idx[k - 1] = c;
        r -= binom[c][k];
    }
    idx
}

/// Advance to the next strictly increasing tuple in colexicographic order.
fn next_colex(idx: &mut [usize], m: usize) -> bool {
    let n = idx.len();
    for j in 0..n {
        let limit = if j + 1 < n { idx[j + 1] } else { m };
        if idx[j] + 1 < limit {
            idx[j] += 1;
            for (i, v) in idx.iter_mut().enumerate().take(j) {
                *v = i;
            }
            return true;
        }
    }
    false
}

fn grid_residual(kind: TestMapKind, pts: &[Point], idx: &[usize], m: usize, buf: &mut Vec<Point>) -> f64 {
    let n = idx.len();
    buf.clear();
    buf.extend(idx.iter().map(|&i| pts[i]));
    let max_gap = (0..n).map(|k| (idx[(k + 1) % n] + m - idx[k]) % m).max().unwrap_or(0);
    let eta = TAU * (m - max_gap) as f64 / m as f64;
    evaluate_unchecked(kind, buf).scaled(1.0 / eta).invariant_norm()
}

fn check_dims<C: Curve + ?Sized>(c: &C, kind: TestMapKind) -> Result<()> {
    if c.dim() != kind.ambient_dim() {
        return Err(PegsError::Contract(format!(
            "{kind} search needs a curve in R^{}, got R^{}",
            kind.ambient_dim(),
            c.dim()
        )));
    }
    Ok(())
}

/// Scan with default thresholds.
pub fn grid_scan<C: Curve + ?Sized>(c: &C, kind: TestMapKind, m: usize) -> Result<Vec<Candidate>> {
    let opts = SolveOptions { grid: m, ..SolveOptions::default() };
    scan(c, kind, &opts)
}

fn scan<C: Curve + ?Sized>(c: &C, kind: TestMapKind, opts: &SolveOptions) -> Result<Vec<Candidate>> {
    let (m, n) = (opts.grid, kind.points());
    if m < 8 {
        return Err(PegsError::Contract(format!("grid resolution {m} below 8")));
    }
    check_dims(c, kind)?;
    let binom = binomials(m, n);
    let total = binom[m][n];
    if total > MAX_GRID_CONFIGS {
        return Err(PegsError::Contract(format!(
            "grid {m} gives {total} {kind} configurations (limit {MAX_GRID_CONFIGS})"
        )));
    }
    let pts: Vec<Point> = (0..m).map(|k| c.eval(TAU * k as f64 / m as f64)).collect();

    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let values: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut idx = unrank(start, n, m, &binom);
            let mut buf = Vec::with_capacity(n);
            let mut out = Vec::with_capacity((end - start) as usize);
            for r in start..end {
                out.push(grid_residual(kind, &pts, &idx, m, &mut buf));
                if r + 1 < end {
                    next_colex(&mut idx, m);
                }
            }
            out
        })
        .collect::<Vec<Vec<f64>>>()
        .concat();

    let mut sorted = values.clone();
    let mid = sorted.len() / 2;
    sorted.select_nth_unstable_by(mid, f64::total_cmp);
    let threshold = opts.scan_ratio * sorted[mid];

    let is_local_min = |r: u64| -> bool {
        let v = values[r as usize];
        let idx = unrank(r, n, m, &binom);
        for j in 0..n {
            for d in [1, m - 1] {
                let w = (idx[j] + d) % m;
                if idx.contains(&w) {
                    continue;
                }
                let mut nb = idx.clone();
                nb[j] = w;
                nb.sort_unstable();
                if values[rank(&nb, &binom) as usize] < v {
                    return false;
                }
            }
        }
        true
    };
    let mut minima: Vec<u64> =
        (0..total).into_par_iter().filter(|&r| values[r as usize] < threshold && is_local_min(r)).collect();
    log::debug!("{kind} scan on grid {m}: {total} tuples, threshold {threshold:.3e}, {} minima", minima.len());
    if minima.len() > opts.max_candidates {
        log::warn!("keeping the best {} of {} scan minima", opts.max_candidates, minima.len());
        minima.sort_by(|a, b| values[*a as usize].total_cmp(&values[*b as usize]).then(a.cmp(b)));
        minima.truncate(opts.max_candidates);
        minima.sort_unstable();
    }
    Ok(minima
        .into_iter()
        .map(|r| {
            let indices = unrank(r, n, m, &binom);
            let params = indices.iter().map(|&i| TAU * i as f64 / m as f64).collect();
            Candidate { indices, params, residual: values[r as usize] }
        })
        .collect())
}

fn condition(singular: &DVector<f64>) -> f64 {
    let max = singular.max();
    let min = singular.min();
    if min > 0.0 {
        max / min
    } else {
        f64::INFINITY
    }
}

/// Build the certificate data at `q` without judging it.
pub fn certify<C: Curve + ?Sized>(c: &C, kind: TestMapKind, q: &CyclicConfiguration, opts: &SolveOptions) -> ZeroCertificate {
    let p = q.params();
    let value = rescaled_raw(c, p, kind);
    let jacobian = jacobian_raw(c, p, kind, opts.fd_step);
    let det = jacobian.determinant();
    let condition_estimate = condition(&jacobian.singular_values());
    let dim = c.dim();
    ZeroCertificate {
        config: q.clone(),
        points: p.iter().map(|&t| c.eval(t).as_slice()[..dim].to_vec()).collect(),
        residual: value.norm(),
        det_sign: if det > 0.0 {
            1
        } else if det < 0.0 {
            -1
        } else {
            0
        },
        det,
        condition_estimate,
        jacobian,
        stratum: classify_stratum(q, opts.stratum_threshold),
    }
}

/// Whether the vertices of a certificate lie on one line.
pub fn is_collinear(points: &[Vec<f64>]) -> bool {
    let n = points.len();
    let d = points[0].len();
    let mean: Vec<f64> = (0..d).map(|k| points.iter().map(|p| p[k]).sum::<f64>() / n as f64).collect();
    let m = DMatrix::from_fn(n, d, |i, k| points[i][k] - mean[k]);
    let sv = m.singular_values();
    // a planar point set is collinear when the second singular value vanishes
    let mut s: Vec<f64> = sv.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s.len() < 2 || s[1] < COLLINEAR_RATIO * s[0]
}

/// Damped Newton on the rescaled test map starting from `seed`.
pub fn newton_refine<C: Curve + ?Sized>(
    c: &C,
    kind: TestMapKind,
    seed: &[f64],
    opts: &SolveOptions,
) -> std::result::Result<ZeroCertificate, NewtonFailure> {
    let n = kind.points();
    if seed.len() != n {
        return Err(NewtonFailure::InvalidSeed(format!("{kind} needs {n} parameters, got {}", seed.len())));
    }
    check_dims(c, kind).map_err(|e| NewtonFailure::InvalidSeed(e.to_string()))?;
    opts.validate(n).map_err(|e| NewtonFailure::InvalidSeed(e.to_string()))?;
    let q0 = CyclicConfiguration::new(seed).map_err(|e| NewtonFailure::InvalidSeed(e.to_string()))?;
    let s0 = classify_stratum(&q0, opts.stratum_threshold);
    if !s0.is_interior() {
        return Err(NewtonFailure::PseudoSolution { stratum: s0 });
    }

    let free: Vec<usize> = (0..n).filter(|&i| opts.pin != Some(i + 1)).collect();
    let mut p = seed.to_vec();
    let mut f = rescaled_raw(c, &p, kind);
    let mut r = f.norm();
    let mut polished = false;
    for _ in 0..opts.max_iter {
        if r < opts.tol {
            // one more step to leave headroom below the tolerance
            if polished {
                break;
            }
            polished = true;
        }
        let j = jacobian_raw(c, &p, kind, opts.fd_step).select_columns(free.iter());
        let svd = j.svd(true, true);
        let cond = condition(&svd.singular_values);
        if cond > CONDITION_LIMIT {
            if r < opts.tol {
                break;
            }
            return Err(NewtonFailure::NearDegenerate { condition: cond });
        }
        let rhs = -DVector::from_column_slice(&f.components);
        let dx = svd.solve(&rhs, 0.0).expect("svd computed with u and v");

        let mut step = 1.0;
        let mut accepted = false;
        let mut full_step_blocked = false;
        for attempt in 0..40 {
            let mut trial = p.clone();
            for (k, &i) in free.iter().enumerate() {
                trial[i] += step * dx[k];
            }
            if CyclicConfiguration::new(&trial).is_err() {
                full_step_blocked |= attempt == 0;
                step *= 0.5;
                continue;
            }
            let ft = rescaled_raw(c, &trial, kind);
            let rt = ft.norm();
            if rt < r {
                p = trial;
                f = ft;
                r = rt;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            if r < opts.tol {
                break;
            }
            return Err(if full_step_blocked {
                NewtonFailure::OrderViolation
            } else {
                NewtonFailure::NoConvergence { residual: r }
            });
        }
    }
    if !(r < opts.tol) {
        return Err(NewtonFailure::NoConvergence { residual: r });
    }
    let q = CyclicConfiguration::new(&p).map_err(|_| NewtonFailure::OrderViolation)?.canonical();
    let cert = certify(c, kind, &q, opts);
    if !cert.stratum.is_interior() {
        return Err(NewtonFailure::PseudoSolution { stratum: cert.stratum });
    }
    if kind == TestMapKind::AffineHexagon && is_collinear(&cert.points) {
        return Err(NewtonFailure::DegenerateHexagon(Box::new(cert)));
    }
    Ok(cert)
}

fn circular_distance(x: f64, y: f64) -> f64 {
    arc(x, y).min(arc(y, x))
}

/// Largest angular distance between matched points, minimised over cyclic
/// relabellings of `b`.
pub fn orbit_distance(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    if n != b.len() {
        return f64::INFINITY;
    }
    (0..n)
        .map(|k| (0..n).map(|i| circular_distance(a[i], b[(i + k) % n])).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
}

/// One representative per orbit of the cyclic relabelling action, the one
/// with the lexicographically smallest parameter tuple.
pub fn dedup_orbits(mut zeros: Vec<ZeroCertificate>, tol: f64) -> Vec<ZeroCertificate> {
    zeros.sort_by(|a, b| {
        a.config
            .params()
            .iter()
            .zip(b.config.params())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut reps: Vec<ZeroCertificate> = Vec::new();
    for z in zeros {
        if !reps.iter().any(|r| orbit_distance(r.config.params(), z.config.params()) <= tol) {
            reps.push(z);
        }
    }
    reps
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FailureTally {
    pub invalid_seed: usize,
    pub near_degenerate: usize,
    pub order_violation: usize,
    pub no_convergence: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub kind: TestMapKind,
    pub curve: String,
    pub orbits: Vec<ZeroCertificate>,
    pub mod2_count: u8,
    pub rejected_pseudo: usize,
    /// Sum of `det_sign` over orbit representatives in canonical labelling.
    pub signed_count: i64,
    pub degenerate_hexagons: Vec<ZeroCertificate>,
    pub candidates: usize,
    pub failures: FailureTally,
    pub options: SolveOptions,
}

/// Scan, refine every scan minimum and collect one zero per orbit.
pub fn solve<C: Curve + ?Sized>(c: &C, kind: TestMapKind, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate(kind.points())?;
    check_dims(c, kind)?;
    let emb = check_embedding(c);
    if !emb.ok() {
        return Err(PegsError::InvalidCurve(emb.failures.join("; ")));
    }
    let candidates = scan(c, kind, opts)?;
    let results: Vec<std::result::Result<ZeroCertificate, NewtonFailure>> =
        candidates.par_iter().map(|cd| newton_refine(c, kind, &cd.params, opts)).collect();

    let mut zeros = Vec::new();
    let mut degenerate = Vec::new();
    let mut tally = FailureTally::default();
    let mut rejected_pseudo = 0;
    for res in results {
        match res {
            Ok(z) => zeros.push(z),
            Err(NewtonFailure::PseudoSolution { .. }) => rejected_pseudo += 1,
            Err(NewtonFailure::DegenerateHexagon(z)) => degenerate.push(*z),
            Err(NewtonFailure::InvalidSeed(_)) => tally.invalid_seed += 1,
            Err(NewtonFailure::NearDegenerate { .. }) => tally.near_degenerate += 1,
            Err(NewtonFailure::OrderViolation) => tally.order_violation += 1,
            Err(NewtonFailure::NoConvergence { .. }) => tally.no_convergence += 1,
        }
    }
    let orbits = dedup_orbits(zeros, opts.dedup_tol);
    let degenerate_hexagons = dedup_orbits(degenerate, opts.dedup_tol);
    log::info!(
        "{kind} on {}: {} candidates, {} orbits, {rejected_pseudo} pseudo-solutions rejected",
        c.describe(),
        candidates.len(),
        orbits.len()
    );
    Ok(SolveReport {
        kind,
        curve: c.describe(),
        mod2_count: (orbits.len() % 2) as u8,
        signed_count: orbits.iter().map(|z| z.det_sign as i64).sum(),
        orbits,
        rejected_pseudo,
        degenerate_hexagons,
        candidates: candidates.len(),
        failures: tally,
        options: opts.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{Ellipse, UnitCircle};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn rank_unrank_roundtrip() {
        let (m, n) = (9, 4);
        let b = binomials(m, n);
        let mut idx: Vec<usize> = (0..n).collect();
        let mut r = 0;
        loop {
            assert_eq!(rank(&idx, &b), r);
            assert_eq!(unrank(r, n, m, &b), idx);
            r += 1;
            if !next_colex(&mut idx, m) {
                break;
            }
        }
        assert_eq!(r, b[m][n]);
        assert_eq!(b[m][n], 126);
    }

    #[test]
    fn circle_scan_hits_equal_spacing() {
        let cands = grid_scan(&UnitCircle, TestMapKind::SquarePeg, 16).unwrap();
        assert!(cands.iter().any(|c| orbit_distance(&c.params, &[0.0, FRAC_PI_2, PI, 1.5 * PI]) < TAU / 16.0 + 1e-12));
        assert!(grid_scan(&UnitCircle, TestMapKind::SquarePeg, 7).is_err());
    }

    #[test]
    fn circle_newton_with_pin() {
        let opts = SolveOptions { pin: Some(1), ..SolveOptions::default() };
        let seed = [0.05, FRAC_PI_2 + 0.05, PI + 0.05, 1.5 * PI + 0.05];
        let perturbed = [seed[0], seed[1] + 0.03, seed[2] - 0.04, seed[3] + 0.02];
        let z = newton_refine(&UnitCircle, TestMapKind::SquarePeg, &perturbed, &opts).unwrap();
        assert!(z.residual < 1e-10);
        for g in z.config.gaps() {
            assert!((g - FRAC_PI_2).abs() < 1e-9);
        }
    }

    #[test]
    fn collapsed_seed_is_pseudo() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let r = newton_refine(&e, TestMapKind::SquarePeg, &[0.0, 1e-2, 2e-2, 3e-2], &SolveOptions::default());
        assert_eq!(r.unwrap_err().tag(), "pseudo-solution");
    }

    #[test]
    fn dedup_examples() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let opts = SolveOptions::default();
        let t = (2.0f64).atan();
        let z = newton_refine(&e, TestMapKind::SquarePeg, &[t, PI - t, PI + t, TAU - t], &opts).unwrap();
        let copies: Vec<ZeroCertificate> = (0..4)
            .map(|k| certify(&e, TestMapKind::SquarePeg, &z.config.shift_labels(k), &opts))
            .collect();
        let reps = dedup_orbits(copies, 1e-6);
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].config, z.config);
        assert!(dedup_orbits(Vec::new(), 1e-6).is_empty());
    }

    #[test]
    fn options_validation() {
        let o = SolveOptions { fd_step: 1.0, ..SolveOptions::default() };
        assert!(o.validate(4).is_err());
        let o = SolveOptions { pin: Some(5), ..SolveOptions::default() };
        assert!(o.validate(4).is_err());
        assert!(SolveOptions::default().validate(4).is_ok());
    }

    #[test]
    fn collinear_detection() {
        let line: Vec<Vec<f64>> = (0..6).map(|k| vec![k as f64, 2.0 * k as f64]).collect();
        assert!(is_collinear(&line));
        let hex: Vec<Vec<f64>> = (0..6).map(|k| {
            let a = PI * k as f64 / 3.0;
            vec![a.cos(), a.sin()]
        }).collect();
        assert!(!is_collinear(&hex));
    }
}
