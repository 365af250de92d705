use std::f64::consts::{FRAC_PI_2, PI, TAU};

use pegs_core::configspace::CyclicConfiguration;
use pegs_core::curves::{Curve, Ellipse, HelixChord, Parametric, Point, RoundedPolygon};
use pegs_core::solver::{certify, dedup_orbits, solve, SolveOptions, SolveReport};
use pegs_core::testmaps::{rescaled_test, TestMapKind};

/// Root of `a cos t - b sin t` on `(0, π/2)` by bisection: the parameter of
/// the square vertex in the first quadrant.
fn ellipse_square_param(a: f64, b: f64) -> f64 {
    let g = |t: f64| a * t.cos() - b * t.sin();
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn assert_recomputes<C: Curve>(c: &C, report: &SolveReport) {
    for z in &report.orbits {
        let r = rescaled_test(c, &z.config, report.kind).unwrap().norm();
        assert!(r < report.options.tol, "recomputed residual {r}");
        assert!(z.stratum.is_interior());
    }
}

#[test]
fn ellipse_has_one_square_orbit() {
    for (a, b) in [(2.0, 1.0), (3.0, 1.0), (1.5, 1.0)] {
        let e = Ellipse::new(a, b).unwrap();
        let rep = solve(&e, TestMapKind::SquarePeg, &SolveOptions::default()).unwrap();
        assert_eq!(rep.orbits.len(), 1, "ellipse {a},{b}");
        assert_eq!(rep.mod2_count, 1);
        assert_recomputes(&e, &rep);

        let t = ellipse_square_param(a, b);
        let want = [t, PI - t, PI + t, TAU - t];
        let got = rep.orbits[0].config.params();
        for k in 0..4 {
            assert!((got[k] - want[k]).abs() < 1e-8, "{got:?} vs {want:?}");
        }
        // the parameter set is fixed by both axis reflections
        for reflect in [|t: f64| TAU - t, |t: f64| (PI - t).rem_euclid(TAU)] {
            let mut img: Vec<f64> = got.iter().map(|&t| reflect(t)).collect();
            img.sort_by(f64::total_cmp);
            for k in 0..4 {
                assert!((img[k] - got[k]).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn det_sign_stable_under_step_halving() {
    let e = Ellipse::new(2.0, 1.0).unwrap();
    let rep = solve(&e, TestMapKind::SquarePeg, &SolveOptions::default()).unwrap();
    let z = &rep.orbits[0];
    let half = SolveOptions { fd_step: 5e-7, ..SolveOptions::default() };
    let z2 = certify(&e, TestMapKind::SquarePeg, &z.config, &half);
    assert_eq!(z.det_sign, z2.det_sign);
    assert!(z.det_sign != 0);
}

/// Two points per side, placed at fractions `a < b` along each side with the
/// same fractions on every side; solve the linear system `α = 0` for `(a, b)`.
fn trisection_oracle(v: &[[f64; 2]]) -> (f64, f64) {
    // x1 + x4 - x2 - x5 = 0 with x1 = V0 + a e0, x2 = V0 + b e0, x4 = V1 + b e1, x5 = V2 + a e2
    let e = |i: usize| [v[(i + 1) % 3][0] - v[i][0], v[(i + 1) % 3][1] - v[i][1]];
    let (e0, e1, e2) = (e(0), e(1), e(2));
    // a (e0 - e2) + b (e1 - e0) = V2 - V1
    let m = [[e0[0] - e2[0], e1[0] - e0[0]], [e0[1] - e2[1], e1[1] - e0[1]]];
    let rhs = [v[2][0] - v[1][0], v[2][1] - v[1][1]];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let a = (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det;
    let b = (m[0][0] * rhs[1] - rhs[0] * m[1][0]) / det;
    (a, b)
}

#[test]
fn rounded_triangle_has_one_hexagon_at_trisections() {
    let tri = RoundedPolygon::equilateral_triangle(0.02).unwrap();
    let v = tri.vertices();
    let (a, b) = trisection_oracle(&v);
    assert!((a - 1.0 / 3.0).abs() < 1e-12 && (b - 2.0 / 3.0).abs() < 1e-12);

    let rep = solve(&tri, TestMapKind::AffineHexagon, &SolveOptions::default()).unwrap();
    assert_eq!(rep.orbits.len(), 1);
    assert_eq!(rep.mod2_count, 1);
    assert!(rep.degenerate_hexagons.is_empty());
    assert_recomputes(&tri, &rep);
    let pts = &rep.orbits[0].points;
    let mut k = 0;
    for i in 0..3 {
        let (p, q) = (v[i], v[(i + 1) % 3]);
        for f in [a, b] {
            let want = [p[0] + f * (q[0] - p[0]), p[1] + f * (q[1] - p[1])];
            let got = &pts[k];
            assert!((got[0] - want[0]).abs() < 1e-3 && (got[1] - want[1]).abs() < 1e-3, "{got:?} vs {want:?}");
            k += 1;
        }
    }
}

#[test]
fn helix_chord_has_one_rhombus() {
    let h = HelixChord::default();
    let rep = solve(&h, TestMapKind::Rhombus, &SolveOptions::default()).unwrap();
    assert_eq!(rep.orbits.len(), 1);
    assert_eq!(rep.mod2_count, 1);
    assert_recomputes(&h, &rep);
    let want = [[0.0, 1.0, FRAC_PI_2], [-1.0, 0.0, PI], [0.0, -1.0, 1.5 * PI], [1.0, 0.0, PI]];
    for (got, want) in rep.orbits[0].points.iter().zip(want) {
        for k in 0..3 {
            assert!((got[k] - want[k]).abs() < 1e-5, "{got:?} vs {want:?}");
        }
    }
}

#[test]
fn finer_grid_never_loses_orbits() {
    let e = Ellipse::new(2.0, 1.0).unwrap();
    let h = HelixChord::default();
    for m in [16, 32] {
        let o = |m| SolveOptions { grid: m, ..SolveOptions::default() };
        let a = solve(&e, TestMapKind::SquarePeg, &o(m)).unwrap().orbits.len();
        let b = solve(&e, TestMapKind::SquarePeg, &o(2 * m)).unwrap().orbits.len();
        assert!(b >= a);
        let a = solve(&h, TestMapKind::Rhombus, &o(m)).unwrap().orbits.len();
        let b = solve(&h, TestMapKind::Rhombus, &o(2 * m)).unwrap().orbits.len();
        assert!(b >= a);
    }
    let tri = RoundedPolygon::equilateral_triangle(0.02).unwrap();
    let o = |m| SolveOptions { grid: m, ..SolveOptions::default() };
    let a = solve(&tri, TestMapKind::AffineHexagon, &o(16)).unwrap().orbits.len();
    let b = solve(&tri, TestMapKind::AffineHexagon, &o(32)).unwrap().orbits.len();
    assert!(b >= a);
}

#[test]
fn distinct_squares_stay_distinct_orbits() {
    // fourfold symmetric, so every rotation-orbit of a point is a square;
    // a peak-aligned and a valley-aligned square are two different orbits
    let c = Parametric::planar("flower", |t| {
        let r = 1.0 + 0.05 * (8.0 * t).cos();
        Point::new(r * t.cos(), r * t.sin(), 0.0)
    });
    let opts = SolveOptions::default();
    let mut zeros = Vec::new();
    for t0 in [0.0, PI / 16.0] {
        let q = CyclicConfiguration::new(&[t0, t0 + FRAC_PI_2, t0 + PI, t0 + 1.5 * PI]).unwrap();
        for k in 0..4 {
            let z = certify(&c, TestMapKind::SquarePeg, &q.shift_labels(k), &opts);
            assert!(z.residual < 1e-12);
            zeros.push(z);
        }
    }
    assert_eq!(dedup_orbits(zeros, 1e-6).len(), 2);
}

#[test]
fn solve_rejects_self_intersecting_curve() {
    let eight = Parametric::planar("eight", |t| Point::new(t.sin(), (2.0 * t).sin() / 2.0, 0.0));
    assert!(solve(&eight, TestMapKind::SquarePeg, &SolveOptions::default()).is_err());
}

#[test]
fn output_is_deterministic() {
    let e = Ellipse::new(3.0, 1.0).unwrap();
    let a = serde_json::to_string(&solve(&e, TestMapKind::SquarePeg, &SolveOptions::default()).unwrap()).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| {
        serde_json::to_string(&solve(&e, TestMapKind::SquarePeg, &SolveOptions::default()).unwrap()).unwrap()
    });
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    for key in ["kind", "orbits", "mod2_count", "rejected_pseudo"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let orbit = &v["orbits"][0];
    for key in ["params", "points", "residual", "det_sign"] {
        assert!(orbit.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["kind"], "square");
}

#[test]
fn smooth_battery_has_odd_orbit_counts() {
    let opts = SolveOptions::default();
    for a in [1.5, 2.0, 3.0] {
        let e = Ellipse::new(a, 1.0).unwrap();
        assert_eq!(solve(&e, TestMapKind::SquarePeg, &opts).unwrap().mod2_count, 1);
    }
    let tri = RoundedPolygon::equilateral_triangle(0.02).unwrap();
    let sq = solve(&tri, TestMapKind::SquarePeg, &opts).unwrap();
    // one square resting on each side
    assert_eq!(sq.orbits.len(), 3);
    assert_eq!(sq.mod2_count, 1);
    assert_eq!(solve(&tri, TestMapKind::AffineHexagon, &opts).unwrap().mod2_count, 1);
    assert_eq!(solve(&HelixChord::default(), TestMapKind::Rhombus, &opts).unwrap().mod2_count, 1);
}

#[test]
fn rounded_square_zeros_are_not_transverse() {
    // squares sliding along the four straight sides form a continuous family,
    // so every zero found is degenerate and the orbit count is not meaningful
    let sq = RoundedPolygon::new(&[[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]], 0.1).unwrap();
    let rep = solve(&sq, TestMapKind::SquarePeg, &SolveOptions::default()).unwrap();
    assert!(rep.orbits.len() > 1);
    for z in &rep.orbits {
        assert!(z.condition_estimate > 1e8, "condition {}", z.condition_estimate);
    }
}
