//! JSON with fixed float formatting, SVG overlays and vertex CSV.

use std::fmt::Write as _;
use std::io;

use pegs_core::curves::Curve;
use pegs_core::solver::SolveReport;
use serde::Serialize;

/// Compact JSON formatter that prints every float with 17 significant
/// digits, so equal values always produce equal bytes.
struct FixedFloats;

impl serde_json::ser::Formatter for FixedFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

const CURVE_SAMPLES: usize = 720;
const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Curve polyline with every orbit representative drawn on top. Degenerate
/// hexagons are dashed.
pub fn svg<C: Curve + ?Sized>(c: &C, report: &SolveReport) -> String {
    let curve: Vec<[f64; 2]> = (0..CURVE_SAMPLES)
        .map(|k| {
            let p = c.eval(std::f64::consts::TAU * k as f64 / CURVE_SAMPLES as f64);
            [p.x, p.y]
        })
        .collect();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in &curve {
        for i in 0..2 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let pad = 0.05 * span;
    let size = 600.0;
    let scale = size / (span + 2.0 * pad);
    // flip y so the picture matches the usual axes
    let map = |p: &[f64]| ((p[0] - lo[0] + pad) * scale, (hi[1] + pad - p[1]) * scale);
    let poly = |pts: &[Vec<f64>]| pts.iter().map(|p| map(p)).map(|(x, y)| format!("{x:.3},{y:.3}")).collect::<Vec<_>>().join(" ");

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#);
    let _ = writeln!(s, r#"<title>{} {}: {} orbit(s)</title>"#, report.curve, report.kind, report.orbits.len());
    let pts: Vec<Vec<f64>> = curve.iter().map(|p| p.to_vec()).collect();
    let _ = writeln!(s, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#, poly(&pts));
    for (i, z) in report.orbits.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let _ = writeln!(s, r#"<polygon points="{}" fill="{colour}" fill-opacity="0.15" stroke="{colour}" stroke-width="1.5"/>"#, poly(&z.points));
        for p in &z.points {
            let (x, y) = map(p);
            let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3.5" fill="{colour}"/>"#);
        }
    }
    for z in &report.degenerate_hexagons {
        let _ = writeln!(s, r#"<polygon points="{}" fill="none" stroke="gray" stroke-dasharray="4 3"/>"#, poly(&z.points));
    }
    s.push_str("</svg>\n");
    s
}

/// One row per vertex: `orbit,vertex,x,y,z`.
pub fn vertex_csv(report: &SolveReport) -> String {
    let mut s = String::from("orbit,vertex,x,y,z\n");
    for (i, z) in report.orbits.iter().enumerate() {
        for (k, p) in z.points.iter().enumerate() {
            let c = |j: usize| p.get(j).copied().unwrap_or(0.0);
            let _ = writeln!(s, "{},{},{:.16e},{:.16e},{:.16e}", i, k + 1, c(0), c(1), c(2));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        let s = to_json(&serde_json::json!({"a": 0.1, "b": [1.0, -2.5e-12], "n": 3})).unwrap();
        assert_eq!(s, "{\"a\":1.0000000000000001e-1,\"b\":[1.0000000000000000e0,-2.4999999999999998e-12],\"n\":3}\n");
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["a"].as_f64(), Some(0.1));
    }
}
