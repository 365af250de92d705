//! The `--curve` mini-language.
//!
//! ```text
//! circle
//! ellipse:a,b
//! rounded-poly:x1,y1;x2,y2;...@rho
//! helix-chord[:rho]
//! file:path.csv
//! ```

use std::path::Path;
use std::sync::Arc;

use pegs_core::curves::{orient_counterclockwise, Ellipse, HelixChord, RoundedPolygon, SampledCurve, SharedCurve, UnitCircle};
use pegs_core::{PegsError, Result};

fn number(s: &str, what: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| PegsError::Parse(format!("{what}: {s:?} is not a number")))
}

fn numbers(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(',').map(|v| number(v, what)).collect()
}

/// Parse a curve spec. Planar curves come back counterclockwise.
pub fn parse_curve(spec: &str) -> Result<SharedCurve> {
    let (head, rest) = match spec.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (spec, None),
    };
    let curve: SharedCurve = match (head.trim(), rest) {
        ("circle", None) => Arc::new(UnitCircle),
        ("ellipse", Some(args)) => match numbers(args, "ellipse")?[..] {
            [a, b] => Arc::new(Ellipse::new(a, b)?),
            _ => return Err(PegsError::Parse("ellipse takes two semi-axes, e.g. ellipse:2,1".into())),
        },
        ("rounded-poly", Some(args)) => {
            let (verts, rho) = args
                .rsplit_once('@')
                .ok_or_else(|| PegsError::Parse("rounded-poly needs a corner radius, e.g. ...@0.1".into()))?;
            let rho = number(rho, "corner radius")?;
            let mut vs = Vec::new();
            for v in verts.split(';').filter(|v| !v.trim().is_empty()) {
                match numbers(v, "vertex")?[..] {
                    [x, y] => vs.push([x, y]),
                    _ => return Err(PegsError::Parse(format!("vertex {v:?} should be x,y"))),
                }
            }
            Arc::new(RoundedPolygon::new(&vs, rho)?)
        }
        ("helix-chord", None) => Arc::new(HelixChord::default()),
        ("helix-chord", Some(rho)) => Arc::new(HelixChord::new(number(rho, "smoothing radius")?)?),
        ("file", Some(path)) => Arc::new(SampledCurve::from_csv_file(Path::new(path))?),
        _ => return Err(PegsError::Parse(format!("unknown curve spec {spec:?}"))),
    };
    Ok(orient_counterclockwise(curve))
}
