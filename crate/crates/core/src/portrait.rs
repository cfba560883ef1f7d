//! Phase portraits: trajectory fans, center-region boundary, invariant circles
//! and asymptote rays, rendered as SVG or sampled as CSV.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::centerlab::{classify_with, polar_path, BoundarySample, ClassifySettings};
use crate::input::{Resolved, SystemSpec};
use crate::ode::OdeSettings;

pub const SEED_ENV: &str = "ISOCHRONE_SEED";

const SIZE: f64 = 800.0;
const BACKGROUND: &str = "#ffffff";
const TRAJECTORY: &str = "#457b9d";
const BOUNDARY: &str = "#1d3557";
const CIRCLE: &str = "#2a9d8f";
const RAY: &str = "#e63946";

/// `ISOCHRONE_SEED` when set and valid, otherwise `fallback`.
pub fn seed_from_env(fallback: u64) -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(fallback)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PortraitOptions {
    pub trajectories: usize,
    /// Half-width of the plotted square; derived from the boundary when `None`.
    pub range: Option<f64>,
    pub seed: u64,
    pub settings: Resolved,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub theta0: f64,
    pub rho0: f64,
    /// `(θ, ρ)` at every accepted integrator step.
    pub points: Vec<(f64, f64)>,
    pub escaped_at: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Portrait {
    pub range: f64,
    pub trajectories: Vec<Trajectory>,
    pub boundary: Vec<BoundarySample>,
    pub circles: Vec<f64>,
    pub asymptotes: Vec<f64>,
}

fn default_range(boundary: &[BoundarySample], circles: &[f64]) -> f64 {
    let mut finite: Vec<f64> = boundary.iter().filter_map(|b| b.rho).collect();
    if finite.is_empty() {
        return circles.last().map_or(2.0, |r| 1.5 * r);
    }
    // the boundary is unbounded near asymptotes; frame its bulk instead
    finite.sort_by(f64::total_cmp);
    let q = finite[(finite.len() * 3) / 4];
    let outer = circles.last().copied().unwrap_or(0.0);
    1.25 * q.max(outer)
}

pub fn build(spec: &SystemSpec, opts: &PortraitOptions) -> Portrait {
    let report = spec.factored().and_then(|f| {
        let cs = ClassifySettings {
            grid: opts.settings.grid,
            cluster_tol: opts.settings.cluster_tol,
        };
        classify_with(&f, &cs).ok()
    });
    let (boundary, circles, asymptotes) = match &report {
        Some(r) => (
            r.boundary_samples.clone(),
            r.invariant_circles.clone(),
            r.asymptote_directions.clone(),
        ),
        None => (Vec::new(), Vec::new(), Vec::new()),
    };
    let range = opts.range.unwrap_or_else(|| default_range(&boundary, &circles));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let starts: Vec<(f64, f64)> = (0..opts.trajectories)
        .map(|_| (TAU * rng.gen::<f64>(), range * (1.0 - rng.gen::<f64>())))
        .collect();
    let uniform = spec.uniform();
    let ode = OdeSettings {
        h_max: TAU / 512.0,
        ceiling: (4.0 * range).max(1.0),
        ..opts.settings.ode()
    };
    let trajectories = starts
        .par_iter()
        .map(|&(theta0, rho0)| {
            let (points, escaped_at) = polar_path(&uniform, rho0, theta0, theta0 + TAU, &ode);
            Trajectory {
                theta0,
                rho0,
                points,
                escaped_at,
            }
        })
        .collect();
    Portrait {
        range,
        trajectories,
        boundary,
        circles,
        asymptotes,
    }
}

fn polyline(out: &mut String, pts: &[(f64, f64)], stroke: &str, width: f64, dash: Option<f64>) {
    if pts.len() < 2 {
        return;
    }
    let mut coords = String::new();
    for (i, (x, y)) in pts.iter().enumerate() {
        if i > 0 {
            coords.push(' ');
        }
        let _ = write!(coords, "{x:.5},{y:.5}");
    }
    let dash = dash.map_or(String::new(), |d| format!(" stroke-dasharray=\"{d:.5} {d:.5}\""));
    let _ = writeln!(
        out,
        "  <polyline points=\"{coords}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width:.5}\"{dash}/>"
    );
}

/// Splits a polar path into visible Cartesian pieces within `limit`.
fn visible_pieces(points: impl Iterator<Item = (f64, Option<f64>)>, limit: f64) -> Vec<Vec<(f64, f64)>> {
    let mut pieces = vec![Vec::new()];
    for (theta, rho) in points {
        match rho {
            Some(r) if r <= limit => pieces
                .last_mut()
                .expect("nonempty")
                .push((r * theta.cos(), -r * theta.sin())),
            _ => {
                if !pieces.last().expect("nonempty").is_empty() {
                    pieces.push(Vec::new());
                }
            }
        }
    }
    pieces.retain(|p| p.len() > 1);
    pieces
}

/// Self-contained SVG 1.1 document; `y` points up.
pub fn to_svg(p: &Portrait) -> String {
    let r = p.range;
    let limit = 1.5 * r;
    let w = r / 400.0;
    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"{:.5} {:.5} {:.5} {:.5}\">",
        -r,
        -r,
        2.0 * r,
        2.0 * r
    );
    let _ = writeln!(
        out,
        "  <rect x=\"{:.5}\" y=\"{:.5}\" width=\"{:.5}\" height=\"{:.5}\" fill=\"{BACKGROUND}\"/>",
        -r,
        -r,
        2.0 * r,
        2.0 * r
    );
    let _ = writeln!(out, "  <g id=\"trajectories\">");
    for t in &p.trajectories {
        for piece in visible_pieces(t.points.iter().map(|&(a, b)| (a, Some(b))), limit) {
            polyline(&mut out, &piece, TRAJECTORY, w, None);
        }
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, "  <g id=\"invariant-circles\">");
    for c in &p.circles {
        let _ = writeln!(
            out,
            "  <circle cx=\"0\" cy=\"0\" r=\"{c:.5}\" fill=\"none\" stroke=\"{CIRCLE}\" stroke-width=\"{:.5}\"/>",
            2.0 * w
        );
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, "  <g id=\"boundary\">");
    let mut samples = p.boundary.clone();
    if let Some(first) = samples.first().copied() {
        samples.push(BoundarySample {
            theta: first.theta + TAU,
            rho: first.rho,
        });
    }
    for piece in visible_pieces(samples.iter().map(|b| (b.theta, b.rho)), limit) {
        polyline(&mut out, &piece, BOUNDARY, 2.0 * w, Some(8.0 * w));
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, "  <g id=\"asymptotes\">");
    for a in &p.asymptotes {
        let _ = writeln!(
            out,
            "  <line x1=\"0\" y1=\"0\" x2=\"{:.5}\" y2=\"{:.5}\" stroke=\"{RAY}\" stroke-width=\"{:.5}\"/>",
            limit * a.cos(),
            -limit * a.sin(),
            2.0 * w
        );
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, "  <circle cx=\"0\" cy=\"0\" r=\"{:.5}\" fill=\"{BOUNDARY}\"/>", 3.0 * w);
    let _ = writeln!(out, "</svg>");
    out
}

/// RFC 4180 CSV with columns `trajectory,theta,rho`.
pub fn to_csv(p: &Portrait) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["trajectory", "theta", "rho"])?;
    for (i, t) in p.trajectories.iter().enumerate() {
        for (theta, rho) in &t.points {
            w.write_record([i.to_string(), format!("{theta:.12e}"), format!("{rho:.12e}")])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("ascii output"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::Settings;

    fn portrait(json: &str, n: usize) -> Portrait {
        let spec = SystemSpec::from_json(json).unwrap();
        let mut settings = Settings::default().resolve(&spec.settings);
        settings.grid = 90;
        build(
            &spec,
            &PortraitOptions {
                trajectories: n,
                range: None,
                seed: 7,
                settings,
            },
        )
    }

    #[test]
    fn cubic_svg_has_all_layers() {
        let p = portrait(r#"{"Q": "y^3 - 3*x*y^2 + 2*x^2*y", "a": [1, 1]}"#, 8);
        assert_eq!(p.asymptotes.len(), 1);
        let svg = to_svg(&p);
        assert!(svg.contains("<polyline") && svg.contains("stroke-dasharray"));
        assert_eq!(svg.matches("<line").count(), 1);
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn rotation_draws_only_circles() {
        let p = portrait(r#"{"H": "0"}"#, 4);
        assert!(p.boundary.is_empty() && p.asymptotes.is_empty());
        for t in &p.trajectories {
            assert!(t.escaped_at.is_none());
            assert!(t.points.iter().all(|(_, r)| (r - t.rho0).abs() < 1e-12));
        }
        assert!(!to_svg(&p).contains("stroke-dasharray"));
    }

    #[test]
    fn even_k_rays_lie_on_a_diameter() {
        let p = portrait(r#"{"Q": "2*x*y", "a": [1]}"#, 2);
        assert_eq!(p.asymptotes.len(), 2);
        assert!((p.asymptotes[1] - p.asymptotes[0] - std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn output_is_deterministic() {
        let json = r#"{"Q": "y", "a": [1]}"#;
        let a = portrait(json, 5);
        let b = portrait(json, 5);
        assert_eq!(to_svg(&a), to_svg(&b));
        let csv = to_csv(&a).unwrap();
        assert_eq!(csv, to_csv(&b).unwrap());
        assert!(csv.starts_with("trajectory,theta,rho\r\n") || csv.starts_with("trajectory,theta,rho\n"));
    }
}
