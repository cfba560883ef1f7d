//! Full analysis of one system, serialized as a versioned JSON report.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::centerlab::{
    self, classify_with, conserved_quantity, isochronicity_check, polar_trajectory, CenterReport,
    ClassifySettings, IsochronicityStats,
};
use crate::commutant::{
    admissible_top_degrees, check_form7, check_form8, commutant_nullspace, radial_commuter,
    CommutantBasisSerial, FormCheckSerial, FormStatus,
};
use crate::input::{Resolved, SystemEcho, SystemSpec};
use crate::system::{DarbouxSerial, FactoredSystem};
use crate::trig::{degree3_axis_criterion, TrigPoly};

pub const REPORT_VERSION: u32 = 1;

/// Starting radii for drift checks never exceed this.
const DRIFT_RADIUS: f64 = 0.3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    pub integration_rtol: f64,
    pub integration_atol: f64,
    pub blowup_ceiling: f64,
    pub cluster_tol: f64,
    pub boundary_grid: usize,
    pub axis_tol: f64,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reversibility {
    pub axes: Vec<f64>,
    pub reversible: bool,
    /// Closed-form axis test, present when `k = 3`.
    pub degree3_criterion: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutantSummary {
    pub admissible_top_degrees: Vec<u32>,
    pub nullspace: CommutantBasisSerial,
    pub radial_commuter: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriftStats {
    /// `max |Φ − Φ₀| / max(|Φ₀|, 1)` over all trajectories and sample angles.
    pub max_relative_drift: f64,
    pub trajectories: usize,
    pub angles_per_trajectory: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub report_version: u32,
    pub system: SystemEcho,
    pub tolerances: Tolerances,
    /// Exact mean test; `None` when `H` has no `Q · R(x² + y²)` form.
    pub is_center: Option<bool>,
    pub isochronous: IsochronicityStats,
    pub center: Option<CenterReport>,
    pub skipped: Vec<String>,
    pub darboux: Option<DarbouxSerial>,
    pub reversibility: Option<Reversibility>,
    pub commutant: Option<CommutantSummary>,
    pub form7: Option<FormCheckSerial>,
    pub form8: Option<FormCheckSerial>,
    pub predicts_polynomial_commuter: Option<bool>,
    pub conserved_quantity_drift: Option<DriftStats>,
    pub counterexample: bool,
    pub banner: Option<String>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn analyze(spec: &SystemSpec, settings: &Resolved) -> AnalysisReport {
    let uniform = spec.uniform();
    let factored = spec.factored();
    let ode = settings.ode();
    let mut skipped = Vec::new();

    let isochronous = isochronicity_check(&uniform, settings.samples, DRIFT_RADIUS, settings.seed, &ode);
    let is_center = factored.as_ref().map(centerlab::is_center);

    let center = match (&factored, is_center) {
        (Some(f), Some(true)) => {
            let cs = ClassifySettings {
                grid: settings.grid,
                cluster_tol: settings.cluster_tol,
            };
            match classify_with(f, &cs) {
                Ok(r) => Some(r),
                Err(e) => {
                    skipped.push(format!("classification: {e}"));
                    None
                }
            }
        }
        (Some(_), _) => {
            skipped.push("classification: the mean condition fails".into());
            None
        }
        (None, _) => {
            skipped.push("classification: H is not of the form Q·R(x^2 + y^2)".into());
            None
        }
    };

    let darboux = factored
        .as_ref()
        .and_then(|f| f.darboux_report().ok())
        .map(|d| d.to_serial());
    let reversibility = factored.as_ref().and_then(reversibility_of);

    let commutant = if uniform.is_degenerate() {
        skipped.push("commutant: H is identically zero".into());
        None
    } else {
        let x = uniform.vector_field();
        let n_max = settings.n_max.unwrap_or_else(|| x.degree().unwrap_or(1)).max(1);
        let basis = commutant_nullspace(&x, n_max);
        let admissible = admissible_top_degrees(&uniform);
        match (basis, admissible) {
            (Ok(b), Ok(adm)) => Some(CommutantSummary {
                admissible_top_degrees: adm,
                nullspace: b.to_serial(),
                radial_commuter: factored.as_ref().map(|f| radial_commuter(f).describe()),
            }),
            (Err(e), _) => {
                skipped.push(format!("commutant: {e}"));
                None
            }
            (_, Err(e)) => {
                skipped.push(format!("commutant: {e}"));
                None
            }
        }
    };

    let (form7, form8) = if uniform.is_degenerate() {
        (None, None)
    } else {
        let h = uniform.h();
        (
            check_form7(h).ok().map(|r| r.to_serial()),
            check_form8(h).ok().map(|r| r.to_serial()),
        )
    };
    let predicts_polynomial_commuter = match (&form7, &form8) {
        (Some(a), Some(b)) if a.matches || b.matches => Some(true),
        (Some(_), Some(b)) if b.status == FormStatus::NoMatch => Some(false),
        _ => None,
    };

    let conserved_quantity_drift = match (&factored, &center) {
        (Some(f), Some(c)) if !c.degenerate => drift_stats(f, c, settings),
        _ => None,
    };

    let counterexample = is_center == Some(true)
        && commutant.as_ref().is_some_and(|c| c.nullspace.dimension == 1 && c.nullspace.contains_self)
        && predicts_polynomial_commuter == Some(false)
        && reversibility.as_ref().is_some_and(|r| !r.reversible);
    let banner = counterexample.then(|| {
        "counterexample: uniformly isochronous center with no symmetry axis whose only \
         polynomial commuters are multiples of itself"
            .to_string()
    });

    AnalysisReport {
        report_version: REPORT_VERSION,
        system: spec.echo(),
        tolerances: Tolerances {
            integration_rtol: settings.rtol,
            integration_atol: settings.atol,
            blowup_ceiling: settings.ceiling,
            cluster_tol: settings.cluster_tol,
            boundary_grid: settings.grid,
            axis_tol: crate::trig::AXIS_TOL,
            samples: settings.samples,
            seed: settings.seed,
        },
        is_center,
        isochronous,
        center,
        skipped,
        darboux,
        reversibility,
        commutant,
        form7,
        form8,
        predicts_polynomial_commuter,
        conserved_quantity_drift,
        counterexample,
        banner,
    }
}

fn reversibility_of(f: &FactoredSystem) -> Option<Reversibility> {
    let t = TrigPoly::restrict_to_circle(f.q(), true).ok()?;
    let axes = t.symmetry_axes().ok()?;
    let degree3_criterion = (f.k() == 3).then(|| {
        let (a1, b1) = t.harmonic(1);
        let (a3, b3) = t.harmonic(3);
        degree3_axis_criterion(&a1, &a3, &b1, &b3)
    });
    Some(Reversibility {
        reversible: !axes.is_empty(),
        axes,
        degree3_criterion,
    })
}

/// Largest radius safely inside the center region and below every invariant circle.
pub fn interior_radius(c: &CenterReport) -> f64 {
    let boundary = c
        .boundary_samples
        .iter()
        .filter_map(|b| b.rho)
        .fold(f64::INFINITY, f64::min);
    let circle = c.invariant_circles.first().copied().unwrap_or(f64::INFINITY);
    DRIFT_RADIUS.min(0.5 * boundary).min(0.5 * circle)
}

fn drift_stats(f: &FactoredSystem, c: &CenterReport, settings: &Resolved) -> Option<DriftStats> {
    const TRAJECTORIES: usize = 5;
    const ANGLES: usize = 16;
    let cq = conserved_quantity(f).ok()?;
    let u = f.uniform();
    let ode = settings.ode();
    let r_max = interior_radius(c);
    let mut worst: f64 = 0.0;
    for j in 0..TRAJECTORIES {
        let rho0 = r_max * (j + 1) as f64 / TRAJECTORIES as f64;
        let theta0 = TAU * j as f64 / TRAJECTORIES as f64;
        let thetas: Vec<f64> = (1..=ANGLES).map(|i| theta0 + TAU * i as f64 / ANGLES as f64).collect();
        let rhos = polar_trajectory(&u, rho0, theta0, &thetas, &ode).ok()?;
        let v0 = cq.eval(rho0 * theta0.cos(), rho0 * theta0.sin()).ok()?;
        for (t, r) in thetas.iter().zip(rhos) {
            let v = cq.eval(r * t.cos(), r * t.sin()).ok()?;
            worst = worst.max((v - v0).abs() / v0.abs().max(1.0));
        }
    }
    Some(DriftStats {
        max_relative_drift: worst,
        trajectories: TRAJECTORIES,
        angles_per_trajectory: ANGLES,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::Settings;

    fn run(json: &str) -> AnalysisReport {
        let spec = SystemSpec::from_json(json).unwrap();
        analyze(&spec, &Settings::default().resolve(&spec.settings))
    }

    #[test]
    fn cubic_report() {
        let r = run(r#"{"Q": "y^3 - 3*x*y^2 + 2*x^2*y", "a": [1, 1], "settings": {"grid": 72}}"#);
        assert_eq!(r.is_center, Some(true));
        assert_eq!(r.center.as_ref().unwrap().nu, 1);
        assert!(!r.reversibility.as_ref().unwrap().reversible);
        assert_eq!(r.reversibility.as_ref().unwrap().degree3_criterion, Some(false));
        assert_eq!(r.commutant.as_ref().unwrap().nullspace.dimension, 1);
        assert_eq!(r.commutant.as_ref().unwrap().admissible_top_degrees, vec![1, 6]);
        assert_eq!(r.predicts_polynomial_commuter, Some(false));
        assert!(r.counterexample && r.banner.is_some());
        assert!(r.conserved_quantity_drift.as_ref().unwrap().max_relative_drift < 1e-7);
        assert!(r.isochronous.max_rate_deviation < 1e-9);
    }

    #[test]
    fn non_center_skips_classification() {
        let r = run(r#"{"Q": "x^2", "a": [1]}"#);
        assert_eq!(r.is_center, Some(false));
        assert!(r.center.is_none());
        assert!(!r.skipped.is_empty());
        assert!(!r.counterexample);
    }

    #[test]
    fn raw_h_is_factored_when_possible() {
        let r = run(r#"{"H": "x^2 - y^2 + x^4 - y^4", "settings": {"grid": 16}}"#);
        assert_eq!(r.is_center, Some(true));
        assert_eq!(r.center.as_ref().unwrap().nu, 2);
        assert!(r.form7.as_ref().unwrap().matches);
        assert_eq!(r.predicts_polynomial_commuter, Some(true));
        let r = run(r#"{"H": "x + x*y^2"}"#);
        assert_eq!(r.is_center, None);
    }

    #[test]
    fn reports_are_byte_stable() {
        let json = r#"{"Q": "x*y", "a": [1, -1], "settings": {"grid": 24}}"#;
        assert_eq!(run(json).to_json(), run(json).to_json());
        let v: serde_json::Value = serde_json::from_str(&run(json).to_json()).unwrap();
        assert_eq!(v["report_version"], 1);
    }
}
