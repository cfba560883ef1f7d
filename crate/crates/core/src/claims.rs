//! Reproduction battery for the counterexample system
//! `ẋ = −y + x Q R`, `ẏ = x + y Q R` with `Q = y³ − 3xy² + 2x²y`, `R = 1 + x² + y²`.
//!
//! Every claim is evaluated against the supplied `(Q, a)` but compared with the
//! values expected for the counterexample, so a perturbed system fails.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde::Serialize;

use crate::centerlab::{
    boundary_radius, classify, conserved_quantity, is_center, polar_trajectory, return_map, BoundaryRadius,
};
use crate::commutant::{
    admissible_top_degrees, check_form7, check_form8, commutant_nullspace, predicts_polynomial_commuter,
};
use crate::ode::OdeSettings;
use crate::poly::{rat, rational_to_f64, BivarPoly, Rational};
use crate::report::interior_radius;
use crate::system::FactoredSystem;
use crate::trig::{degree3_axis_criterion, fourier_projection, TrigPoly};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimResult {
    pub id: u32,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

pub fn counterexample() -> (BivarPoly, Vec<Rational>) {
    let q = BivarPoly::from_int_terms(&[(1, 0, 3), (-3, 1, 2), (2, 2, 1)]);
    (q, vec![rat(1, 1), rat(1, 1)])
}

pub fn expected_restriction() -> TrigPoly {
    TrigPoly::new(
        rat(0, 1),
        [(1, rat(-3, 4), rat(5, 4)), (3, rat(3, 4), rat(1, 4))],
    )
}

/// `g(ρ) = −1/(3ρ³) + 1/ρ + arctan ρ`.
pub fn closed_form_g(rho: f64) -> f64 {
    -1.0 / (3.0 * rho.powi(3)) + 1.0 / rho + rho.atan()
}

/// Root of `g(ρ) = π/2 − 8/3` by bisection.
pub fn closed_form_boundary_at_zero() -> f64 {
    let target = FRAC_PI_2 - 8.0 / 3.0;
    let (mut lo, mut hi) = (1e-3, 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if closed_form_g(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `r⁶ / (1 − 3r² − 4x³ − 3xy² − 3y³ − 3r³ arctan r)²`.
pub fn first_integral(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    let r = r2.sqrt();
    let d = 1.0 - 3.0 * r2 - 4.0 * x.powi(3) - 3.0 * x * y * y - 3.0 * y.powi(3) - 3.0 * r.powi(3) * r.atan();
    r2.powi(3) / (d * d)
}

struct Battery {
    out: Vec<ClaimResult>,
}

impl Battery {
    fn push(&mut self, claim: &str, passed: bool, detail: String) {
        let id = self.out.len() as u32 + 1;
        self.out.push(ClaimResult {
            id,
            claim: claim.to_string(),
            passed,
            detail,
        });
    }

    fn fail(&mut self, claim: &str, why: impl std::fmt::Display) {
        self.push(claim, false, why.to_string());
    }
}

pub fn verify_counterexample() -> Vec<ClaimResult> {
    let (q, a) = counterexample();
    verify_claims(&q, &a)
}

pub fn verify_claims(q: &BivarPoly, a: &[Rational]) -> Vec<ClaimResult> {
    let mut b = Battery { out: Vec::new() };
    let system = FactoredSystem::new(q.clone(), a.to_vec());

    const C1: &str = "circle restriction is -3/4 cos t + 5/4 sin t + 3/4 cos 3t + 1/4 sin 3t";
    match TrigPoly::restrict_to_circle(q, true) {
        Ok(t) => {
            let exact = t == expected_restriction();
            let numeric = fourier_projection(|th| q.eval(th.cos(), th.sin()), 3, 64);
            let err = numeric
                .iter()
                .enumerate()
                .map(|(j, &(c, s))| {
                    let (ea, eb) = match j {
                        0 => (rational_to_f64(t.c0()), 0.0),
                        _ => {
                            let (ea, eb) = t.harmonic(j as u32);
                            (rational_to_f64(&ea), rational_to_f64(&eb))
                        }
                    };
                    (c - ea).abs().max((s - eb).abs())
                })
                .fold(0.0, f64::max);
            b.push(C1, exact && err <= 1e-12, format!("exact match {exact}, projection error {err:.2e}"));
        }
        Err(e) => b.fail(C1, e),
    }

    let system = match system {
        Ok(s) => s,
        Err(e) => {
            for c in [
                "origin is a center",
                "return map is the identity",
                "first integrals are conserved",
                "center is of type B^1",
                "boundary radius at theta = 0",
                "only polynomial commuters are multiples of the system",
                "no symmetry axis and no commuter form",
            ] {
                b.fail(c, &e);
            }
            return b.out;
        }
    };

    const C2: &str = "origin is a center";
    let center = is_center(&system);
    b.push(C2, center, format!("mean of Q on the circle is zero: {center}"));

    const C3: &str = "return map is the identity";
    let u = system.uniform();
    let mut worst: f64 = 0.0;
    let mut escaped = None;
    for rho0 in [0.05, 0.1, 0.2, 0.3] {
        match return_map(&u, rho0, 1e-12) {
            Ok(r) => worst = worst.max((r - rho0).abs()),
            Err(e) => {
                escaped = Some(format!("rho0 = {rho0}: {e}"));
                break;
            }
        }
    }
    match escaped {
        Some(e) => b.fail(C3, e),
        None => b.push(C3, worst <= 1e-8, format!("max |rho(2pi) - rho0| = {worst:.2e}")),
    }

    let report = classify(&system);

    const C4: &str = "first integrals are conserved";
    match (&report, conserved_quantity(&system)) {
        (Ok(rep), Ok(cq)) => {
            let r_max = interior_radius(rep);
            let ode = OdeSettings::default().with_rtol(1e-12).with_atol(1e-14);
            let (mut drift_i, mut drift_phi): (f64, f64) = (0.0, 0.0);
            let mut error = None;
            for j in 0..5 {
                let rho0 = r_max * (j + 1) as f64 / 5.0;
                let theta0 = TAU * j as f64 / 5.0;
                let thetas: Vec<f64> = (1..=32).map(|i| theta0 + TAU * i as f64 / 32.0).collect();
                let (x0, y0) = (rho0 * theta0.cos(), rho0 * theta0.sin());
                let i0 = first_integral(x0, y0);
                let p0 = cq.eval(x0, y0);
                match (polar_trajectory(&u, rho0, theta0, &thetas, &ode), p0) {
                    (Ok(rhos), Ok(p0)) => {
                        for (t, r) in thetas.iter().zip(rhos) {
                            let (x, y) = (r * t.cos(), r * t.sin());
                            drift_i = drift_i.max((first_integral(x, y) - i0).abs() / i0.abs());
                            if let Ok(p) = cq.eval(x, y) {
                                drift_phi = drift_phi.max((p - p0).abs() / p0.abs().max(1.0));
                            } else {
                                drift_phi = f64::INFINITY;
                            }
                        }
                    }
                    (Err(e), _) => error = Some(e.to_string()),
                    (_, Err(e)) => error = Some(e.to_string()),
                }
            }
            match error {
                Some(e) => b.fail(C4, e),
                None => b.push(
                    C4,
                    drift_i <= 1e-6 && drift_phi <= 1e-7,
                    format!("relative drift of I {drift_i:.2e}, of Phi {drift_phi:.2e}"),
                ),
            }
        }
        (Err(e), _) => b.fail(C4, e),
        (_, Err(e)) => b.fail(C4, e),
    }

    const C5: &str = "center is of type B^1";
    match &report {
        Ok(rep) => b.push(
            C5,
            rep.nu == 1 && rep.type_label == "B^1",
            format!("nu = {}, type {}", rep.nu, rep.type_label),
        ),
        Err(e) => b.fail(C5, e),
    }

    const C6: &str = "boundary radius at theta = 0";
    let expected = closed_form_boundary_at_zero();
    match boundary_radius(&system, 0.0) {
        Ok(BoundaryRadius::Finite(r)) => b.push(
            C6,
            (r - expected).abs() <= 1e-4,
            format!("rho_b(0) = {r:.10}, closed form {expected:.10}"),
        ),
        Ok(BoundaryRadius::Infinite) => b.fail(C6, "boundary is at infinity"),
        Err(e) => b.fail(C6, e),
    }

    const C7: &str = "only polynomial commuters are multiples of the system";
    let x = u.vector_field();
    match (admissible_top_degrees(&u), commutant_nullspace(&x, 6)) {
        (Ok(deg), Ok(basis)) => b.push(
            C7,
            deg == [1, 6] && basis.dimension() == 1 && basis.contains_self,
            format!(
                "admissible top degrees {deg:?}, nullspace dimension {}, contains the system {}",
                basis.dimension(),
                basis.contains_self
            ),
        ),
        (Err(e), _) => b.fail(C7, e),
        (_, Err(e)) => b.fail(C7, e),
    }

    const C8: &str = "no symmetry axis and no commuter form";
    let h = u.h();
    let axes = TrigPoly::restrict_to_circle(q, true).and_then(|t| t.symmetry_axes().map(|ax| (t, ax)));
    match (axes, check_form7(h), check_form8(h), predicts_polynomial_commuter(h)) {
        (Ok((t, ax)), Ok(f7), Ok(f8), Ok(pred)) => {
            let (a1, b1) = t.harmonic(1);
            let (a3, b3) = t.harmonic(3);
            let cubic = system.k() == 3;
            let crit = cubic && degree3_axis_criterion(&a1, &a3, &b1, &b3);
            b.push(
                C8,
                ax.is_empty() && cubic && !crit && !f7.matches() && !f8.matches() && !pred,
                format!(
                    "axes {}, degree-3 criterion {crit}, form7 {}, form8 {}, predicts commuter {pred}",
                    ax.len(),
                    f7.matches(),
                    f8.matches()
                ),
            );
        }
        (Err(e), ..) => b.fail(C8, e),
        (_, Err(e), ..) => b.fail(C8, e),
        (_, _, Err(e), _) => b.fail(C8, e),
        (.., Err(e)) => b.fail(C8, e),
    }

    b.out
}

pub fn all_passed(results: &[ClaimResult]) -> bool {
    results.iter().all(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_passes_every_claim() {
        let res = verify_counterexample();
        assert_eq!(res.len(), 8);
        for r in &res {
            assert!(r.passed, "claim {} failed: {}", r.id, r.detail);
        }
    }

    #[test]
    fn sign_flip_breaks_the_battery() {
        let q = BivarPoly::from_int_terms(&[(1, 0, 3), (-3, 1, 2), (-2, 2, 1)]);
        let res = verify_claims(&q, &[rat(1, 1), rat(1, 1)]);
        assert!(!all_passed(&res));
        let failed: Vec<u32> = res.iter().filter(|r| !r.passed).map(|r| r.id).collect();
        assert_eq!(failed, vec![1, 4, 6]);
    }

    #[test]
    fn closed_form_boundary() {
        let r = closed_form_boundary_at_zero();
        assert!((r - 0.446).abs() < 1e-3);
        assert!((closed_form_g(r) - (FRAC_PI_2 - 8.0 / 3.0)).abs() < 1e-12);
    }
}
