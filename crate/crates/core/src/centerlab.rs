//! Center verification and B^ν classification through the polar reduction
//! `dρ/dθ = ρ^{k+1} Q(cos θ, sin θ) R(ρ)`.
//!
//! Separating variables gives `g(ρ(θ)) − g(ρ₀) = F(θ) − F(θ₀)` where `F` is
//! the antiderivative of the circle restriction of `Q` and
//! `g(ρ) = ∫ dr / (r^{k+1} R(r))`. A solution escapes to infinity exactly
//! when `g` reaches its limit `g_∞`; on the component beyond the largest root
//! of `R` the boundary trajectory of the center region therefore satisfies
//! `g(ρ_b(θ)) = g_∞ − (max F − F(θ))` and runs off to infinity along every
//! global maximiser of `F`. The number of those maximisers is reported as ν.
//!
//! When `R < 0` beyond its largest root the roles of maxima and minima swap;
//! all of this is handled by working with `σ F` and `σ g`, `σ = sign R(∞)`.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ode::{self, OdeError, OdeSettings};
use crate::poly::{rat_int, rational_to_f64, Rational};
use crate::quad;
use crate::system::{outer_sign, FactoredSystem, SystemError, UniformSystem};
use crate::trig::{GlobalMax, TrigError, TrigPoly, DEFAULT_CLUSTER_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CenterError {
    #[error("the mean condition fails (mean of Q on the circle is {0}); the origin is not a center")]
    NotACenter(String),
    #[error("radial factor R is identically zero")]
    ZeroRadial,
    #[error("point at radius {rho} lies outside every component where R has no roots")]
    OutsideValidInterval { rho: f64 },
    #[error("solution escapes to infinity near θ = {theta}")]
    BlowUp { theta: f64 },
    #[error("integration failed: {0}")]
    Integration(OdeError),
    #[error("classification found ν = {nu} > k = {k}")]
    BoundViolated { nu: usize, k: u32 },
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Trig(#[from] TrigError),
}

const QUAD_ABS: f64 = 1e-15;
const QUAD_REL: f64 = 1e-13;

/// Maximal open interval of `ρ > 0` free of roots of `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Component {
    pub low: f64,
    /// `f64::INFINITY` for the outer component.
    pub high: f64,
    pub reference: f64,
    /// Sign of `R` on the component.
    pub sign: f64,
}

impl Component {
    pub fn contains(&self, rho: f64) -> bool {
        rho > self.low && rho < self.high
    }
}

/// Numeric evaluator of `g(ρ) = ∫_{ρ_ref}^{ρ} dr / (r^{k+1} R(r))` on each
/// root-free component of `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialQuadrature {
    k: u32,
    a: Vec<f64>,
    roots: Vec<f64>,
    components: Vec<Component>,
    g_inf: f64,
    /// Radius just above the largest root and `σ·tail` there.
    pinned: Option<(f64, f64)>,
    factors: Vec<RootFactor>,
}

/// `R(u) = (u − ρ₀²)^m S(u)` around one positive root.
#[derive(Debug, Clone, PartialEq)]
struct RootFactor {
    root: f64,
    mult: i32,
    rest: Vec<f64>,
}

impl RootFactor {
    fn new(a: &[f64], root: f64) -> Self {
        let u0 = root * root;
        let mut rest = a.to_vec();
        let mut mult = 0;
        while rest.len() > 1 {
            let (q, rem) = deflate(&rest, u0);
            let scale: f64 = rest.iter().rev().fold(0.0, |acc, c| acc * u0 + c.abs());
            if mult > 0 && rem.abs() > 1e-9 * scale {
                break;
            }
            rest = q;
            mult += 1;
        }
        Self { root, mult, rest }
    }
}

/// Synthetic division by `u − u0`; returns quotient (ascending) and remainder.
fn deflate(a: &[f64], u0: f64) -> (Vec<f64>, f64) {
    let n = a.len() - 1;
    let mut q = vec![0.0; n];
    let mut carry = a[n];
    for i in (0..n).rev() {
        q[i] = carry;
        carry = a[i] + u0 * carry;
    }
    (q, carry)
}

impl RadialQuadrature {
    pub fn new(k: u32, a: &[Rational]) -> Result<Self, CenterError> {
        let upoly = crate::upoly::UPoly::new(a.to_vec());
        if upoly.is_zero() {
            return Err(CenterError::ZeroRadial);
        }
        let roots: Vec<f64> = upoly.positive_roots(1e-15).into_iter().map(f64::sqrt).collect();
        let af: Vec<f64> = upoly.coeffs().iter().map(rational_to_f64).collect();
        let radial = |r: f64| {
            let u = r * r;
            af.iter().rev().fold(0.0, |acc, c| acc * u + c)
        };

        let mut edges = vec![0.0];
        edges.extend(roots.iter().copied());
        edges.push(f64::INFINITY);
        let components = edges
            .windows(2)
            .map(|w| {
                let (low, high) = (w[0], w[1]);
                let reference = if high.is_infinite() {
                    if low < 0.5 {
                        1.0
                    } else {
                        2.0 * low
                    }
                } else if low == 0.0 {
                    0.5 * high
                } else {
                    0.5 * (low + high)
                };
                let sign = if radial(reference) < 0.0 { -1.0 } else { 1.0 };
                Component { low, high, reference, sign }
            })
            .collect::<Vec<_>>();

        let mut rq = Self {
            k,
            a: af.clone(),
            roots,
            components,
            g_inf: 0.0,
            pinned: None,
            factors: Vec::new(),
        };
        rq.factors = rq.roots.iter().map(|&r| RootFactor::new(&rq.a, r)).collect();
        let outer = *rq.outer();
        rq.g_inf = quad::integrate_to_infinity(|r| rq.integrand(r), outer.reference, QUAD_ABS, QUAD_REL);
        if outer.low > 0.0 {
            let r = outer.low * (1.0 + PINNED);
            rq.pinned = Some((r, outer.sign * rq.tail(r)));
        }
        Ok(rq)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn radial(&self, r: f64) -> f64 {
        let u = r * r;
        self.a.iter().rev().fold(0.0, |acc, c| acc * u + c)
    }

    /// `1 / (r^{k+1} R(r))`.
    pub fn integrand(&self, r: f64) -> f64 {
        1.0 / (r.powi(self.k as i32 + 1) * self.radial(r))
    }

    /// Positive roots of `R`, ascending.
    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Unbounded component beyond the largest root.
    pub fn outer(&self) -> &Component {
        self.components.last().expect("at least one component")
    }

    pub fn outer_index(&self) -> usize {
        self.components.len() - 1
    }

    /// `(ρ_low, ∞)`, the component containing the outer reference point.
    pub fn valid_interval(&self) -> (f64, f64) {
        let c = self.outer();
        (c.low, c.high)
    }

    /// `lim g(ρ)` as `ρ → ∞` on the outer component.
    pub fn g_inf(&self) -> f64 {
        self.g_inf
    }

    pub fn component_of(&self, rho: f64) -> Option<usize> {
        if rho.is_nan() || rho <= 0.0 || !rho.is_finite() {
            return None;
        }
        if self.roots.iter().any(|r| (rho - r).abs() <= 1e-14 * r.max(1.0)) {
            return None;
        }
        self.components.iter().position(|c| c.contains(rho))
    }

    /// `g(ρ)` relative to the reference point of component `comp`.
    pub fn g(&self, comp: usize, rho: f64) -> f64 {
        let c = &self.components[comp];
        if comp == self.outer_index() && rho > c.reference {
            return self.g_inf - quad::integrate_to_infinity(|r| self.integrand(r), rho, QUAD_ABS, QUAD_REL);
        }
        let (d_ref, d_rho) = (c.reference - c.low, rho - c.low);
        if c.low > 0.0 && d_rho > 0.0 && d_rho < 0.5 * d_ref {
            return self.near_root(comp - 1, 1.0, d_ref, d_rho);
        }
        let (d_ref, d_rho) = (c.high - c.reference, c.high - rho);
        if c.high.is_finite() && d_rho > 0.0 && d_rho < 0.5 * d_ref {
            return self.near_root(comp, -1.0, d_ref, d_rho);
        }
        quad::integrate(|r| self.integrand(r), c.reference, rho, QUAD_ABS, QUAD_REL)
    }

    /// `∫ dr / (r^{k+1} R(r))` between `root + side·d0` and `root + side·d1`,
    /// in the variable `s = ln d` with the root factored out of `R`.
    fn near_root(&self, idx: usize, side: f64, d0: f64, d1: f64) -> f64 {
        let f = &self.factors[idx];
        let scaled = |s: f64| {
            let d = s.exp();
            let r = f.root + side * d;
            let u = r * r;
            let rest = f.rest.iter().rev().fold(0.0, |acc, c| acc * u + c);
            let linear = side * (2.0 * f.root + side * d);
            d.powi(1 - f.mult) / (r.powi(self.k as i32 + 1) * linear.powi(f.mult) * rest)
        };
        side * quad::integrate(scaled, d0.ln(), d1.ln(), QUAD_ABS, QUAD_REL)
    }

    /// `∫_ρ^∞ dr / (r^{k+1} R(r))` on the outer component.
    pub fn tail(&self, rho: f64) -> f64 {
        let c = self.outer();
        if rho >= c.reference {
            quad::integrate_to_infinity(|r| self.integrand(r), rho, QUAD_ABS, QUAD_REL)
        } else {
            self.g_inf - self.g(self.outer_index(), rho)
        }
    }

    /// Solves `g(ρ) = target` inside component `comp`; `None` when the value
    /// is not attained (the solution has left the component through ∞).
    pub fn invert(&self, comp: usize, target: f64) -> Option<f64> {
        let c = self.components[comp];
        if comp == self.outer_index() {
            let gap = c.sign * (self.g_inf - target);
            return self.outer_radius_for_gap(gap);
        }
        monotone_solve(
            |r| c.sign * self.g(comp, r),
            |r| c.sign * self.integrand(r),
            c.sign * target,
            c.reference,
            c.low,
            c.high,
        )
    }

    /// Radius on the outer component with `σ (g_∞ − g(ρ)) = gap`; `None` for
    /// `gap ≤ 0` (the solution is at infinity).
    pub fn outer_radius_for_gap(&self, gap: f64) -> Option<f64> {
        if gap.is_nan() || gap <= 0.0 {
            return None;
        }
        if let Some((r, pinned_gap)) = self.pinned {
            if gap >= pinned_gap {
                return Some(r);
            }
        }
        let c = *self.outer();
        // σ·tail is positive and decreasing in ρ
        monotone_solve(
            |r| -c.sign * self.tail(r),
            |r| c.sign * self.integrand(r),
            -gap,
            c.reference,
            c.low,
            c.high,
        )
    }
}

const PINNED: f64 = 1e-13;

/// Root of an increasing function on `(low, high)` starting from `start`,
/// by bracket expansion and safeguarded Newton. Brackets are split in the
/// distance to whichever end they crowd, since `g` is logarithmic at roots.
fn monotone_solve(
    phi: impl Fn(f64) -> f64,
    dphi: impl Fn(f64) -> f64,
    target: f64,
    start: f64,
    low: f64,
    high: f64,
) -> Option<f64> {
    let v0 = phi(start) - target;
    if v0 == 0.0 {
        return Some(start);
    }
    let (mut a, mut b) = (start, start);
    let mut found = false;
    for n in 0..12 {
        let scale = 2f64.powi(1 << n);
        if v0 < 0.0 {
            let mut cand = if high.is_infinite() {
                start * scale
            } else {
                high - (high - start) / scale
            };
            if !cand.is_finite() || cand > 1e300 {
                return None;
            }
            let pinned = high - cand <= PINNED * high;
            if pinned {
                cand = high * (1.0 - PINNED);
            }
            if phi(cand) >= target {
                b = cand;
                found = true;
                break;
            }
            if pinned {
                // indistinguishable from the root in floating point
                return Some(cand);
            }
            a = cand;
        } else {
            let mut cand = low + (start - low) / scale;
            let pinned = low > 0.0 && cand - low <= PINNED * low;
            if pinned {
                cand = low * (1.0 + PINNED);
            } else if cand <= low {
                return None;
            }
            if phi(cand) <= target {
                a = cand;
                found = true;
                break;
            }
            if pinned {
                return Some(cand);
            }
            b = cand;
        }
    }
    if !found {
        return None;
    }
    let split = |a: f64, b: f64| {
        let (da, db) = (a - low, b - low);
        if da > 0.0 && db > 4.0 * da {
            return low + (da * db).sqrt();
        }
        if high.is_finite() {
            let (ea, eb) = (high - a, high - b);
            if eb > 0.0 && ea > 4.0 * eb {
                return high - (ea * eb).sqrt();
            }
        }
        0.5 * (a + b)
    };
    let mut x = split(a, b);
    for _ in 0..300 {
        let fx = phi(x) - target;
        if fx == 0.0 {
            return Some(x);
        }
        if fx < 0.0 {
            a = x;
        } else {
            b = x;
        }
        if b - a <= 4.0 * f64::EPSILON * b {
            break;
        }
        let newton = x - fx / dphi(x);
        if (newton - x).abs() <= 4.0 * f64::EPSILON * x {
            return Some(x);
        }
        let next = if newton.is_finite() && newton > a && newton < b {
            newton
        } else {
            split(a, b)
        };
        if (next - x).abs() <= 2.0 * f64::EPSILON * x {
            return Some(next);
        }
        x = next;
    }
    Some(x)
}

/// Circle restriction of `Q` together with the radial quadrature data: the
/// pair determines `dρ/dθ` completely.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarForm {
    pub trig: TrigPoly,
    pub radial: RadialQuadrature,
}

impl PolarForm {
    /// `ρ^{k+1} Q(cos θ, sin θ) R(ρ)`.
    pub fn rhs(&self, theta: f64, rho: f64) -> f64 {
        rho.powi(self.radial.k as i32 + 1) * self.trig.eval(theta) * self.radial.radial(rho)
    }
}

pub fn polar_rhs(s: &FactoredSystem) -> Result<PolarForm, CenterError> {
    Ok(PolarForm {
        trig: TrigPoly::restrict_to_circle(s.q(), true)?,
        radial: RadialQuadrature::new(s.k(), s.a())?,
    })
}

/// Mean condition on the circle restriction of `Q`, exact.
pub fn is_center(s: &FactoredSystem) -> bool {
    TrigPoly::restrict_to_circle(s.q(), true)
        .map(|t| t.mean_is_zero())
        .unwrap_or(false)
}

fn require_center(s: &FactoredSystem) -> Result<TrigPoly, CenterError> {
    let t = TrigPoly::restrict_to_circle(s.q(), true)?;
    if !t.mean_is_zero() {
        return Err(CenterError::NotACenter(crate::poly::format_rational(t.c0())));
    }
    Ok(t)
}

/// `Φ(x, y) = g(ρ) − F(θ)`, constant along trajectories within a component.
#[derive(Debug, Clone)]
pub struct ConservedQuantity {
    pub antiderivative: TrigPoly,
    pub radial: Option<RadialQuadrature>,
}

impl ConservedQuantity {
    pub fn eval(&self, x: f64, y: f64) -> Result<f64, CenterError> {
        let rho = x.hypot(y);
        let theta = y.atan2(x);
        let f = self.antiderivative.eval(theta);
        match &self.radial {
            // H ≡ 0: level sets are circles
            None if rho > 0.0 => Ok(rho),
            None => Err(CenterError::OutsideValidInterval { rho }),
            Some(rq) => {
                let comp = rq
                    .component_of(rho)
                    .ok_or(CenterError::OutsideValidInterval { rho })?;
                Ok(rq.g(comp, rho) - f)
            }
        }
    }
}

pub fn conserved_quantity(s: &FactoredSystem) -> Result<ConservedQuantity, CenterError> {
    let t = require_center(s)?;
    let radial = if s.is_degenerate() {
        None
    } else {
        Some(RadialQuadrature::new(s.k(), s.a())?)
    };
    Ok(ConservedQuantity {
        antiderivative: t.antiderivative()?,
        radial,
    })
}

/// `dρ/dθ = ρ H(ρ cos θ, ρ sin θ)`, valid for every uniformly isochronous system.
fn polar_field(s: &UniformSystem) -> impl Fn(f64, &[f64; 1]) -> [f64; 1] + '_ {
    move |theta: f64, y: &[f64; 1]| {
        let rho = y[0];
        let (sn, cs) = theta.sin_cos();
        [rho * s.h().eval(rho * cs, rho * sn)]
    }
}

pub fn return_map_settings(tol: f64) -> OdeSettings {
    OdeSettings::default().with_rtol(tol).with_atol(tol * 1e-2)
}

/// `ρ(2π)` for the solution with `ρ(0) = ρ₀`, by direct integration of the
/// polar equation (independent of the quadrature route).
pub fn return_map(s: &UniformSystem, rho0: f64, tol: f64) -> Result<f64, CenterError> {
    return_map_with(s, rho0, &return_map_settings(tol))
}

pub fn return_map_with(s: &UniformSystem, rho0: f64, settings: &OdeSettings) -> Result<f64, CenterError> {
    polar_trajectory(s, rho0, 0.0, &[TAU], settings).map(|v| v[0])
}

/// `ρ` at each of the ascending angles `thetas`, starting from `ρ(theta0) = ρ₀`.
pub fn polar_trajectory(
    s: &UniformSystem,
    rho0: f64,
    theta0: f64,
    thetas: &[f64],
    settings: &OdeSettings,
) -> Result<Vec<f64>, CenterError> {
    let f = polar_field(s);
    let mut out = Vec::with_capacity(thetas.len());
    let (mut t, mut rho) = (theta0, rho0);
    for &target in thetas {
        let y = ode::integrate(&f, t, [rho], target, settings, |_, _| {}).map_err(|e| match e {
            OdeError::BlowUp { t } => CenterError::BlowUp { theta: t },
            other => CenterError::Integration(other),
        })?;
        t = target;
        rho = y[0];
        out.push(rho);
    }
    Ok(out)
}

/// Sampled polar trajectory `(θ, ρ)` at every accepted integrator step, up to
/// `theta_end` or escape.
pub fn polar_path(
    s: &UniformSystem,
    rho0: f64,
    theta0: f64,
    theta_end: f64,
    settings: &OdeSettings,
) -> (Vec<(f64, f64)>, Option<f64>) {
    let mut path = Vec::new();
    let res = ode::integrate(polar_field(s), theta0, [rho0], theta_end, settings, |t, y| {
        path.push((t, y[0]))
    });
    let escape = res.err().map(|e| e.time());
    (path, escape)
}

/// Quadrature solution: `ρ(θ)` with `g(ρ(θ)) = g(ρ₀) + F(θ) − F(θ₀)`,
/// `None` once the solution has escaped.
pub fn quadrature_solution(
    form: &PolarForm,
    antiderivative: &TrigPoly,
    rho0: f64,
    theta0: f64,
    theta: f64,
) -> Result<Option<f64>, CenterError> {
    let comp = form
        .radial
        .component_of(rho0)
        .ok_or(CenterError::OutsideValidInterval { rho: rho0 })?;
    let target =
        form.radial.g(comp, rho0) + antiderivative.eval(theta) - antiderivative.eval(theta0);
    Ok(form.radial.invert(comp, target))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifySettings {
    pub grid: usize,
    pub cluster_tol: f64,
}

impl Default for ClassifySettings {
    fn default() -> Self {
        Self {
            grid: 720,
            cluster_tol: DEFAULT_CLUSTER_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundarySample {
    pub theta: f64,
    /// `None` where the boundary is at infinity.
    pub rho: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CenterReport {
    pub is_center: bool,
    pub nu: usize,
    pub type_label: String,
    pub k: u32,
    pub invariant_circles: Vec<f64>,
    pub asymptote_directions: Vec<f64>,
    pub boundary_samples: Vec<BoundarySample>,
    /// ν = 1 for odd `k`, ν = 2 for even `k`.
    pub generic: bool,
    /// Several maximisers within the clustering tolerance.
    pub tied: bool,
    /// `H ≡ 0`: the whole plane is the center region.
    pub degenerate: bool,
    /// Global maximum of `σ F`.
    pub max_f: f64,
}

/// Boundary of the center region and its escape directions.
pub struct CenterBoundary {
    pub form: PolarForm,
    pub antiderivative: TrigPoly,
    /// `σ F`
    pub signed_f: TrigPoly,
    pub maxima: GlobalMax,
    pub sign: f64,
    pub cluster_tol: f64,
}

impl CenterBoundary {
    pub fn new(s: &FactoredSystem, cluster_tol: f64) -> Result<Self, CenterError> {
        let trig = require_center(s)?;
        let radial = RadialQuadrature::new(s.k(), s.a())?;
        let antiderivative = trig.antiderivative()?;
        let sign = outer_sign(s.a());
        let signed_f = antiderivative.scale(&rat_int(sign as i64));
        let maxima = signed_f.global_maxima(cluster_tol);
        Ok(Self {
            form: PolarForm { trig, radial },
            antiderivative,
            signed_f,
            maxima,
            sign,
            cluster_tol,
        })
    }

    /// `ρ_b(θ)`, `None` on an escape direction.
    pub fn radius(&self, theta: f64) -> Option<f64> {
        let gap = self.maxima.value - self.signed_f.eval(theta);
        if gap <= self.cluster_tol {
            return None;
        }
        self.form.radial.outer_radius_for_gap(gap)
    }
}

/// Result of [`boundary_radius`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum BoundaryRadius {
    Finite(f64),
    Infinite,
}

pub fn boundary_radius(s: &FactoredSystem, theta: f64) -> Result<BoundaryRadius, CenterError> {
    require_center(s)?;
    if s.is_degenerate() {
        return Ok(BoundaryRadius::Infinite);
    }
    let b = CenterBoundary::new(s, DEFAULT_CLUSTER_TOL)?;
    Ok(match b.radius(theta) {
        Some(r) => BoundaryRadius::Finite(r),
        None => BoundaryRadius::Infinite,
    })
}

pub fn classify(s: &FactoredSystem) -> Result<CenterReport, CenterError> {
    classify_with(s, &ClassifySettings::default())
}

pub fn classify_with(s: &FactoredSystem, settings: &ClassifySettings) -> Result<CenterReport, CenterError> {
    require_center(s)?;
    let k = s.k();
    if s.is_degenerate() {
        return Ok(CenterReport {
            is_center: true,
            nu: 0,
            type_label: "B^0".into(),
            k,
            invariant_circles: Vec::new(),
            asymptote_directions: Vec::new(),
            boundary_samples: Vec::new(),
            generic: false,
            tied: false,
            degenerate: true,
            max_f: 0.0,
        });
    }
    let boundary = CenterBoundary::new(s, settings.cluster_tol)?;
    let nu = boundary.maxima.argmax.len();
    if nu > k as usize {
        return Err(CenterError::BoundViolated { nu, k });
    }
    let grid = settings.grid.max(1);
    let boundary_samples = (0..grid)
        .map(|i| {
            let theta = TAU * i as f64 / grid as f64;
            BoundarySample {
                theta,
                rho: boundary.radius(theta),
            }
        })
        .collect();
    let generic = nu == if k % 2 == 1 { 1 } else { 2 };
    Ok(CenterReport {
        is_center: true,
        nu,
        type_label: format!("B^{nu}"),
        k,
        invariant_circles: boundary.form.radial.roots().to_vec(),
        asymptote_directions: boundary.maxima.argmax.clone(),
        boundary_samples,
        generic,
        tied: boundary.maxima.tied,
        degenerate: false,
        max_f: boundary.maxima.value,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsochronicityStats {
    /// `max |dθ/dt − 1|` over all accepted states.
    pub max_rate_deviation: f64,
    /// `max |θ(t) − θ(0) − t|` with θ unwrapped along the trajectory.
    pub max_phase_drift: f64,
    pub samples: usize,
}

/// Integrates the Cartesian system for one period from `samples` seeded
/// random points with `0 < ρ₀ ≤ rho_max` and measures the angular speed.
pub fn isochronicity_check(
    s: &UniformSystem,
    samples: usize,
    rho_max: f64,
    seed: u64,
    settings: &OdeSettings,
) -> IsochronicityStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_rate: f64 = 0.0;
    let mut max_drift: f64 = 0.0;
    for _ in 0..samples {
        let rho0 = rho_max * (1.0 - rng.gen::<f64>());
        let phi0 = TAU * rng.gen::<f64>();
        let start = [rho0 * phi0.cos(), rho0 * phi0.sin()];
        let mut unwrapped = phi0;
        let mut last_angle = phi0;
        let _ = ode::integrate(
            |_, y: &[f64; 2]| {
                let (u, v) = s.rhs(y[0], y[1]);
                [u, v]
            },
            0.0,
            start,
            TAU,
            settings,
            |t, y| {
                let (u, v) = s.rhs(y[0], y[1]);
                let r2 = y[0] * y[0] + y[1] * y[1];
                if r2 > 0.0 {
                    let rate = (y[0] * v - y[1] * u) / r2;
                    max_rate = max_rate.max((rate - 1.0).abs());
                }
                let angle = y[1].atan2(y[0]);
                let mut d = angle - last_angle;
                d -= TAU * (d / TAU).round();
                unwrapped += d;
                last_angle = angle;
                max_drift = max_drift.max((unwrapped - phi0 - t).abs());
            },
        );
    }
    IsochronicityStats {
        max_rate_deviation: max_rate,
        max_phase_drift: max_drift,
        samples,
    }
}

/// `F`, the antiderivative of the circle restriction of `Q` with `F(0) = 0`.
pub fn antiderivative_of(s: &FactoredSystem) -> Result<TrigPoly, CenterError> {
    Ok(require_center(s)?.antiderivative()?)
}
