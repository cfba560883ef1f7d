//! Uniformly isochronous systems `ẋ = −y + xH, ẏ = x + yH` and the factored
//! family `H = Q · Σ a_i (x² + y²)^i` with homogeneous `Q`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{format_rational, rational_to_f64, BivarPoly, Rational};
use crate::upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("Q must be a nonzero homogeneous polynomial")]
    NonHomogeneous,
    #[error("radial coefficient list is empty")]
    EmptyRadial,
    #[error("radial factor R is identically zero")]
    ZeroRadial,
    #[error("H has nonzero constant term {0}")]
    NonzeroConstant(String),
    #[error("Darboux identity violated: {0}")]
    IdentityViolation(String),
}

/// A planar polynomial vector field `(P, S)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyVectorField {
    pub p: BivarPoly,
    pub s: BivarPoly,
}

impl PolyVectorField {
    pub fn new(p: BivarPoly, s: BivarPoly) -> Self {
        Self { p, s }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.s.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        match (self.p.degree(), self.s.degree()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        (self.p.eval(x, y), self.s.eval(x, y))
    }

    /// Derivative of `f` along the field: `P f_x + S f_y`.
    pub fn apply(&self, f: &BivarPoly) -> BivarPoly {
        let (fx, fy) = f.partials();
        &(&self.p * &fx) + &(&self.s * &fy)
    }

    pub fn divergence(&self) -> BivarPoly {
        let (px, _) = self.p.partials();
        let (_, sy) = self.s.partials();
        &px + &sy
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.p.scale(c), self.s.scale(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.p + &other.p, &self.s + &other.s)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.p - &other.p, &self.s - &other.s)
    }

    /// Homogeneous part of degree `d` of both components.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::new(self.p.homogeneous_part(d), self.s.homogeneous_part(d))
    }
}

/// `ẋ = −y + x H`, `ẏ = x + y H` with `H(0, 0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformSystem {
    h: BivarPoly,
}

impl UniformSystem {
    pub fn new(h: BivarPoly) -> Result<Self, SystemError> {
        let c = h.constant_term();
        if !c.is_zero() {
            return Err(SystemError::NonzeroConstant(format_rational(&c)));
        }
        Ok(Self { h })
    }

    pub fn h(&self) -> &BivarPoly {
        &self.h
    }

    /// `H ≡ 0`: a pure rotation.
    pub fn is_degenerate(&self) -> bool {
        self.h.is_zero()
    }

    pub fn vector_field(&self) -> PolyVectorField {
        let x = BivarPoly::x();
        let y = BivarPoly::y();
        PolyVectorField::new(&(-&y) + &(&x * &self.h), &x + &(&y * &self.h))
    }

    /// Right-hand side in Cartesian form, floating point.
    pub fn rhs(&self, x: f64, y: f64) -> (f64, f64) {
        let h = self.h.eval(x, y);
        (-y + x * h, x + y * h)
    }
}

/// `H = Q · R(x² + y²)` with `Q` homogeneous of degree `k ≥ 1` and
/// `R(ρ) = Σ a_i ρ^{2i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredSystem {
    q: BivarPoly,
    k: u32,
    a: Vec<Rational>,
}

impl FactoredSystem {
    pub fn new(q: BivarPoly, a: Vec<Rational>) -> Result<Self, SystemError> {
        let k = q.homogeneous_degree().ok_or(SystemError::NonHomogeneous)?;
        if k == 0 {
            // a constant Q would give H(0,0) ≠ 0
            return Err(SystemError::NonHomogeneous);
        }
        if a.is_empty() {
            return Err(SystemError::EmptyRadial);
        }
        Ok(Self { q, k, a })
    }

    /// Recovers `Q` and `a` from `H` when `H = Q · Σ a_i (x² + y²)^i` with
    /// `Q` the lowest homogeneous component (`a_0 = 1`).
    pub fn from_h(h: &BivarPoly) -> Option<Self> {
        let comps = h.homogeneous_components();
        let (k, q) = comps.components.first()?.clone();
        let top = h.degree()?;
        if k == 0 || (top - k) % 2 == 1 {
            return None;
        }
        let r2 = BivarPoly::r2();
        let mut a = vec![Rational::zero(); ((top - k) / 2 + 1) as usize];
        a[0] = Rational::one();
        for (d, part) in &comps.components[1..] {
            if (d - k) % 2 == 1 {
                return None;
            }
            let i = (d - k) / 2;
            a[i as usize] = part.scalar_ratio(&(&r2.pow(i) * &q))?;
        }
        Self::new(q, a).ok()
    }

    pub fn q(&self) -> &BivarPoly {
        &self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    /// Index of the last radial coefficient, as given (trailing zeros kept).
    pub fn m(&self) -> usize {
        self.a.len() - 1
    }

    /// `Σ a_i (x² + y²)^i`.
    pub fn radial_poly(&self) -> BivarPoly {
        weighted_r2_sum(self.a.iter().cloned().enumerate())
    }

    /// `R` as a polynomial in `u = ρ²`.
    pub fn radial_in_u(&self) -> UPoly {
        UPoly::new(self.a.clone())
    }

    pub fn radial_is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    pub fn h(&self) -> BivarPoly {
        &self.q * &self.radial_poly()
    }

    pub fn uniform(&self) -> UniformSystem {
        UniformSystem { h: self.h() }
    }

    pub fn is_degenerate(&self) -> bool {
        self.radial_is_zero()
    }

    pub fn vector_field(&self) -> PolyVectorField {
        self.uniform().vector_field()
    }

    /// `R(ρ)` in floating point.
    pub fn radial_eval(&self, rho: f64) -> f64 {
        let u = rho * rho;
        self.a
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + rational_to_f64(c))
    }

    /// Positive roots `ρ_i` of `R`; each circle `x² + y² = ρ_i²` is a trajectory.
    pub fn invariant_circles(&self) -> Result<Vec<f64>, SystemError> {
        if self.radial_is_zero() {
            return Err(SystemError::ZeroRadial);
        }
        Ok(self
            .radial_in_u()
            .positive_roots(1e-15)
            .into_iter()
            .map(f64::sqrt)
            .collect())
    }

    pub fn darboux_report(&self) -> Result<DarbouxReport, SystemError> {
        let field = self.vector_field();
        let f1 = BivarPoly::r2();
        let f2 = self.radial_poly();
        let two = Rational::from_integer(BigInt::from(2));
        let k1 = (&self.q * &f2).scale(&two);
        let weighted = weighted_r2_sum(
            self.a
                .iter()
                .enumerate()
                .map(|(i, a)| (i, a * Rational::from_integer(BigInt::from(i)))),
        );
        let k2 = (&self.q * &weighted).scale(&two);
        let divergence = field.divergence();

        let first_invariant = field.apply(&f1) == &k1 * &f1;
        let second_invariant = field.apply(&f2) == &k2 * &f2;
        let e1 = Rational::new(BigInt::from(self.k + 2), BigInt::from(2));
        let identity_holds = &k1.scale(&e1) + &k2 == divergence;

        if !(first_invariant && second_invariant && identity_holds) {
            return Err(SystemError::IdentityViolation(format!(
                "X(f1)=K1 f1: {first_invariant}, X(f2)=K2 f2: {second_invariant}, \
                 cofactor sum = div: {identity_holds}"
            )));
        }
        Ok(DarbouxReport {
            f1,
            f2,
            k1,
            k2,
            divergence,
            invariants_hold: true,
            identity_holds,
            mu_exponents: (e1, Rational::one()),
        })
    }
}

fn weighted_r2_sum(coeffs: impl Iterator<Item = (usize, Rational)>) -> BivarPoly {
    let r2 = BivarPoly::r2();
    let mut power = BivarPoly::one();
    let mut out = BivarPoly::zero();
    let mut current = 0usize;
    for (i, c) in coeffs {
        while current < i {
            power = &power * &r2;
            current += 1;
        }
        out = &out + &power.scale(&c);
    }
    out
}

/// Invariants `f1 = x² + y²`, `f2 = R(x² + y²)` with their cofactors, and the
/// exponents of the integrating factor `μ = f1^{(k+2)/2} · f2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DarbouxReport {
    pub f1: BivarPoly,
    pub f2: BivarPoly,
    pub k1: BivarPoly,
    pub k2: BivarPoly,
    pub divergence: BivarPoly,
    /// `X(f_j) = K_j f_j` for both invariants.
    pub invariants_hold: bool,
    /// `(k+2)/2 · K1 + K2 = div`.
    pub identity_holds: bool,
    pub mu_exponents: (Rational, Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DarbouxSerial {
    pub f1: String,
    pub f2: String,
    pub k1: String,
    pub k2: String,
    pub divergence: String,
    pub invariants_hold: bool,
    pub identity_holds: bool,
    pub mu_exponents: [String; 2],
}

impl DarbouxReport {
    pub fn to_serial(&self) -> DarbouxSerial {
        DarbouxSerial {
            f1: self.f1.to_string(),
            f2: self.f2.to_string(),
            k1: self.k1.to_string(),
            k2: self.k2.to_string(),
            divergence: self.divergence.to_string(),
            invariants_hold: self.invariants_hold,
            identity_holds: self.identity_holds,
            mu_exponents: [
                format_rational(&self.mu_exponents.0),
                format_rational(&self.mu_exponents.1),
            ],
        }
    }
}

pub fn build_eq2(q: BivarPoly, a: Vec<Rational>) -> Result<FactoredSystem, SystemError> {
    FactoredSystem::new(q, a)
}

/// `H = q · h(x² + y², p)` with `q = c (x p_y − y p_x)`; `h` is given as a
/// polynomial whose `x`/`y` slots stand for `u`/`v`.
pub fn build_thm2(p: &BivarPoly, c: &Rational, h: &BivarPoly) -> Result<UniformSystem, SystemError> {
    match p.homogeneous_degree() {
        Some(k) if k >= 1 => {}
        _ => return Err(SystemError::NonHomogeneous),
    }
    let q = p.rotational_derivative().scale(c);
    let composed = h.compose(&BivarPoly::r2(), p);
    UniformSystem::new(&q * &composed)
}

/// Sign of the last nonzero radial coefficient, `+1` or `-1`.
pub(crate) fn outer_sign(a: &[Rational]) -> f64 {
    match a.iter().rev().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => -1.0,
        _ => 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};
    use crate::trig::TrigPoly;

    fn p(s: &str) -> BivarPoly {
        s.parse().unwrap()
    }

    fn ints(cs: &[i64]) -> Vec<Rational> {
        cs.iter().map(|&c| rat_int(c)).collect()
    }

    fn cubic() -> FactoredSystem {
        build_eq2(p("y^3 - 3*x*y^2 + 2*x^2*y"), ints(&[1, 1])).unwrap()
    }

    #[test]
    fn build_eq2_examples() {
        let s = cubic();
        assert_eq!(
            s.h(),
            &p("y^3 - 3*x*y^2 + 2*x^2*y") * &p("1 + x^2 + y^2")
        );
        assert_eq!((s.k(), s.m()), (3, 1));

        let s = build_eq2(p("y"), ints(&[1])).unwrap();
        let field = s.vector_field();
        assert_eq!(field.p, p("-y + x*y"));
        assert_eq!(field.s, p("x + y^2"));

        let s = build_eq2(p("x"), ints(&[0])).unwrap();
        assert!(s.h().is_zero() && s.is_degenerate());

        assert_eq!(build_eq2(p("x + y^2"), ints(&[1])), Err(SystemError::NonHomogeneous));
        assert_eq!(build_eq2(BivarPoly::zero(), ints(&[1])), Err(SystemError::NonHomogeneous));
        assert_eq!(build_eq2(p("x"), vec![]), Err(SystemError::EmptyRadial));
    }

    #[test]
    fn build_thm2_examples() {
        let s = build_thm2(&p("x*y"), &rat_int(1), &p("y")).unwrap();
        assert_eq!(s.h(), &(&p("x^2 - y^2") * &p("x*y")));
        let s = build_thm2(&p("x"), &rat_int(1), &BivarPoly::one()).unwrap();
        assert_eq!(s.h(), &p("-y"));
        let s = build_thm2(&p("x^3 - x*y^2"), &rat(2, 3), &BivarPoly::zero()).unwrap();
        assert!(s.is_degenerate());
        assert!(build_thm2(&p("x + y^2"), &rat_int(1), &p("x")).is_err());
    }

    #[test]
    fn thm2_restriction_matches_reduced_form() {
        // on the unit circle H = c f'(θ) h(1, f(θ)) with f = p(cos, sin)
        let pp = p("x^2*y - 1/2*y^3 + x^3");
        let c = rat(3, 2);
        let h = p("1 + x - 2*y + x*y^2");
        let s = build_thm2(&pp, &c, &h).unwrap();
        let f = TrigPoly::restrict_to_circle(&pp, true).unwrap();
        let df = f.derivative();
        for i in 0..40 {
            let t = 0.157 * i as f64;
            let lhs = s.h().eval(t.cos(), t.sin());
            let rhs = 1.5 * df.eval(t) * h.eval(1.0, f.eval(t));
            assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn vector_field_examples() {
        let rot = UniformSystem::new(BivarPoly::zero()).unwrap().vector_field();
        assert_eq!(rot, PolyVectorField::new(p("-y"), p("x")));
        let f = UniformSystem::new(p("x^2")).unwrap().vector_field();
        assert_eq!(f, PolyVectorField::new(p("-y + x^3"), p("x + x^2*y")));
        let f_cubic = cubic().vector_field();
        assert_eq!(f_cubic.degree(), Some(6));
        assert_eq!(cubic().h().homogeneous_components().degrees(), vec![3, 5]);
        assert!(UniformSystem::new(p("1 + x")).is_err());
    }

    #[test]
    fn divergence_examples() {
        assert!(PolyVectorField::new(p("-y"), p("x")).divergence().is_zero());
        assert_eq!(PolyVectorField::new(p("x"), p("y")).divergence(), p("2"));
    }

    #[test]
    fn darboux_examples() {
        let r = cubic().darboux_report().unwrap();
        assert!(r.identity_holds && r.invariants_hold);
        assert_eq!(r.k2, (&p("y^3 - 3*x*y^2 + 2*x^2*y") * &BivarPoly::r2()).scale(&rat_int(2)));
        assert_eq!(r.mu_exponents, (rat(5, 2), rat_int(1)));

        let s = build_eq2(p("y"), ints(&[1])).unwrap();
        let r = s.darboux_report().unwrap();
        assert_eq!(r.k1, p("2*y"));
        assert!(r.k2.is_zero());
        assert_eq!(r.divergence, p("3*y"));

        let s = build_eq2(p("x^2 - y^2"), ints(&[1, 0])).unwrap();
        let r = s.darboux_report().unwrap();
        assert_eq!(r.f2, BivarPoly::one());
        assert!(r.k2.is_zero());
    }

    #[test]
    fn invariant_circle_examples() {
        assert!(cubic().invariant_circles().unwrap().is_empty());
        let s = build_eq2(p("y"), ints(&[-1, 1])).unwrap();
        let c = s.invariant_circles().unwrap();
        assert_eq!(c.len(), 1);
        assert!((c[0] - 1.0).abs() < 1e-12);
        assert!(build_eq2(p("y"), ints(&[1])).unwrap().invariant_circles().unwrap().is_empty());
        assert_eq!(
            build_eq2(p("y"), ints(&[0, 0])).unwrap().invariant_circles(),
            Err(SystemError::ZeroRadial)
        );
        // (u - 1/4)(u - 4)^2: double root still reported once
        let a = vec![rat_int(-4), rat_int(18), rat(-33, 4), rat_int(1)];
        let c = build_eq2(p("x*y"), a).unwrap().invariant_circles().unwrap();
        assert_eq!(c.len(), 2);
        assert!((c[0] - 0.5).abs() < 1e-12 && (c[1] - 2.0).abs() < 1e-12);
    }
}

#[cfg(test)]
pub(crate) mod props {
    use super::*;
    use crate::poly::rat;
    use proptest::prelude::*;

    pub(crate) fn arb_factored(max_k: u32, max_m: usize) -> impl Strategy<Value = FactoredSystem> {
        (1..=max_k, 0..=max_m).prop_flat_map(|(k, m)| {
            (
                prop::collection::vec((-5i64..=5, 1i64..=3), (k + 1) as usize),
                prop::collection::vec((-4i64..=4, 1i64..=3), m + 1),
            )
                .prop_filter_map("Q must be nonzero", move |(qc, ac)| {
                    let q = BivarPoly::from_terms(
                        qc.into_iter()
                            .enumerate()
                            .map(|(i, (n, d))| (rat(n, d), i as u32, k - i as u32)),
                    );
                    let a = ac.into_iter().map(|(n, d)| rat(n, d)).collect();
                    FactoredSystem::new(q, a).ok()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn darboux_identities_hold(s in arb_factored(6, 3)) {
            let r = s.darboux_report().unwrap();
            prop_assert!(r.invariants_hold && r.identity_holds);
        }

        #[test]
        fn factoring_recovers_the_product_form(s in arb_factored(4, 3)) {
            prop_assume!(!s.radial_is_zero() && !s.a()[0].is_zero());
            let f = FactoredSystem::from_h(&s.h()).unwrap();
            prop_assert_eq!(f.h(), s.h());
            prop_assert_eq!(f.k(), s.k());
        }

        #[test]
        fn thm2_has_no_constant(
            qc in prop::collection::vec(-3i64..=3, 4),
            hc in prop::collection::vec(-3i64..=3, 4),
        ) {
            let pp = BivarPoly::from_terms(qc.iter().enumerate().map(|(i, &c)| (rat(c, 1), i as u32, 3 - i as u32)));
            prop_assume!(!pp.is_zero());
            let h = BivarPoly::from_terms(hc.iter().enumerate().map(|(i, &c)| (rat(c, 1), (i % 2) as u32, (i / 2) as u32)));
            let s = build_thm2(&pp, &rat(1, 2), &h).unwrap();
            prop_assert!(s.h().constant_term().is_zero());
        }
    }
}
