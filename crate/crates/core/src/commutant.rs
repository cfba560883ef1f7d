//! Polynomial commutants of uniformly isochronous fields.
//!
//! A field `Y` commutes with `X` when the Lie bracket `[X, Y] = (DY)X − (DX)Y`
//! vanishes identically. Comparing top homogeneous parts of `[X, Y]` gives a
//! 2×2 system in the top pair `(R_n, S_n)` of `Y` whose determinant filters
//! the possible top degrees `n`. The full commutant up to a degree bound is
//! the nullspace of an exact linear system in the coefficients of `Y`.
//!
//! The structural criteria are decided on `H` alone: form (7) is
//! `H = P · Σ a_j r^{2j}` with `P` of even degree, form (8) is
//! `H = α Σ a_k β^k` with `x β_y − y β_x = l α`.

use num_integer::binomial;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg;
use crate::poly::{format_rational, rat_int, BivarPoly, Monomial, Rational};
use crate::system::{FactoredSystem, PolyVectorField, UniformSystem};
use crate::upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommutantError {
    #[error("H has no nonzero homogeneous component")]
    ZeroTopPart,
    #[error("a returned commutant element fails the bracket re-check")]
    VerificationFailed,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("H is identically zero")]
    ZeroInput,
    #[error("H has nonzero constant term {0}")]
    NonzeroConstant(String),
    #[error("form (8) left a parameter with only irrational candidates")]
    Inconclusive,
}

/// `[X, Y] = (DY)·X − (DX)·Y`.
pub fn lie_bracket(x: &PolyVectorField, y: &PolyVectorField) -> PolyVectorField {
    PolyVectorField::new(&x.apply(&y.p) - &y.apply(&x.p), &x.apply(&y.s) - &y.apply(&x.s))
}

/// Degrees `n ≥ 1` for which the top-part determinant
/// `Δ(n) = det [[(n−1)H_d − x∂_xH_d, −x∂_yH_d], [−y∂_xH_d, (n−1)H_d − y∂_yH_d]]`
/// vanishes identically.
pub fn admissible_top_degrees(s: &UniformSystem) -> Result<Vec<u32>, CommutantError> {
    let h = s.h();
    let d = h.degree().ok_or(CommutantError::ZeroTopPart)?;
    let top = h.homogeneous_part(d);
    let (hx, hy) = top.partials();
    let x = BivarPoly::x();
    let y = BivarPoly::y();
    let (xhx, xhy) = (&x * &hx, &x * &hy);
    let (yhx, yhy) = (&y * &hx, &y * &hy);
    // Δ = t² H² − t H (x H_x + y H_y) + (x H_x · y H_y − x H_y · y H_x), t = n − 1
    let c2 = &top * &top;
    let c1 = -(&top * &(&xhx + &yhy));
    let c0 = &(&xhx * &yhy) - &(&xhy * &yhx);
    let coeffs: Option<Vec<Rational>> = [c0, c1, c2].iter().map(|c| c.scalar_ratio(&top.pow(2))).collect();
    let Some(coeffs) = coeffs else {
        // not proportional to H²: only common roots of all coefficient polynomials count
        return Ok(Vec::new());
    };
    let delta = UPoly::new(coeffs);
    let mut out: Vec<u32> = delta
        .rational_roots()
        .into_iter()
        .filter(|t| t.is_integer() && *t >= Rational::zero())
        .map(|t| (t.to_integer() + 1u32).try_into().expect("degree fits in u32"))
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommutantBasis {
    pub degree_bound: u32,
    pub basis: Vec<PolyVectorField>,
    /// `X` lies in the span (only decided when `deg X ≤ degree_bound`).
    pub contains_self: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutantBasisSerial {
    pub degree_bound: u32,
    pub dimension: usize,
    /// `[P, S]` in canonical form.
    pub basis: Vec<[String; 2]>,
    pub contains_self: bool,
}

impl CommutantBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn to_serial(&self) -> CommutantBasisSerial {
        CommutantBasisSerial {
            degree_bound: self.degree_bound,
            dimension: self.dimension(),
            basis: self
                .basis
                .iter()
                .map(|f| [f.p.to_string(), f.s.to_string()])
                .collect(),
            contains_self: self.contains_self,
        }
    }
}

/// Unknowns `(component, monomial)` in graded-lex order: all `R` coefficients
/// by degree then descending `x`-power, followed by the same for `S`.
fn unknowns(n_max: u32, include_constants: bool) -> Vec<(usize, Monomial)> {
    let start = if include_constants { 0 } else { 1 };
    let mut out = Vec::new();
    for comp in 0..2 {
        for d in start..=n_max {
            for i in (0..=d).rev() {
                out.push((comp, Monomial::new(i, d - i)));
            }
        }
    }
    out
}

fn unit_field(comp: usize, m: Monomial) -> PolyVectorField {
    let mono = BivarPoly::monomial(Rational::one(), m.x, m.y);
    if comp == 0 {
        PolyVectorField::new(mono, BivarPoly::zero())
    } else {
        PolyVectorField::new(BivarPoly::zero(), mono)
    }
}

fn field_from_vector(vars: &[(usize, Monomial)], v: &[Rational]) -> PolyVectorField {
    let mut p = BivarPoly::zero();
    let mut s = BivarPoly::zero();
    for ((comp, m), c) in vars.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let term = BivarPoly::monomial(c.clone(), m.x, m.y);
        if *comp == 0 {
            p = &p + &term;
        } else {
            s = &s + &term;
        }
    }
    PolyVectorField::new(p, s)
}

fn field_to_vector(vars: &[(usize, Monomial)], f: &PolyVectorField) -> Vec<Rational> {
    vars.iter()
        .map(|(comp, m)| if *comp == 0 { f.p.coeff(m.x, m.y) } else { f.s.coeff(m.x, m.y) })
        .collect()
}

pub fn commutant_nullspace(x: &PolyVectorField, n_max: u32) -> Result<CommutantBasis, CommutantError> {
    commutant_nullspace_with(x, n_max, false)
}

/// As [`commutant_nullspace`]; `include_constants` also admits degree-0 terms in `Y`.
pub fn commutant_nullspace_with(
    x: &PolyVectorField,
    n_max: u32,
    include_constants: bool,
) -> Result<CommutantBasis, CommutantError> {
    let vars = unknowns(n_max, include_constants);
    let columns: Vec<PolyVectorField> = vars
        .par_iter()
        .map(|&(comp, m)| lie_bracket(x, &unit_field(comp, m)))
        .collect();

    // one equation per (component, monomial) appearing in any column
    let mut equations: std::collections::BTreeMap<(usize, Monomial), Vec<Rational>> =
        std::collections::BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (comp, poly) in [(0usize, &col.p), (1, &col.s)] {
            for (m, c) in poly.terms() {
                equations
                    .entry((comp, m))
                    .or_insert_with(|| vec![Rational::zero(); vars.len()])[j] = c.clone();
            }
        }
    }
    let rows: Vec<Vec<Rational>> = equations.into_values().collect();
    let basis: Vec<PolyVectorField> = linalg::nullspace(&rows, vars.len())
        .iter()
        .map(|v| field_from_vector(&vars, v))
        .collect();

    if basis.par_iter().any(|y| !lie_bracket(x, y).is_zero()) {
        return Err(CommutantError::VerificationFailed);
    }

    let fits = x.degree().is_some_and(|d| d <= n_max)
        && (include_constants || (x.p.constant_term().is_zero() && x.s.constant_term().is_zero()));
    let contains_self = fits && !x.is_zero() && {
        let mut rows: Vec<Vec<Rational>> = basis.iter().map(|f| field_to_vector(&vars, f)).collect();
        let before = linalg::rank(&rows, vars.len());
        rows.push(field_to_vector(&vars, x));
        linalg::rank(&rows, vars.len()) == before
    };
    Ok(CommutantBasis {
        degree_bound: n_max,
        basis,
        contains_self,
    })
}

/// Commuter `(x, y) · r^k · R(r²)`.
#[derive(Debug, Clone, PartialEq)]
pub enum RadialCommuter {
    Polynomial(PolyVectorField),
    /// `r^k` with odd `k` is a half-integer power of `x² + y²`.
    NonPolynomial { exponent_num: u32, exponent_den: u32 },
}

impl RadialCommuter {
    pub fn describe(&self) -> String {
        match self {
            RadialCommuter::Polynomial(f) => format!("({}, {})", f.p, f.s),
            RadialCommuter::NonPolynomial { exponent_num, exponent_den } => format!(
                "non-polynomial: (x, y)·(x^2 + y^2)^({exponent_num}/{exponent_den})·R(x^2 + y^2)"
            ),
        }
    }
}

pub fn radial_commuter(s: &FactoredSystem) -> RadialCommuter {
    let k = s.k();
    if k % 2 == 1 {
        return RadialCommuter::NonPolynomial {
            exponent_num: k,
            exponent_den: 2,
        };
    }
    let scale = &BivarPoly::r2().pow(k / 2) * &s.radial_poly();
    RadialCommuter::Polynomial(PolyVectorField::new(&BivarPoly::x() * &scale, &BivarPoly::y() * &scale))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormStatus {
    Match,
    NoMatch,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FormWitness {
    /// `H = P · Σ_j a_j (x² + y²)^j`, `a_0 = 1`.
    Form7 { p: BivarPoly, a: Vec<Rational> },
    /// `H = α · Σ_k a_k β^k`, `x β_y − y β_x = l α`, `a_0 = 1`.
    Form8 {
        l: u32,
        alpha: BivarPoly,
        beta: BivarPoly,
        a: Vec<Rational>,
    },
}

impl FormWitness {
    pub fn reconstruct(&self) -> BivarPoly {
        match self {
            FormWitness::Form7 { p, a } => {
                let r2 = BivarPoly::r2();
                let mut radial = BivarPoly::zero();
                for (j, c) in a.iter().enumerate() {
                    radial = &radial + &r2.pow(j as u32).scale(c);
                }
                p * &radial
            }
            FormWitness::Form8 { alpha, beta, a, .. } => {
                let mut sum = BivarPoly::zero();
                for (k, c) in a.iter().enumerate() {
                    sum = &sum + &beta.pow(k as u32).scale(c);
                }
                alpha * &sum
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessSerial {
    pub form: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    pub a: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormCheckResult {
    pub status: FormStatus,
    pub witness: Option<FormWitness>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormCheckSerial {
    pub matches: bool,
    pub status: FormStatus,
    pub witness: Option<WitnessSerial>,
    pub note: Option<String>,
}

impl FormCheckResult {
    pub fn matches(&self) -> bool {
        self.status == FormStatus::Match
    }

    fn no_match(note: impl Into<String>) -> Self {
        Self {
            status: FormStatus::NoMatch,
            witness: None,
            note: Some(note.into()),
        }
    }

    fn found(w: FormWitness) -> Self {
        Self {
            status: FormStatus::Match,
            witness: Some(w),
            note: None,
        }
    }

    pub fn to_serial(&self) -> FormCheckSerial {
        let fmt = |a: &[Rational]| a.iter().map(format_rational).collect();
        let witness = self.witness.as_ref().map(|w| match w {
            FormWitness::Form7 { p, a } => WitnessSerial {
                form: 7,
                l: None,
                p: Some(p.to_string()),
                alpha: None,
                beta: None,
                a: fmt(a),
            },
            FormWitness::Form8 { l, alpha, beta, a } => WitnessSerial {
                form: 8,
                l: Some(*l),
                p: None,
                alpha: Some(alpha.to_string()),
                beta: Some(beta.to_string()),
                a: fmt(a),
            },
        });
        FormCheckSerial {
            matches: self.matches(),
            status: self.status,
            witness,
            note: self.note.clone(),
        }
    }
}

fn check_input(h: &BivarPoly) -> Result<(), FormError> {
    if h.is_zero() {
        return Err(FormError::ZeroInput);
    }
    let c = h.constant_term();
    if !c.is_zero() {
        return Err(FormError::NonzeroConstant(format_rational(&c)));
    }
    Ok(())
}

pub fn check_form7(h: &BivarPoly) -> Result<FormCheckResult, FormError> {
    check_input(h)?;
    let comps = h.homogeneous_components();
    let (d0, p) = comps.components[0].clone();
    if d0 % 2 == 1 {
        return Ok(FormCheckResult::no_match(format!("lowest component has odd degree {d0}")));
    }
    let top = h.degree().expect("nonzero");
    let r2 = BivarPoly::r2();
    let mut a = vec![Rational::zero(); ((top - d0) / 2 + 1) as usize];
    a[0] = Rational::one();
    for (d, part) in &comps.components[1..] {
        if (d - d0) % 2 == 1 {
            return Ok(FormCheckResult::no_match(format!("component of degree {d} is off the even grid")));
        }
        let j = (d - d0) / 2;
        match part.scalar_ratio(&(&r2.pow(j) * &p)) {
            Some(c) => a[j as usize] = c,
            None => {
                return Ok(FormCheckResult::no_match(format!(
                    "degree-{d} component is not a multiple of (x^2 + y^2)^{j}·P"
                )))
            }
        }
    }
    let w = FormWitness::Form7 { p, a };
    debug_assert_eq!(&w.reconstruct(), h);
    Ok(FormCheckResult::found(w))
}

/// Homogeneous degree-`d` polynomial as a coefficient vector over `x^d, x^{d−1}y, …, y^d`.
fn homogeneous_vector(p: &BivarPoly, d: u32) -> Vec<Rational> {
    (0..=d).rev().map(|i| p.coeff(i, d - i)).collect()
}

fn homogeneous_from_vector(v: &[Rational], d: u32) -> BivarPoly {
    BivarPoly::from_terms(v.iter().enumerate().map(|(k, c)| (c.clone(), d - k as u32, k as u32)))
}

/// Solutions `β = β₀ + t κ` of `x β_y − y β_x = l α` among homogeneous degree-`l` polynomials.
fn solve_rotation(alpha: &BivarPoly, l: u32) -> Option<(BivarPoly, Option<BivarPoly>)> {
    let basis: Vec<BivarPoly> = (0..=l)
        .rev()
        .map(|i| BivarPoly::monomial(Rational::one(), i, l - i).rotational_derivative())
        .collect();
    let ncols = basis.len();
    let rows: Vec<Vec<Rational>> = (0..=l)
        .rev()
        .map(|i| basis.iter().map(|b| b.coeff(i, l - i)).collect())
        .collect();
    let rhs = homogeneous_vector(&alpha.scale(&rat_int(l as i64)), l);
    let (particular, kernel) = linalg::solve(&rows, &rhs, ncols)?;
    let beta0 = homogeneous_from_vector(&particular, l);
    let kappa = kernel.first().map(|v| homogeneous_from_vector(v, l));
    Some((beta0, kappa))
}

enum DivisorOutcome {
    Match(FormWitness),
    NoMatch(String),
    Inconclusive(String),
}

fn try_divisor(h: &BivarPoly, l: u32, n: u32) -> DivisorOutcome {
    let comps = h.homogeneous_components();
    if let Some(d) = comps.degrees().into_iter().find(|d| d % l != 0) {
        return DivisorOutcome::NoMatch(format!("l = {l}: component of degree {d} is off the grid"));
    }
    let alpha = h.homogeneous_part(l);
    if alpha.is_zero() {
        return DivisorOutcome::NoMatch(format!("l = {l}: H_{l} vanishes"));
    }
    let Some((beta0, kappa)) = solve_rotation(&alpha, l) else {
        return DivisorOutcome::NoMatch(format!("l = {l}: x β_y − y β_x = l α has no solution"));
    };
    let levels = n / l;
    let finish = |beta: BivarPoly| -> Option<FormWitness> {
        let mut a = vec![Rational::one()];
        for k in 1..levels {
            let target = h.homogeneous_part((k + 1) * l);
            a.push(target.scalar_ratio(&(&alpha * &beta.pow(k)))?);
        }
        let w = FormWitness::Form8 { l, alpha: alpha.clone(), beta, a };
        (&w.reconstruct() == h).then_some(w)
    };

    let Some(kappa) = kappa else {
        return match finish(beta0) {
            Some(w) => DivisorOutcome::Match(w),
            None => DivisorOutcome::NoMatch(format!("l = {l}: components are not multiples of α β^k")),
        };
    };

    // β = β₀ + t κ: each H_{(k+1)l} must be parallel to α (β₀ + t κ)^k
    let mut constraint = UPoly::zero();
    for k in 1..levels {
        let deg = (k + 1) * l;
        let target = h.homogeneous_part(deg);
        let Some((pivot, pivot_c)) = target.terms().next().map(|(m, c)| (m, c.clone())) else {
            continue;
        };
        let pieces: Vec<BivarPoly> = (0..=k)
            .map(|i| {
                let c = Rational::from_integer(binomial(k, i).into());
                (&(&alpha * &beta0.pow(k - i)) * &kappa.pow(i)).scale(&c)
            })
            .collect();
        let in_t = |m: Monomial| UPoly::new(pieces.iter().map(|p| p.coeff(m.x, m.y)).collect());
        let g_pivot = in_t(pivot);
        for i in (0..=deg).rev() {
            let m = Monomial::new(i, deg - i);
            let minor = &in_t(m).scale(&pivot_c) - &g_pivot.scale(&target.coeff(m.x, m.y));
            constraint = constraint.gcd(&minor);
        }
    }
    if constraint.is_zero() {
        return match finish(beta0) {
            Some(w) => DivisorOutcome::Match(w),
            None => DivisorOutcome::NoMatch(format!("l = {l}: no admissible β")),
        };
    }
    if constraint.degree() == Some(0) {
        return DivisorOutcome::NoMatch(format!("l = {l}: parallelism constraints have no common root"));
    }
    for t in constraint.rational_roots() {
        if let Some(w) = finish(&beta0 + &kappa.scale(&t)) {
            return DivisorOutcome::Match(w);
        }
    }
    if constraint.real_roots(1e-12).is_empty() {
        DivisorOutcome::NoMatch(format!("l = {l}: parallelism constraints have no real root"))
    } else {
        DivisorOutcome::Inconclusive(format!("l = {l}: β parameter has only irrational candidates"))
    }
}

pub fn check_form8(h: &BivarPoly) -> Result<FormCheckResult, FormError> {
    check_input(h)?;
    let n = h.degree().expect("nonzero");
    let mut notes = Vec::new();
    let mut inconclusive = false;
    for l in (1..=n).filter(|l| n.is_multiple_of(*l)) {
        match try_divisor(h, l, n) {
            DivisorOutcome::Match(w) => return Ok(FormCheckResult::found(w)),
            DivisorOutcome::NoMatch(s) => notes.push(s),
            DivisorOutcome::Inconclusive(s) => {
                inconclusive = true;
                notes.push(s);
            }
        }
    }
    Ok(FormCheckResult {
        status: if inconclusive { FormStatus::Inconclusive } else { FormStatus::NoMatch },
        witness: None,
        note: Some(notes.join("; ")),
    })
}

/// Form (7) or form (8) holds. Inconclusive form-(8) searches surface as an error
/// only when form (7) fails too.
pub fn predicts_polynomial_commuter(h: &BivarPoly) -> Result<bool, FormError> {
    if check_form7(h)?.matches() {
        return Ok(true);
    }
    match check_form8(h)?.status {
        FormStatus::Match => Ok(true),
        FormStatus::NoMatch => Ok(false),
        FormStatus::Inconclusive => Err(FormError::Inconclusive),
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::poly::props::arb_poly;
    use crate::poly::rat;
    use crate::system::build_eq2;
    use proptest::prelude::*;

    fn arb_field(max_deg: u32) -> impl Strategy<Value = PolyVectorField> {
        (arb_poly(max_deg), arb_poly(max_deg)).prop_map(|(p, s)| PolyVectorField::new(p, s))
    }

    fn arb_homogeneous(d: u32) -> impl Strategy<Value = BivarPoly> {
        prop::collection::vec((-4i64..=4, 1i64..=3), (d + 1) as usize)
            .prop_map(move |cs| {
                BivarPoly::from_terms(
                    cs.into_iter().enumerate().map(|(i, (n, den))| (rat(n, den), i as u32, d - i as u32)),
                )
            })
            .prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn bracket_is_antisymmetric_and_jacobi(a in arb_field(3), b in arb_field(3), c in arb_field(3)) {
            prop_assert_eq!(lie_bracket(&a, &b), lie_bracket(&b, &a).scale(&rat(-1, 1)));
            let jacobi = lie_bracket(&a, &lie_bracket(&b, &c))
                .add(&lie_bracket(&b, &lie_bracket(&c, &a)))
                .add(&lie_bracket(&c, &lie_bracket(&a, &b)));
            prop_assert!(jacobi.is_zero());
        }

        #[test]
        fn bracket_is_bilinear(a in arb_field(2), b in arb_field(2), c in arb_field(2), k in -5i64..=5) {
            let kc = c.scale(&rat_int(k));
            prop_assert_eq!(lie_bracket(&a.add(&b), &kc), lie_bracket(&a, &c).add(&lie_bracket(&b, &c)).scale(&rat_int(k)));
        }

        #[test]
        fn top_degrees_follow_the_determinant(h in arb_poly(3)) {
            prop_assume!(h.constant_term().is_zero() && !h.is_zero());
            let u = UniformSystem::new(h).unwrap();
            let d = u.h().degree().unwrap();
            let admissible = admissible_top_degrees(&u).unwrap();
            prop_assert_eq!(&admissible, &vec![1, d + 1]);
            let b = commutant_nullspace(&u.vector_field(), d + 1).unwrap();
            for f in &b.basis {
                let top = f.degree().unwrap();
                prop_assert!(admissible.contains(&top), "top degree {} not in {:?}", top, admissible);
            }
        }

        #[test]
        fn form7_witness_round_trips(p in arb_homogeneous(2), a1 in -3i64..=3, a2 in -3i64..=3) {
            let h = &p * &BivarPoly::from_int_terms(&[(1, 0, 0), (a1, 2, 0), (a1, 0, 2), (a2, 4, 0), (2 * a2, 2, 2), (a2, 0, 4)]);
            let r = check_form7(&h).unwrap();
            prop_assert!(r.matches());
            prop_assert_eq!(r.witness.unwrap().reconstruct(), h);
        }

        #[test]
        fn form8_witness_round_trips(beta in arb_homogeneous(2), a1 in -3i64..=3) {
            let alpha = beta.rotational_derivative().scale(&rat(1, 2));
            prop_assume!(!alpha.is_zero());
            let h = &alpha + &(&alpha * &beta).scale(&rat_int(a1));
            let r = check_form8(&h).unwrap();
            prop_assert!(r.matches());
            prop_assert_eq!(r.witness.unwrap().reconstruct(), h);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]

        #[test]
        fn form7_systems_have_extra_commuters(q in arb_homogeneous(2), a1 in -2i64..=2) {
            let t = crate::trig::TrigPoly::restrict_to_circle(&q, true).unwrap();
            let q = &q - &BivarPoly::r2().scale(t.c0());
            prop_assume!(!q.is_zero());
            let s = build_eq2(q, vec![rat_int(1), rat_int(a1)]).unwrap();
            let x = s.vector_field();
            let b = commutant_nullspace(&x, x.degree().unwrap()).unwrap();
            prop_assert!(b.dimension() >= 2);
            prop_assert!(b.contains_self);
        }
    }
}
