//! Sparse bivariate polynomials with exact rational coefficients.
//!
//! Terms are keyed by [`Monomial`] and kept in graded-lex order (ascending
//! total degree, then descending power of `x`), which is also the order used
//! by the canonical text form `c*x^i*y^j + ...`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number backed by arbitrary-precision integers.
pub type Rational = BigRational;

/// Builds `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `num` or `num/den`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `num`, `num/den` (optionally signed, surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Rational(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator and denominator both overflow f64; scale down first
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid rational literal `{0}`")]
    Rational(String),
    #[error("invalid polynomial term `{0}`")]
    Term(String),
    #[error("empty polynomial expression")]
    Empty,
}

/// Exponent pair `x^x * y^y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }

    pub const fn degree(self) -> u32 {
        self.x + self.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.x.cmp(&self.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `x`, `y` over the rationals. No zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// `x^2 + y^2`
    pub fn r2() -> Self {
        Self::from_terms([(rat_int(1), 2, 0), (rat_int(1), 0, 2)])
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(i, j), c);
        p
    }

    /// Sums the given `(coefficient, i, j)` triples; repeated exponents accumulate.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, u32, u32)>,
    {
        let mut p = Self::zero();
        for (c, i, j) in terms {
            p.add_term(Monomial::new(i, j), c);
        }
        p
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_int_terms(terms: &[(i64, u32, u32)]) -> Self {
        Self::from_terms(terms.iter().map(|&(c, i, j)| (rat_int(c), i, j)))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Lowest total degree among stored terms.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Degree if every term shares one total degree. The zero polynomial is
    /// not considered homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match (self.low_degree(), self.degree()) {
            (Some(lo), Some(hi)) if lo == hi => Some(hi),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact partial derivatives `(p_x, p_y)`.
    pub fn partials(&self) -> (Self, Self) {
        let mut px = Self::zero();
        let mut py = Self::zero();
        for (m, c) in &self.terms {
            if m.x > 0 {
                px.add_term(Monomial::new(m.x - 1, m.y), c * rat_int(m.x as i64));
            }
            if m.y > 0 {
                py.add_term(Monomial::new(m.x, m.y - 1), c * rat_int(m.y as i64));
            }
        }
        (px, py)
    }

    /// Derivative along the rotation field: `x * p_y - y * p_x`.
    pub fn rotational_derivative(&self) -> Self {
        let (px, py) = self.partials();
        &(&Self::x() * &py) - &(&Self::y() * &px)
    }

    /// Part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_components(&self) -> HomoDecomposition {
        let mut components: Vec<(u32, BivarPoly)> = Vec::new();
        for (m, c) in &self.terms {
            let d = m.degree();
            match components.last_mut() {
                Some((deg, part)) if *deg == d => {
                    part.terms.insert(*m, c.clone());
                }
                _ => components.push((d, Self::monomial(c.clone(), m.x, m.y))),
            }
        }
        HomoDecomposition { components }
    }

    /// Substitutes `x := u`, `y := v`.
    pub fn compose(&self, u: &BivarPoly, v: &BivarPoly) -> Self {
        let mut out = Self::zero();
        let mut upow: Vec<BivarPoly> = vec![Self::one()];
        let mut vpow: Vec<BivarPoly> = vec![Self::one()];
        for (m, c) in &self.terms {
            while upow.len() <= m.x as usize {
                let next = upow.last().unwrap() * u;
                upow.push(next);
            }
            while vpow.len() <= m.y as usize {
                let next = vpow.last().unwrap() * v;
                vpow.push(next);
            }
            out = &out + &(&upow[m.x as usize] * &vpow[m.y as usize]).scale(c);
        }
        out
    }

    /// Floating-point evaluation, nested Horner in `x` then `y`.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let Some(deg) = self.degree() else {
            return 0.0;
        };
        // rows[j] holds coefficients of x^i for fixed y^j
        let mut rows: Vec<Vec<f64>> = vec![Vec::new(); deg as usize + 1];
        for (m, c) in &self.terms {
            let row = &mut rows[m.y as usize];
            if row.len() <= m.x as usize {
                row.resize(m.x as usize + 1, 0.0);
            }
            row[m.x as usize] = rational_to_f64(c);
        }
        rows.iter().rev().fold(0.0, |acc, row| {
            let inner = row.iter().rev().fold(0.0, |a, c| a * x + c);
            acc * y + inner
        })
    }

    pub fn eval_exact(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * num_traits::pow(x.clone(), m.x as usize) * num_traits::pow(y.clone(), m.y as usize);
        }
        acc
    }

    /// Exact division by a nonzero polynomial when the quotient is a single
    /// rational multiple: returns `c` with `self == c * other`.
    pub fn scalar_ratio(&self, other: &BivarPoly) -> Option<Rational> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let (m, c) = other.terms.iter().next().unwrap();
        let ratio = self.coeff(m.x, m.y) / c;
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    /// Largest absolute coefficient as `f64`, used for scale-aware tolerances.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| rational_to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }
}

/// Homogeneous parts of a polynomial in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomoDecomposition {
    pub components: Vec<(u32, BivarPoly)>,
}

impl HomoDecomposition {
    pub fn degrees(&self) -> Vec<u32> {
        self.components.iter().map(|(d, _)| *d).collect()
    }

    pub fn get(&self, d: u32) -> Option<&BivarPoly> {
        self.components.iter().find(|(deg, _)| *deg == d).map(|(_, p)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn reconstruct(&self) -> BivarPoly {
        self.components
            .iter()
            .fold(BivarPoly::zero(), |acc, (_, p)| &acc + p)
    }
}

impl<'a> Add<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;

    fn add(self, rhs: &'a BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;

    fn sub(self, rhs: &'a BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: &'a BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(Monomial::new(ma.x + mb.x, ma.y + mb.y), ca * cb);
            }
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;

    fn neg(self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<BivarPoly> for BivarPoly {
            type Output = BivarPoly;
            fn $method(self, rhs: BivarPoly) -> BivarPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (m.x == 0 && m.y == 0) {
                factors.push(format_rational(&mag));
            }
            for (v, e) in [("x", m.x), ("y", m.y)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for BivarPoly {
    type Err = ParseError;

    /// Accepts the canonical form and looser hand-written variants such as
    /// `y^3 - 3*x*y^2 + 2*x^2*y` or `1/2*x - y`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseError::Empty);
        }
        // split into signed terms; '+'/'-' right after '^' or '*' or '/' belong to a literal
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            let sign_is_operator = matches!(ch, '+' | '-')
                && !matches!(prev, None | Some('^') | Some('*') | Some('/') | Some('+') | Some('-'));
            if sign_is_operator {
                pieces.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if matches!(ch, '+' | '-') && current.is_empty() {
                if ch == '-' {
                    negative = !negative;
                }
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        pieces.push((negative, current));

        let mut poly = BivarPoly::zero();
        for (neg, term) in pieces {
            if term.is_empty() {
                return Err(ParseError::Term(s.to_string()));
            }
            let mut coeff = Rational::one();
            let (mut i, mut j) = (0u32, 0u32);
            for factor in term.split('*') {
                let bad = || ParseError::Term(term.clone());
                if let Some(rest) = factor.strip_prefix('x') {
                    i += parse_exponent(rest).ok_or_else(bad)?;
                } else if let Some(rest) = factor.strip_prefix('y') {
                    j += parse_exponent(rest).ok_or_else(bad)?;
                } else {
                    coeff *= parse_rational(factor).map_err(|_| bad())?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            poly.add_term(Monomial::new(i, j), coeff);
        }
        Ok(poly)
    }
}

fn parse_exponent(rest: &str) -> Option<u32> {
    if rest.is_empty() {
        Some(1)
    } else {
        rest.strip_prefix('^')?.parse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BivarPoly {
        s.parse().unwrap()
    }

    fn h_cubic() -> BivarPoly {
        &p("y^3 - 3*x*y^2 + 2*x^2*y") * &p("1 + x^2 + y^2")
    }

    #[test]
    fn arith_examples() {
        assert_eq!(&p("x + y") + &p("x - y"), p("2*x"));
        assert!((&p("x + y") * &BivarPoly::zero()).is_zero());
        let prod = &(&p("y") * &p("x - y")) * &p("2*x - y");
        assert_eq!(prod, p("2*x^2*y - 3*x*y^2 + y^3"));
    }

    #[test]
    fn partials_examples() {
        let (px, py) = p("x^2*y").partials();
        assert_eq!(px, p("2*x*y"));
        assert_eq!(py, p("x^2"));
        let (cx, cy) = p("7/3").partials();
        assert!(cx.is_zero() && cy.is_zero());

        let h5 = h_cubic().homogeneous_part(5);
        let (hx, hy) = h5.partials();
        let euler = &(&BivarPoly::x() * &hx) + &(&BivarPoly::y() * &hy);
        assert_eq!(euler, h5.scale(&rat_int(5)));
    }

    #[test]
    fn rotational_derivative_examples() {
        assert_eq!(p("x").rotational_derivative(), p("-y"));
        assert!(p("x^2 + y^2").rotational_derivative().is_zero());
        assert_eq!(p("x*y").rotational_derivative(), p("x^2 - y^2"));
    }

    #[test]
    fn homogeneous_components_examples() {
        assert_eq!(h_cubic().homogeneous_components().degrees(), vec![3, 5]);
        let d = p("x + x^2").homogeneous_components();
        assert_eq!(d.components, vec![(1, p("x")), (2, p("x^2"))]);
        assert!(BivarPoly::zero().homogeneous_components().is_empty());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("x^2 + y^2").eval(3.0, 4.0), 25.0);
        assert_eq!(h_cubic().eval(0.0, 0.0), 0.0);
        assert_eq!(h_cubic().eval(1.0, 1.0), 0.0);
        assert_eq!(h_cubic().eval_exact(&rat_int(1), &rat_int(1)), Rational::zero());
        assert_eq!(p("1/2*x*y + 3").eval_exact(&rat(2, 3), &rat(3, 1)), rat_int(4));
    }

    #[test]
    fn canonical_text_is_graded_lex() {
        let q = p("y^3 - 3*x*y^2 + 2*x^2*y + x");
        assert_eq!(q.to_string(), "x + 2*x^2*y - 3*x*y^2 + y^3");
        assert_eq!(p(&q.to_string()), q);
        assert_eq!(p("-1/2*x^2 + -y").to_string(), "-y - 1/2*x^2");
        assert_eq!(BivarPoly::zero().to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("x^".parse::<BivarPoly>().is_err());
        assert!("".parse::<BivarPoly>().is_err());
        assert!("1/0*x".parse::<BivarPoly>().is_err());
        assert!("z".parse::<BivarPoly>().is_err());
        assert!("x +".parse::<BivarPoly>().is_err());
    }

    #[test]
    fn compose_substitutes() {
        let h = p("x").compose(&BivarPoly::r2(), &p("x*y"));
        assert_eq!(h, BivarPoly::r2());
        let h = p("x*y^2").compose(&p("x + 1"), &p("y"));
        assert_eq!(h, p("x*y^2 + y^2"));
    }
}

#[cfg(test)]
pub(crate) mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
    }

    pub(crate) fn arb_poly(max_deg: u32) -> impl Strategy<Value = BivarPoly> {
        prop::collection::vec((arb_rational(), 0..=max_deg, 0..=max_deg), 0..6).prop_map(
            move |ts| {
                BivarPoly::from_terms(
                    ts.into_iter()
                        .map(|(c, i, j)| (c, i.min(max_deg), j.min(max_deg - i.min(max_deg)))),
                )
            },
        )
    }

    fn arb_homogeneous(max_deg: u32) -> impl Strategy<Value = (u32, BivarPoly)> {
        (0..=max_deg).prop_flat_map(|d| {
            prop::collection::vec(arb_rational(), (d + 1) as usize).prop_map(move |cs| {
                let poly = BivarPoly::from_terms(
                    cs.into_iter().enumerate().map(|(i, c)| (c, i as u32, d - i as u32)),
                );
                (d, poly)
            })
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(4), b in arb_poly(4), c in arb_poly(4)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn euler_identity((d, h) in arb_homogeneous(8)) {
            let (hx, hy) = h.partials();
            let lhs = &(&BivarPoly::x() * &hx) + &(&BivarPoly::y() * &hy);
            prop_assert_eq!(lhs, h.scale(&rat_int(d as i64)));
        }

        #[test]
        fn rotation_commutes_with_r2(a in arb_poly(4), j in 0u32..4) {
            let r2j = BivarPoly::r2().pow(j);
            prop_assert_eq!(
                (&r2j * &a).rotational_derivative(),
                &r2j * &a.rotational_derivative()
            );
        }

        #[test]
        fn components_round_trip(a in arb_poly(6)) {
            let dec = a.homogeneous_components();
            for (d, part) in &dec.components {
                prop_assert_eq!(part.homogeneous_degree(), Some(*d));
            }
            prop_assert_eq!(dec.reconstruct(), a);
        }

        #[test]
        fn text_form_round_trips(a in arb_poly(5)) {
            prop_assert_eq!(a.to_string().parse::<BivarPoly>().unwrap(), a);
        }

        #[test]
        fn float_eval_matches_exact(a in arb_poly(5), xn in -8i64..8, yn in -8i64..8) {
            let (x, y) = (rat(xn, 4), rat(yn, 4));
            let exact = rational_to_f64(&a.eval_exact(&x, &y));
            let float = a.eval(rational_to_f64(&x), rational_to_f64(&y));
            prop_assert!((exact - float).abs() <= 1e-9 * (1.0 + exact.abs()));
        }
    }
}
