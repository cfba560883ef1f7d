//! Finite Fourier series with exact rational coefficients.
//!
//! A homogeneous polynomial restricted to the unit circle, `q(cos θ, sin θ)`,
//! is a trigonometric polynomial whose harmonics share the parity of the
//! degree. Everything angle-valued here is `f64`; coefficients stay exact.

use std::f64::consts::{PI, TAU};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{format_rational, parse_rational, rational_to_f64, BivarPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrigError {
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("trigonometric polynomial has nonzero mean {0}; its antiderivative is unbounded")]
    NonzeroMean(String),
    #[error("trigonometric polynomial is identically zero")]
    IdenticallyZero,
    #[error("trigonometric polynomial is a nonzero constant; every angle is an axis")]
    Constant,
    #[error("malformed trigonometric polynomial: {0}")]
    Malformed(String),
}

/// `c0 + Σ a_j cos jθ + b_j sin jθ`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    // index 0 holds (c0, 0); trailing all-zero harmonics are trimmed
    coeffs: Vec<(Rational, Rational)>,
    float: Vec<(f64, f64)>,
}

/// Direction in which a zero is crossed, read left to right in θ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Crossing {
    /// negative to positive
    Up,
    /// positive to negative
    Down,
    /// zero without sign change
    Touch,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigZero {
    pub theta: f64,
    pub crossing: Crossing,
}

/// Global maxima on one period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalMax {
    pub value: f64,
    /// Angles in `[0, 2π)`, ascending. Empty when `degenerate`.
    pub argmax: Vec<f64>,
    /// The function is constant; every angle is a maximum.
    pub degenerate: bool,
    /// More than one angle attains the maximum within the clustering tolerance.
    pub tied: bool,
}

pub const DEFAULT_ZERO_TOL: f64 = 1e-12;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-9;
pub const AXIS_TOL: f64 = 1e-12;

/// Maps an angle into `[0, period)`.
pub fn wrap_angle(theta: f64, period: f64) -> f64 {
    let w = theta.rem_euclid(period);
    if w >= period {
        0.0
    } else {
        w
    }
}

fn circular_distance(a: f64, b: f64, period: f64) -> f64 {
    let d = (a - b).rem_euclid(period);
    d.min(period - d)
}

impl TrigPoly {
    fn from_dense(mut coeffs: Vec<(Rational, Rational)>) -> Self {
        if coeffs.is_empty() {
            coeffs.push((Rational::zero(), Rational::zero()));
        }
        coeffs[0].1 = Rational::zero();
        while coeffs.len() > 1 {
            let (a, b) = coeffs.last().unwrap();
            if a.is_zero() && b.is_zero() {
                coeffs.pop();
            } else {
                break;
            }
        }
        let float = coeffs
            .iter()
            .map(|(a, b)| (rational_to_f64(a), rational_to_f64(b)))
            .collect();
        Self { coeffs, float }
    }

    /// Builds from `c0` and `(j, a_j, b_j)` triples; repeated `j` accumulate.
    pub fn new<I>(c0: Rational, harmonics: I) -> Self
    where
        I: IntoIterator<Item = (u32, Rational, Rational)>,
    {
        let mut dense = vec![(c0, Rational::zero())];
        for (j, a, b) in harmonics {
            let j = j as usize;
            if dense.len() <= j {
                dense.resize(j + 1, (Rational::zero(), Rational::zero()));
            }
            dense[j].0 += a;
            dense[j].1 += b;
        }
        Self::from_dense(dense)
    }

    pub fn zero() -> Self {
        Self::from_dense(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_dense(vec![(c, Rational::zero())])
    }

    pub fn cos(j: u32) -> Self {
        Self::new(Rational::zero(), [(j, Rational::one(), Rational::zero())])
    }

    pub fn sin(j: u32) -> Self {
        Self::new(Rational::zero(), [(j, Rational::zero(), Rational::one())])
    }

    pub fn c0(&self) -> &Rational {
        &self.coeffs[0].0
    }

    /// `(a_j, b_j)`; zero for absent harmonics. `j = 0` yields `(c0, 0)`.
    pub fn harmonic(&self, j: u32) -> (Rational, Rational) {
        self.coeffs
            .get(j as usize)
            .cloned()
            .unwrap_or_else(|| (Rational::zero(), Rational::zero()))
    }

    /// Nonzero harmonics `(j, a_j, b_j)` with `j ≥ 1`.
    pub fn harmonics(&self) -> impl Iterator<Item = (u32, &Rational, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, (a, b))| !(a.is_zero() && b.is_zero()))
            .map(|(j, (a, b))| (j as u32, a, b))
    }

    pub fn max_harmonic(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].0.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut acc = self.float[0].0;
        for (j, (a, b)) in self.float.iter().enumerate().skip(1) {
            let (s, c) = (j as f64 * theta).sin_cos();
            acc += a * c + b * s;
        }
        acc
    }

    /// Sum of absolute coefficient values; bounds `|t(θ)|`.
    pub fn magnitude(&self) -> f64 {
        self.float.iter().map(|(a, b)| a.abs() + b.abs()).sum()
    }

    pub fn derivative(&self) -> Self {
        let dense = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, (a, b))| {
                let jr = Rational::from_integer(BigInt::from(j));
                (b * &jr, -(a * &jr))
            })
            .collect();
        Self::from_dense(dense)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_dense(self.coeffs.iter().map(|(a, b)| (a * c, b * c)).collect())
    }

    pub fn add(&self, other: &TrigPoly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_dense(
            (0..n)
                .map(|j| {
                    let (a1, b1) = self.harmonic(j as u32);
                    let (a2, b2) = other.harmonic(j as u32);
                    (a1 + a2, b1 + b2)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &TrigPoly) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Product with re-expansion through the product-to-sum identities.
    pub fn mul(&self, other: &TrigPoly) -> Self {
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![(Rational::zero(), Rational::zero()); n];
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let mut put = |idx: i64, cos_part: Rational, sin_part: Rational| {
            let (k, s) = if idx < 0 { (-idx, -sin_part) } else { (idx, sin_part) };
            let slot = &mut out[k as usize];
            slot.0 += cos_part;
            if k > 0 {
                slot.1 += s;
            }
        };
        for (j, (a1, b1)) in self.coeffs.iter().enumerate() {
            for (k, (a2, b2)) in other.coeffs.iter().enumerate() {
                let (j, k) = (j as i64, k as i64);
                let aa = a1 * a2 * &half;
                let bb = b1 * b2 * &half;
                let ab = a1 * b2 * &half;
                let ba = b1 * a2 * &half;
                // cos j cos k, sin j sin k
                put(j - k, &aa + &bb, Rational::zero());
                put(j + k, &aa - &bb, Rational::zero());
                // cos j sin k, sin j cos k
                put(j + k, Rational::zero(), &ab + &ba);
                put(j - k, Rational::zero(), &ba - &ab);
            }
        }
        Self::from_dense(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    /// `q(cos θ, sin θ)`, exact.
    pub fn restrict_to_circle(q: &BivarPoly, homogeneous_required: bool) -> Result<Self, TrigError> {
        if homogeneous_required && !q.is_homogeneous() {
            return Err(TrigError::NonHomogeneous);
        }
        let mut cos_pows = vec![Self::constant(Rational::one())];
        let mut sin_pows = vec![Self::constant(Rational::one())];
        let mut out = Self::zero();
        for (m, c) in q.terms() {
            while cos_pows.len() <= m.x as usize {
                let next = cos_pows.last().unwrap().mul(&Self::cos(1));
                cos_pows.push(next);
            }
            while sin_pows.len() <= m.y as usize {
                let next = sin_pows.last().unwrap().mul(&Self::sin(1));
                sin_pows.push(next);
            }
            let term = cos_pows[m.x as usize].mul(&sin_pows[m.y as usize]).scale(c);
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Whether the mean over a period vanishes, exactly.
    pub fn mean_is_zero(&self) -> bool {
        self.c0().is_zero()
    }

    /// `F` with `F(0) = 0` and `F' = self`. Requires zero mean.
    pub fn antiderivative(&self) -> Result<Self, TrigError> {
        if !self.mean_is_zero() {
            return Err(TrigError::NonzeroMean(format_rational(self.c0())));
        }
        let mut dense: Vec<(Rational, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, (a, b))| {
                if j == 0 {
                    return (Rational::zero(), Rational::zero());
                }
                let jr = Rational::from_integer(BigInt::from(j));
                (-(b / &jr), a / &jr)
            })
            .collect();
        // F(0) = c + Σ a'_j = 0
        let c: Rational = dense.iter().skip(1).map(|(a, _)| a.clone()).sum();
        dense[0].0 = -c;
        Ok(Self::from_dense(dense))
    }

    /// All zeros in `[0, 2π)`, each located to within `tol`.
    pub fn zeros_on_period(&self, tol: f64) -> Result<Vec<TrigZero>, TrigError> {
        if self.is_zero() {
            return Err(TrigError::IdenticallyZero);
        }
        if self.is_constant() {
            return Ok(Vec::new());
        }
        let scale = self.magnitude();
        let n = (4 * self.max_harmonic() as usize * 16).max(64);
        let grid: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
        let vals: Vec<f64> = grid.iter().map(|&t| self.eval(t)).collect();
        let exact_zero = |v: f64| v.abs() <= 1e-15 * scale;
        let sign = |v: f64| if exact_zero(v) { 0 } else if v > 0.0 { 1 } else { -1 };

        let mut zeros: Vec<TrigZero> = Vec::new();
        for i in 0..n {
            let (a, b) = (vals[i], vals[(i + 1) % n]);
            if sign(a) == 0 {
                let before = sign(vals[(i + n - 1) % n]);
                let after = sign(b);
                let crossing = match (before, after) {
                    (-1, 1) => Crossing::Up,
                    (1, -1) => Crossing::Down,
                    _ => Crossing::Touch,
                };
                zeros.push(TrigZero { theta: grid[i], crossing });
            } else if sign(b) != 0 && sign(a) != sign(b) {
                let hi = if i + 1 == n { TAU } else { grid[i + 1] };
                let theta = bisect(|t| self.eval(t), grid[i], hi, a, tol);
                let crossing = if a < 0.0 { Crossing::Up } else { Crossing::Down };
                zeros.push(TrigZero { theta: wrap_angle(theta, TAU), crossing });
            }
        }

        // double zeros: extrema of the function where it (numerically) vanishes
        let deriv = self.derivative();
        let touch_tol = 1e-10 * scale;
        let dvals: Vec<f64> = grid.iter().map(|&t| deriv.eval(t)).collect();
        for i in 0..n {
            let (a, b) = (dvals[i], dvals[(i + 1) % n]);
            if a == 0.0 || a * b >= 0.0 {
                continue;
            }
            let hi = if i + 1 == n { TAU } else { grid[i + 1] };
            let theta = wrap_angle(bisect(|t| deriv.eval(t), grid[i], hi, a, tol), TAU);
            if self.eval(theta).abs() <= touch_tol
                && zeros.iter().all(|z| circular_distance(z.theta, theta, TAU) > 1e3 * tol)
            {
                zeros.push(TrigZero { theta, crossing: Crossing::Touch });
            }
        }

        zeros.sort_by(|a, b| a.theta.total_cmp(&b.theta));
        let mut deduped: Vec<TrigZero> = Vec::with_capacity(zeros.len());
        for z in zeros {
            if deduped
                .iter()
                .all(|d| circular_distance(d.theta, z.theta, TAU) > 10.0 * tol)
            {
                deduped.push(z);
            }
        }
        Ok(deduped)
    }

    /// Global maxima on `[0, 2π)`, located among the downward zero crossings
    /// of the derivative. Values within `cluster_tol` of the maximum are tied.
    pub fn global_maxima(&self, cluster_tol: f64) -> GlobalMax {
        if self.is_constant() {
            return GlobalMax {
                value: rational_to_f64(self.c0()),
                argmax: Vec::new(),
                degenerate: true,
                tied: false,
            };
        }
        let deriv = self.derivative();
        let candidates: Vec<(f64, f64)> = deriv
            .zeros_on_period(DEFAULT_ZERO_TOL)
            .expect("derivative of a non-constant trig polynomial is nonzero")
            .into_iter()
            .filter(|z| z.crossing == Crossing::Down)
            .map(|z| (z.theta, self.eval(z.theta)))
            .collect();
        let value = candidates
            .iter()
            .map(|(_, v)| *v)
            .fold(f64::NEG_INFINITY, f64::max);
        let argmax: Vec<f64> = candidates
            .iter()
            .filter(|(_, v)| value - v <= cluster_tol)
            .map(|(t, _)| *t)
            .collect();
        GlobalMax {
            value,
            tied: argmax.len() > 1,
            argmax,
            degenerate: false,
        }
    }

    /// Angles `θ*` in `[0, π)` with `t(2θ* − θ) = t(θ)` for all θ.
    ///
    /// Writing each harmonic as `A_j cos(jθ − φ_j)`, an axis must satisfy
    /// `j θ* ≡ φ_j (mod π)` for every nonzero harmonic.
    pub fn symmetry_axes(&self) -> Result<Vec<f64>, TrigError> {
        if self.is_zero() {
            return Err(TrigError::IdenticallyZero);
        }
        if self.is_constant() {
            return Err(TrigError::Constant);
        }
        let phases: Vec<(f64, f64)> = self
            .float
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, (a, b))| *a != 0.0 || *b != 0.0)
            .map(|(j, (a, b))| (j as f64, b.atan2(*a)))
            .collect();
        let (j0, phi0) = phases[0];
        let mut axes: Vec<f64> = (0..j0 as usize)
            .map(|n| wrap_angle((phi0 + n as f64 * PI) / j0, PI))
            .filter(|&theta| {
                phases.iter().all(|&(j, phi)| {
                    let residual = (j * theta - phi).rem_euclid(PI);
                    residual.min(PI - residual) <= AXIS_TOL * j.max(1.0)
                })
            })
            .collect();
        axes.sort_by(f64::total_cmp);
        Ok(axes)
    }

    /// Exact JSON-friendly form `{c0, [[j, a_j, b_j], ...]}`.
    pub fn to_serial(&self) -> TrigPolySerial {
        TrigPolySerial {
            c0: format_rational(self.c0()),
            harmonics: self
                .harmonics()
                .map(|(j, a, b)| (j, format_rational(a), format_rational(b)))
                .collect(),
        }
    }

    pub fn from_serial(s: &TrigPolySerial) -> Result<Self, TrigError> {
        let bad = |e: crate::poly::ParseError| TrigError::Malformed(e.to_string());
        let c0 = parse_rational(&s.c0).map_err(bad)?;
        let mut hs = Vec::with_capacity(s.harmonics.len());
        for (j, a, b) in &s.harmonics {
            if *j == 0 {
                return Err(TrigError::Malformed("harmonic index 0".into()));
            }
            hs.push((*j, parse_rational(a).map_err(bad)?, parse_rational(b).map_err(bad)?));
        }
        Ok(Self::new(c0, hs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrigPolySerial {
    pub c0: String,
    pub harmonics: Vec<(u32, String, String)>,
}

impl Serialize for TrigPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_serial().serialize(serializer)
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, flo: f64, tol: f64) -> f64 {
    let lo_negative = flo < 0.0;
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Whether `a1 cos θ + b1 sin θ + a3 cos 3θ + b3 sin 3θ` has a symmetry axis:
/// `a1 b3 (a1² − 3 b1²) = a3 b1 (3 a1² − b1²)`, which also covers the cases
/// where either harmonic vanishes.
pub fn degree3_axis_criterion(a1: &Rational, a3: &Rational, b1: &Rational, b3: &Rational) -> bool {
    if (a1.is_zero() && b1.is_zero()) || (a3.is_zero() && b3.is_zero()) {
        return true;
    }
    let three = Rational::from_integer(BigInt::from(3));
    let lhs = a1 * b3 * (a1 * a1 - &three * b1 * b1);
    let rhs = a3 * b1 * (&three * a1 * a1 - b1 * b1);
    lhs == rhs
}

/// Numerically projects `f` onto `cos jθ` / `sin jθ` with the trapezoid rule;
/// exact for trigonometric polynomials of degree below `n / 2`.
pub fn fourier_projection(f: impl Fn(f64) -> f64, max_harmonic: u32, n: usize) -> Vec<(f64, f64)> {
    let samples: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let t = TAU * i as f64 / n as f64;
            (t, f(t))
        })
        .collect();
    (0..=max_harmonic)
        .map(|j| {
            let j = j as f64;
            let (mut a, mut b) = (0.0, 0.0);
            for &(t, v) in &samples {
                a += v * (j * t).cos();
                b += v * (j * t).sin();
            }
            let w = if j == 0.0 { 1.0 } else { 2.0 } / n as f64;
            (a * w, b * w)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    fn q_cubic() -> BivarPoly {
        "y^3 - 3*x*y^2 + 2*x^2*y".parse().unwrap()
    }

    fn restrict(s: &str) -> TrigPoly {
        TrigPoly::restrict_to_circle(&s.parse().unwrap(), true).unwrap()
    }

    fn restrict_poly(s: &str) -> BivarPoly {
        s.parse().unwrap()
    }

    fn t_cubic() -> TrigPoly {
        TrigPoly::restrict_to_circle(&q_cubic(), true).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(restrict("y"), TrigPoly::sin(1));
        assert_eq!(restrict("x^2 + y^2"), TrigPoly::constant(rat_int(1)));
        let expected = TrigPoly::new(
            rat_int(0),
            [(1, rat(-3, 4), rat(5, 4)), (3, rat(3, 4), rat(1, 4))],
        );
        assert_eq!(t_cubic(), expected);
        let numeric = fourier_projection(|t| q_cubic().eval(t.cos(), t.sin()), 3, 64);
        for (j, (a, b)) in numeric.iter().enumerate() {
            let (ea, eb) = t_cubic().harmonic(j as u32);
            assert!(close(*a, rational_to_f64(&ea), 1e-12));
            assert!(close(*b, rational_to_f64(&eb), 1e-12));
        }
    }

    #[test]
    fn restrict_rejects_inhomogeneous() {
        let err = TrigPoly::restrict_to_circle(&"x + y^2".parse().unwrap(), true);
        assert_eq!(err, Err(TrigError::NonHomogeneous));
        assert!(TrigPoly::restrict_to_circle(&"x + y^2".parse().unwrap(), false).is_ok());
    }

    #[test]
    fn mean_examples() {
        assert!(t_cubic().mean_is_zero());
        let x2 = restrict("x^2");
        assert!(!x2.mean_is_zero());
        assert_eq!(x2.c0(), &rat(1, 2));
        assert!(restrict("x^2 - y^2").mean_is_zero());
    }

    #[test]
    fn antiderivative_examples() {
        let f = TrigPoly::sin(1).antiderivative().unwrap();
        assert_eq!(f, TrigPoly::constant(rat_int(1)).sub(&TrigPoly::cos(1)));
        for k in 1..=5 {
            let f = TrigPoly::sin(k).antiderivative().unwrap();
            let expected = TrigPoly::constant(rat_int(1))
                .sub(&TrigPoly::cos(k))
                .scale(&rat(1, k as i64));
            assert_eq!(f, expected);
        }
        let f_cubic = t_cubic().antiderivative().unwrap();
        let expected = TrigPoly::new(
            rat(4, 3),
            [(1, rat(-5, 4), rat(-3, 4)), (3, rat(-1, 12), rat(1, 4))],
        );
        assert_eq!(f_cubic, expected);
        assert!(close(f_cubic.eval(PI), 8.0 / 3.0, 1e-14));
        // closed form −cos θ − cos³θ/3 − sin³θ + 4/3
        for i in 0..50 {
            let t = 0.13 * i as f64;
            let closed = -t.cos() - t.cos().powi(3) / 3.0 - t.sin().powi(3) + 4.0 / 3.0;
            assert!(close(f_cubic.eval(t), closed, 1e-13));
        }
        assert!(matches!(
            restrict("x^2").antiderivative(),
            Err(TrigError::NonzeroMean(_))
        ));
    }

    #[test]
    fn zeros_of_sin() {
        let z = TrigPoly::sin(1).zeros_on_period(1e-12).unwrap();
        assert_eq!(z.len(), 2);
        assert!(close(z[0].theta, 0.0, 1e-12) && z[0].crossing == Crossing::Up);
        assert!(close(z[1].theta, PI, 1e-12) && z[1].crossing == Crossing::Down);
        let z3 = TrigPoly::sin(3).zeros_on_period(1e-12).unwrap();
        assert_eq!(z3.len(), 6);
        for (j, z) in z3.iter().enumerate() {
            assert!(close(z.theta, j as f64 * PI / 3.0, 1e-11));
        }
    }

    #[test]
    fn zeros_of_factored_cubic() {
        let factored = &(&restrict_poly("y") * &restrict_poly("x - y")) * &restrict_poly("2*x - y");
        assert_eq!(factored, q_cubic());
        let z = t_cubic().zeros_on_period(1e-12).unwrap();
        let at2 = 2f64.atan();
        let expected = [0.0, PI / 4.0, at2, PI, 5.0 * PI / 4.0, at2 + PI];
        assert_eq!(z.len(), 6);
        for (zero, e) in z.iter().zip(expected) {
            assert!(close(zero.theta, e, 1e-11), "{} vs {}", zero.theta, e);
        }
        let down: Vec<f64> = z
            .iter()
            .filter(|z| z.crossing == Crossing::Down)
            .map(|z| z.theta)
            .collect();
        assert_eq!(down.len(), 3);
        for (d, e) in down.iter().zip([PI / 4.0, PI, at2 + PI]) {
            assert!(close(*d, e, 1e-11));
        }
    }

    #[test]
    fn touch_zero_detected() {
        // 1 - cos θ touches zero at θ = 0
        let t = TrigPoly::constant(rat_int(1)).sub(&TrigPoly::cos(1));
        let z = t.zeros_on_period(1e-12).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].crossing, Crossing::Touch);
        assert!(close(z[0].theta, 0.0, 1e-9));
        // (sin θ − 1/2)^2 away from the grid
        let s = TrigPoly::sin(1).sub(&TrigPoly::constant(rat(1, 2)));
        let z = s.mul(&s).zeros_on_period(1e-12).unwrap();
        assert_eq!(z.len(), 2);
        assert!(z.iter().all(|z| z.crossing == Crossing::Touch));
        assert!(close(z[0].theta, PI / 6.0, 1e-9) && close(z[1].theta, 5.0 * PI / 6.0, 1e-9));
        assert_eq!(TrigPoly::zero().zeros_on_period(1e-12), Err(TrigError::IdenticallyZero));
    }

    #[test]
    fn maxima_examples() {
        let f = TrigPoly::sin(3).antiderivative().unwrap().scale(&rat_int(3));
        let m = f.global_maxima(1e-9);
        assert!(close(m.value, 2.0, 1e-12));
        assert_eq!(m.argmax.len(), 3);
        for (t, e) in m.argmax.iter().zip([PI / 3.0, PI, 5.0 * PI / 3.0]) {
            assert!(close(*t, e, 1e-11));
        }
        assert!(m.tied);

        let f_cubic = t_cubic().antiderivative().unwrap();
        let m = f_cubic.global_maxima(1e-9);
        assert!(close(m.value, 8.0 / 3.0, 1e-12));
        assert_eq!(m.argmax.len(), 1);
        assert!(close(m.argmax[0], PI, 1e-11));
        // competing local maxima
        assert!(close(f_cubic.eval(PI / 4.0), 0.1548, 1e-4));
        assert!(close(f_cubic.eval(2f64.atan() + PI), 2.5259, 1e-4));

        let c = TrigPoly::constant(rat(3, 2)).global_maxima(1e-9);
        assert!(c.degenerate && c.argmax.is_empty() && c.value == 1.5);
    }

    #[test]
    fn symmetry_axes_examples() {
        let ax = TrigPoly::sin(1).symmetry_axes().unwrap();
        assert_eq!(ax.len(), 1);
        assert!(close(ax[0], PI / 2.0, 1e-12));
        assert!(t_cubic().symmetry_axes().unwrap().is_empty());
        let ax = TrigPoly::cos(2).symmetry_axes().unwrap();
        assert_eq!(ax.len(), 2);
        assert!(close(ax[0], 0.0, 1e-12) && close(ax[1], PI / 2.0, 1e-12));
        assert_eq!(TrigPoly::zero().symmetry_axes(), Err(TrigError::IdenticallyZero));
    }

    #[test]
    fn degree3_criterion_examples() {
        let z = rat_int(0);
        let one = rat_int(1);
        assert!(degree3_axis_criterion(&z, &z, &one, &z));
        assert!(!degree3_axis_criterion(&rat(-3, 4), &rat(3, 4), &rat(5, 4), &rat(1, 4)));
        assert!(degree3_axis_criterion(&one, &one, &z, &z));
        // the two sides for the cubic above
        let (a1, a3, b1, b3) = (rat(-3, 4), rat(3, 4), rat(5, 4), rat(1, 4));
        let three = rat_int(3);
        assert_eq!(&a1 * &b3 * (&a1 * &a1 - &three * &b1 * &b1), rat(99, 128));
        assert_eq!(&a3 * &b1 * (&three * &a1 * &a1 - &b1 * &b1), rat(15, 128));
    }

    #[test]
    fn serial_round_trip() {
        let s = t_cubic().to_serial();
        assert_eq!(s.c0, "0");
        assert_eq!(s.harmonics[0], (1, "-3/4".to_string(), "5/4".to_string()));
        assert_eq!(TrigPoly::from_serial(&s).unwrap(), t_cubic());
        let json = serde_json::to_string(&t_cubic()).unwrap();
        assert_eq!(json, r#"{"c0":"0","harmonics":[[1,"-3/4","5/4"],[3,"3/4","1/4"]]}"#);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::poly::rat;
    use proptest::prelude::*;

    fn arb_homogeneous(max_deg: u32) -> impl Strategy<Value = (u32, BivarPoly)> {
        (1..=max_deg).prop_flat_map(|d| {
            prop::collection::vec((-9i64..=9, 1i64..=4), (d + 1) as usize).prop_map(move |cs| {
                let p = BivarPoly::from_terms(
                    cs.into_iter()
                        .enumerate()
                        .map(|(i, (n, den))| (rat(n, den), i as u32, d - i as u32)),
                );
                (d, p)
            })
        })
        .prop_filter("zero is not homogeneous", |(_, p)| !p.is_zero())
    }

    fn arb_trig(max_h: u32) -> impl Strategy<Value = TrigPoly> {
        prop::collection::vec((-6i64..=6, -6i64..=6), (max_h + 1) as usize).prop_map(|cs| {
            let c0 = rat(cs[0].0, 1);
            TrigPoly::new(
                c0,
                cs.into_iter()
                    .enumerate()
                    .skip(1)
                    .map(|(j, (a, b))| (j as u32, rat(a, 2), rat(b, 3))),
            )
        })
    }

    proptest! {
        #[test]
        fn restriction_is_multiplicative((_, p) in arb_homogeneous(4), (_, q) in arb_homogeneous(4)) {
            let lhs = TrigPoly::restrict_to_circle(&(&p * &q), true).unwrap();
            let rp = TrigPoly::restrict_to_circle(&p, true).unwrap();
            let rq = TrigPoly::restrict_to_circle(&q, true).unwrap();
            prop_assert_eq!(lhs, rp.mul(&rq));
            let sum = TrigPoly::restrict_to_circle(&(&p + &p), false).unwrap();
            prop_assert_eq!(sum, rp.add(&rp));
        }

        #[test]
        fn harmonic_parity_and_mean((d, p) in arb_homogeneous(7)) {
            prop_assume!(!p.is_zero());
            let t = TrigPoly::restrict_to_circle(&p, true).unwrap();
            prop_assert!(t.max_harmonic() <= d);
            for (j, _, _) in t.harmonics() {
                prop_assert_eq!(j % 2, d % 2);
            }
            if d % 2 == 1 {
                prop_assert!(t.mean_is_zero());
            }
            // numeric agreement with the quadrature projection
            let proj = fourier_projection(|th| p.eval(th.cos(), th.sin()), d, 64);
            for (j, (a, b)) in proj.iter().enumerate() {
                let (ea, eb) = t.harmonic(j as u32);
                prop_assert!((a - rational_to_f64(&ea)).abs() < 1e-9);
                prop_assert!((b - rational_to_f64(&eb)).abs() < 1e-9);
            }
        }

        #[test]
        fn antiderivative_inverts_derivative(t in arb_trig(5)) {
            let t0 = t.sub(&TrigPoly::constant(t.c0().clone()));
            let f = t0.antiderivative().unwrap();
            prop_assert_eq!(f.derivative(), t0);
            prop_assert!(f.eval(0.0).abs() < 1e-12);
        }

        #[test]
        fn zero_count_bounded(t in arb_trig(5)) {
            prop_assume!(!t.is_zero());
            let zeros = t.zeros_on_period(1e-12).unwrap();
            prop_assert!(zeros.len() <= 2 * t.max_harmonic() as usize);
            for z in &zeros {
                prop_assert!(t.eval(z.theta).abs() <= 1e-9 * t.magnitude());
            }
        }

        #[test]
        fn axes_are_symmetries(t in arb_trig(3), theta in 0.0f64..6.0) {
            prop_assume!(!t.is_constant());
            for axis in t.symmetry_axes().unwrap() {
                let d = t.eval(2.0 * axis - theta) - t.eval(theta);
                prop_assert!(d.abs() < 1e-9);
            }
        }
    }
}
