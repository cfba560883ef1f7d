//! Univariate polynomials over the rationals with Sturm-sequence root isolation.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{rational_to_f64, Rational};

/// Dense coefficients, constant term first; trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + rational_to_f64(c))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dlead = divisor.leading().expect("division by zero polynomial").clone();
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(ddeg).max(1)];
        while rem.len() > ddeg && !rem.is_empty() {
            let shift = rem.len() - 1 - ddeg;
            let factor = rem.last().unwrap() / &dlead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &factor * c;
            }
            quot[shift] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&(Rational::one() / l)),
            None => Self::zero(),
        }
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn square_free(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Primitive integer polynomial proportional to `self`.
    pub fn to_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &content).collect()
    }

    /// Cauchy bound: every real root has absolute value below it.
    pub fn root_bound(&self) -> Rational {
        let Some(lead) = self.leading() else {
            return Rational::one();
        };
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + Rational::one()
    }

    fn sturm_chain(&self) -> Vec<UPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-&r);
        }
        chain
    }

    /// Isolating intervals `(lo, hi]` for the distinct real roots inside `(lo, hi]`.
    pub fn isolate_roots(&self, lo: &Rational, hi: &Rational) -> Vec<RootInterval> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sturm = Sturm::new(self);
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            match sturm.count(&a, &b) {
                0 => {}
                1 => out.push(RootInterval { lo: a, hi: b }),
                _ => {
                    let mid = (&a + &b) / Rational::from_integer(BigInt::from(2));
                    stack.push((mid.clone(), b));
                    stack.push((a, mid));
                }
            }
        }
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        out
    }

    /// All distinct real roots, refined to width `tol`.
    pub fn real_roots(&self, tol: f64) -> Vec<f64> {
        let b = self.root_bound();
        let sturm = Sturm::new(self);
        self.isolate_roots(&-b.clone(), &b)
            .into_iter()
            .map(|iv| iv.refine(&sturm, tol))
            .collect()
    }

    /// Distinct strictly positive real roots, refined to width `tol`.
    pub fn positive_roots(&self, tol: f64) -> Vec<f64> {
        let b = self.root_bound();
        let sturm = Sturm::new(self);
        self.isolate_roots(&Rational::zero(), &b)
            .into_iter()
            .map(|iv| iv.refine(&sturm, tol))
            .collect()
    }

    /// Exact rational roots, found by isolating each real root finely enough
    /// that `lead * root` is pinned to one integer.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sf = self.square_free();
        let ints = sf.to_integer();
        let lead = Rational::from_integer(ints.last().unwrap().abs());
        let target = Rational::new(BigInt::one(), BigInt::from(4)) / &lead;
        let sturm = Sturm::new(&sf);
        let bound = sf.root_bound();
        let mut roots = Vec::new();
        for mut iv in sf.isolate_roots(&-bound.clone(), &bound) {
            while &iv.hi - &iv.lo > target {
                iv.bisect(&sturm);
            }
            let lo = (&iv.lo * &lead).floor().to_integer();
            let hi = (&iv.hi * &lead).ceil().to_integer();
            let mut c = lo;
            while c <= hi {
                let r = Rational::new(c.clone(), lead.to_integer());
                if r > iv.lo && r <= iv.hi && sf.eval(&r).is_zero() {
                    roots.push(r);
                }
                c += 1;
            }
        }
        roots
    }
}

/// Cached Sturm chain for repeated root counting.
pub struct Sturm {
    chain: Vec<UPoly>,
}

impl Sturm {
    pub fn new(p: &UPoly) -> Self {
        Self { chain: p.sturm_chain() }
    }

    fn variations(&self, t: &Rational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(t);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if last.is_some_and(|l| l != pos) {
                count += 1;
            }
            last = Some(pos);
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Half-open interval `(lo, hi]` holding exactly one root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    fn bisect(&mut self, sturm: &Sturm) {
        let mid = (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2));
        if sturm.count(&self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine(mut self, sturm: &Sturm, tol: f64) -> f64 {
        while rational_to_f64(&(&self.hi - &self.lo)) > tol {
            self.bisect(sturm);
        }
        rational_to_f64(&((&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        UPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    fn up(cs: &[i64]) -> UPoly {
        UPoly::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (t-1)(t-2) = t^2 - 3t + 2
        let p = up(&[2, -3, 1]);
        let (q, r) = p.div_rem(&up(&[-1, 1]));
        assert_eq!(q, up(&[-2, 1]));
        assert!(r.is_zero());
        let g = p.gcd(&up(&[-3, 1]).mul(&up(&[-1, 1])));
        assert_eq!(g, up(&[-1, 1]));
    }

    #[test]
    fn square_free_drops_multiplicity() {
        // (t-1)^2 (t+2)
        let p = &(&up(&[-1, 1]) * &up(&[-1, 1])) * &up(&[2, 1]);
        assert_eq!(p.square_free(), &up(&[-1, 1]) * &up(&[2, 1]));
        let roots = p.real_roots(1e-14);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] + 2.0).abs() < 1e-13 && (roots[1] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn positive_roots_of_even_radial() {
        // u^2 - 5u + 4 -> u in {1, 4}
        let roots = up(&[4, -5, 1]).positive_roots(1e-14);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 1.0).abs() < 1e-13);
        assert!((roots[1] - 4.0).abs() < 1e-13);
        assert!(up(&[1, 0, 1]).positive_roots(1e-12).is_empty());
    }

    #[test]
    fn rational_roots_found_exactly() {
        // (3t - 2)(t^2 - 2)(5t + 7)
        let p = &(&up(&[-2, 3]) * &up(&[-2, 0, 1])) * &up(&[7, 5]);
        let roots = p.rational_roots();
        assert_eq!(roots, vec![rat(-7, 5), rat(2, 3)]);
        assert!(up(&[-2, 0, 1]).rational_roots().is_empty());
        assert_eq!(up(&[0, 1]).rational_roots(), vec![rat_int(0)]);
    }

    #[test]
    fn isolation_handles_root_at_split_point() {
        // roots -1, 0, 1 ; midpoint of the symmetric bound is exactly 0
        let p = up(&[0, -1, 0, 1]);
        let roots = p.real_roots(1e-15);
        assert_eq!(roots.len(), 3);
        assert!(roots[1].abs() < 1e-14);
    }
}
