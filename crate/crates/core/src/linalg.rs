//! Exact linear algebra over the rationals.
//!
//! Rows are cleared to primitive integer vectors and reduced with Bareiss'
//! fraction-free elimination; only back substitution touches rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::Rational;

/// Row echelon form over the integers plus the pivot column of each row.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let lcm = Rational::from_integer(lcm);
    row.iter().map(|c| (c * &lcm).to_integer()).collect()
}

/// Fraction-free forward elimination. Zero rows are dropped.
pub fn echelon(rows: &[Vec<Rational>], ncols: usize) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), ncols);
            integer_row(r)
        })
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .collect();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon {
        rows: a,
        pivots,
        ncols,
    }
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    echelon(rows, ncols).rank()
}

/// Basis of `{v : A v = 0}`; one vector per free column, with that entry set to 1.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = echelon(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            back_substitute(&ech, &mut v, None);
            v
        })
        .collect()
}

/// Fills pivot entries of `v` so that the echelon system (with optional
/// right-hand side column) is satisfied, given the free entries already set.
fn back_substitute(ech: &Echelon, v: &mut [Rational], rhs: Option<&[BigInt]>) {
    for (r, &pc) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[r];
        let mut acc = match rhs {
            Some(b) => Rational::from_integer(b[r].clone()),
            None => Rational::zero(),
        };
        for j in pc + 1..ech.ncols {
            if !row[j].is_zero() && !v[j].is_zero() {
                acc -= Rational::from_integer(row[j].clone()) * &v[j];
            }
        }
        v[pc] = acc / Rational::from_integer(row[pc].clone());
    }
}

/// Solution set of `A v = b`: a particular solution (free entries zero) and
/// a kernel basis, or `None` when inconsistent.
pub fn solve(
    rows: &[Vec<Rational>],
    rhs: &[Rational],
    ncols: usize,
) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let ech = echelon(&augmented, ncols + 1);
    if ech.pivots.last() == Some(&ncols) {
        return None;
    }
    let reduced = Echelon {
        rows: ech.rows.iter().map(|r| r[..ncols].to_vec()).collect(),
        pivots: ech.pivots.clone(),
        ncols,
    };
    let b: Vec<BigInt> = ech.rows.iter().map(|r| r[ncols].clone()).collect();
    let mut particular = vec![Rational::zero(); ncols];
    back_substitute(&reduced, &mut particular, Some(&b));
    Some((particular, nullspace(rows, ncols)))
}
