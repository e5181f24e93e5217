//! Exact rational scalars.
//!
//! Everything in this crate computes over arbitrary-precision rationals;
//! there is no floating point anywhere in the library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse "p/q" or "p" into an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// Render a rational as "p" or "p/q".
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact factorial.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Solve the square linear system `m x = rhs` by Gaussian elimination.
/// Returns `None` when the matrix is singular.
pub fn solve_linear(m: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n) && rhs.len() == n);
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut v = row.clone();
            v.push(b.clone());
            v
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&row| !aug[row][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for entry in aug[col][col..].iter_mut() {
            *entry *= &inv;
        }
        let pivot_row = aug[col].clone();
        for (row, entries) in aug.iter_mut().enumerate() {
            if row != col && !entries[col].is_zero() {
                let factor = entries[col].clone();
                for (entry, pivot) in entries[col..].iter_mut().zip(&pivot_row[col..]) {
                    *entry -= &factor * pivot;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// Sign of a rational: -1, 0 or 1.
pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
