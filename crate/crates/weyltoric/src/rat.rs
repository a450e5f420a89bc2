//! Small helpers around `BigRational` coefficients: factorials, falling
//! factorials and the generalized binomial `binom(x, k)` for integer `x` of
//! either sign.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

pub type Coeff = BigRational;

pub fn int(p: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(p))
}

pub fn rat(p: i64, q: i64) -> Coeff {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_zero(c: &Coeff) -> bool {
    c.is_zero()
}

pub fn factorial(k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for t in 2..=k {
        acc *= BigInt::from(t);
    }
    acc
}

/// Falling factorial `x (x-1) ... (x-k+1)`, valid for any integer `x`.
pub fn falling(x: i64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= BigInt::from(x) - BigInt::from(t);
    }
    acc
}

/// Generalized binomial coefficient `binom(x, k) = x(x-1)...(x-k+1) / k!`
/// for integer `x` (possibly negative); always an integer.
pub fn binom(x: i64, k: u64) -> BigInt {
    let num = falling(x, k);
    let den = factorial(k);
    let (q, r) = num::Integer::div_rem(&num, &den);
    debug_assert!(r.is_zero(), "binom({x},{k}) is not an integer");
    q
}

/// Ceiling of `a / b` for `b > 0`.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// Floor of `a / b` for `b > 0`.
pub fn floor_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

/// Renders a rational as `p` or `p/q` with the sign on the numerator.
pub fn coeff_string(c: &Coeff) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_coeff(s: &str) -> Option<Coeff> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(p))
        }
    }
}

/// Exact conversion to `i64`, when the rational is such an integer.
pub fn to_i64(c: &Coeff) -> Option<i64> {
    use num::ToPrimitive;
    if c.denom().is_one() {
        c.numer().to_i64()
    } else {
        None
    }
}

pub fn abs(c: &Coeff) -> Coeff {
    c.abs()
}
