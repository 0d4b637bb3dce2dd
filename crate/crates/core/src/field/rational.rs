//! Helpers around `BigRational`: parsing, formatting, integer square roots
//! and square-free factorization.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FieldError;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"-p/q"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let s = s.trim();
    let bad = || FieldError::Parse(format!("not a rational literal: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact rational square root, if `q` is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(BigInt::from(rn), BigInt::from(rd)))
    } else {
        None
    }
}

/// Smallest integer `e >= 0` with `e^2 >= q`.
pub fn ceil_sqrt(q: &Rational) -> BigInt {
    if !q.is_positive() {
        return BigInt::zero();
    }
    let c = q.ceil().to_integer();
    let mut e = c.sqrt();
    while Rational::from_integer(&e * &e) < *q {
        e += 1;
    }
    e
}

/// Splits a positive integer `m` as `s^2 * p_1 * ... * p_j` with distinct
/// primes `p_i`. Factoring is by trial division.
pub fn square_free_decomposition(m: &BigUint) -> (BigUint, Vec<BigUint>) {
    let mut rest = m.clone();
    let mut square = BigUint::one();
    let mut primes = Vec::new();
    let mut push = |p: BigUint, e: u32, square: &mut BigUint| {
        for _ in 0..e / 2 {
            *square *= &p;
        }
        if e % 2 == 1 {
            primes.push(p);
        }
    };
    let two = BigUint::from(2u32);
    let mut e = 0;
    while rest.is_even() && !rest.is_zero() {
        rest >>= 1;
        e += 1;
    }
    push(two, e, &mut square);
    let mut p = BigUint::from(3u32);
    while &p * &p <= rest {
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            push(p.clone(), e, &mut square);
        }
        p += 2u32;
    }
    if rest > BigUint::one() {
        primes.push(rest);
    }
    (square, primes)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
