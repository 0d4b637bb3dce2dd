//! Complex numbers `re + i*im` with constructible real parts.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::{ConstructibleReal, FieldError};

type CR = ConstructibleReal;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianConstructible {
    pub re: ConstructibleReal,
    pub im: ConstructibleReal,
}

impl GaussianConstructible {
    pub fn new(re: CR, im: CR) -> Self {
        GaussianConstructible { re, im }
    }

    pub fn real(re: CR) -> Self {
        Self::new(re, CR::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(CR::from(re), CR::from(im))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.im.is_zero() {
            self.re.as_rational()
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if o.im.as_rational().is_some_and(num_traits::Zero::is_zero) {
            return Self::new(&self.re * &o.re, &self.im * &o.re);
        }
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Self::new(re, im)
    }

    pub fn scale(&self, s: &CR) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        Self::new(self.re.scale(q), self.im.scale(q))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        let norm = self.re.square() + self.im.square();
        let ninv = norm.inv()?;
        Ok(Self::new(&self.re * &ninv, -(&self.im * &ninv)))
    }

    pub fn div(&self, o: &Self) -> Result<Self, FieldError> {
        if o.im.as_rational().is_some_and(num_traits::Zero::is_zero) {
            let inv = o.re.inv()?;
            return Ok(self.scale(&inv));
        }
        Ok(self.mul(&o.inv()?))
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Lexicographic order on `(re, im)`; only used to sort and deduplicate.
    pub fn lex_cmp(&self, o: &Self) -> Ordering {
        self.re.cmp(&o.re).then_with(|| self.im.cmp(&o.im))
    }
}

impl fmt::Display for GaussianConstructible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "({})*i", self.im)
        } else {
            write!(f, "{} + ({})*i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianConstructible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &GaussianConstructible {
    type Output = GaussianConstructible;
    fn add(self, o: &GaussianConstructible) -> GaussianConstructible {
        GaussianConstructible::add(self, o)
    }
}

impl Sub for &GaussianConstructible {
    type Output = GaussianConstructible;
    fn sub(self, o: &GaussianConstructible) -> GaussianConstructible {
        GaussianConstructible::sub(self, o)
    }
}

impl Mul for &GaussianConstructible {
    type Output = GaussianConstructible;
    fn mul(self, o: &GaussianConstructible) -> GaussianConstructible {
        GaussianConstructible::mul(self, o)
    }
}

impl Neg for &GaussianConstructible {
    type Output = GaussianConstructible;
    fn neg(self) -> GaussianConstructible {
        GaussianConstructible::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = GaussianConstructible;

    #[test]
    fn i_squared() {
        assert_eq!(G::i().mul(&G::i()), G::from_ints(-1, 0));
        assert_eq!(G::from_ints(0, 2).mul(&G::from_ints(0, 2)), G::from_ints(-4, 0));
        assert_eq!(G::from_ints(1, 1).add(&G::from_ints(1, -1)), G::from_ints(2, 0));
    }

    #[test]
    fn division_round_trips() {
        let a = G::new(CR::from(3), CR::from(2).sqrt_adjoin().unwrap());
        let b = G::from_ints(1, -4);
        let c = a.div(&b).unwrap();
        assert_eq!(c.mul(&b), a);
        assert!(matches!(a.div(&G::zero()), Err(FieldError::DivisionByZero)));
    }
}
