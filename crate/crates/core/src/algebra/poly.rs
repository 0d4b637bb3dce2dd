use std::fmt;

use super::{Field, Ring};
use crate::field::rational::{format_rational, Rational};

/// Dense univariate polynomial `c[0] + c[1] t + ... + c[n] t^n`.
///
/// Invariant: no trailing zero coefficients, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Ring> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.times(x).plus(c))
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.times(s)).collect())
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    fn zip(&self, o: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| f(&self.coeff(i), &o.coeff(i))).collect())
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead_inv = d.leading()?.inverse()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty").times(&lead_inv);
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] = rem[shift + i].minus(&c.times(dc));
            }
            rem.pop();
            quot[shift] = c;
        }
        Some((Self::new(quot), Self::new(rem)))
    }
}

impl<F: Field> Ring for Poly<F> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        self.zip(o, F::plus)
    }
    fn minus(&self, o: &Self) -> Self {
        self.zip(o, F::minus)
    }
    fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(out)
    }
    fn negate(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(F::negate).collect(),
        }
    }
    fn exact_div(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o).expect("division by zero polynomial");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }
}

impl fmt::Display for Poly<Rational> {
    /// Ascending powers of `t`, e.g. `6*t - 2*t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if Ring::is_zero(c) {
                continue;
            }
            let neg = c < &<Rational as Ring>::zero();
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = mag == <Rational as Ring>::one();
            match i {
                0 => write!(f, "{}", format_rational(&mag))?,
                _ if unit => {}
                _ => write!(f, "{}*", format_rational(&mag))?,
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{int, rat};

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn arithmetic_and_trimming() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0]).degree(), None);
        assert_eq!(p(&[1, 1]).times(&p(&[-1, 1])), p(&[-1, 0, 1]));
        assert_eq!(p(&[1, 1]).minus(&p(&[1, 1])), Poly::zero());
        assert_eq!(p(&[-4, 0, 1]).eval(&int(2)), int(0));
    }

    #[test]
    fn division() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.exact_div(&p(&[1, 1])), p(&[-1, 1]));
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[0, 2])).unwrap();
        assert_eq!(q, Poly::new(vec![int(0), rat(1, 2)]));
        assert_eq!(r, p(&[1]));
        assert!(p(&[1]).div_rem(&Poly::zero()).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 6, -2]).to_string(), "6*t - 2*t^2");
        assert_eq!(p(&[-1, 1]).to_string(), "-1 + t");
        assert_eq!(Poly::<Rational>::zero().to_string(), "0");
    }
}
