use std::collections::BTreeMap;

use num_traits::Signed;

use super::Ring;
use crate::field::rational::{format_rational, Rational};

/// Exponent vector with trailing zeros trimmed, so `Vec` ordering is
/// exactly lexicographic monomial order with variable 0 most significant.
type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over Q. Invariant: no zero coefficients.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

impl MPoly {
    pub fn constant(c: Rational) -> Self {
        Self::term(c, Vec::new())
    }

    /// The `i`-th variable.
    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        Self::term(<Rational as Ring>::one(), m)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !Ring::is_zero(&c) {
            terms.insert(trim(m), c);
        }
        MPoly { terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.times(self))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        let entry = self.terms.entry(m).or_insert_with(<Rational as Ring>::zero);
        *entry += c;
        if Ring::is_zero(&*entry) {
            self.terms.retain(|_, v| !Ring::is_zero(v));
        }
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Renders with the given variable names, highest monomial first.
    pub fn render(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            out += match (k, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| match e {
                    1 => names[i].to_string(),
                    _ => format!("{}^{e}", names[i]),
                })
                .collect();
            let unit = mag == <Rational as Ring>::one();
            let mut parts = Vec::new();
            if !unit || factors.is_empty() {
                parts.push(format_rational(&mag));
            }
            parts.extend(factors);
            out += &parts.join("*");
        }
        out
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(<Rational as Ring>::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let n = m1.len().max(m2.len());
                let m = (0..n)
                    .map(|i| m1.get(i).unwrap_or(&0) + m2.get(i).unwrap_or(&0))
                    .collect();
                r.add_term(m, c1 * c2);
            }
        }
        r
    }
    fn negate(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
    /// Lex-order division. When the quotient is exact the leading monomial of
    /// the remainder is always divisible by that of the divisor.
    fn exact_div(&self, o: &Self) -> Self {
        let (lm, lc) = o.leading().expect("division by zero polynomial");
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading() {
            assert!(
                rm.len() >= lm.len() && lm.iter().zip(rm).all(|(a, b)| a <= b),
                "inexact multivariate division"
            );
            let m: Monomial = rm
                .iter()
                .enumerate()
                .map(|(i, e)| e - lm.get(i).unwrap_or(&0))
                .collect();
            let t = Self::term(rc / &lc, m);
            rem = rem.minus(&t.times(o));
            quot = quot.plus(&t);
        }
        quot
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(<Rational as Ring>::from_i64(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MPoly {
        MPoly::var(0)
    }
    fn y() -> MPoly {
        MPoly::var(1)
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = x().plus(&y()).times(&x().minus(&MPoly::from_i64(2)));
        let b = x().times(&y()).plus(&MPoly::one());
        let prod = a.times(&b);
        assert_eq!(prod.exact_div(&b), a);
        assert_eq!(prod.exact_div(&a), b);
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn inexact_division_panics() {
        x().plus(&MPoly::one()).exact_div(&y());
    }

    #[test]
    fn render() {
        let p = MPoly::from_i64(-2).times(&x().pow(2)).plus(&x().times(&y()).times(&MPoly::from_i64(6)));
        assert_eq!(p.render(&["t", "d2"]), "-2*t^2 + 6*t*d2");
    }
}
