//! Outward-widened `f64` intervals used as a fast path for sign decisions.
//!
//! Every operation widens its result by a relative `2^-50` plus the smallest
//! normal double, which dominates the rounding error of one IEEE operation.
//! Anything non-finite collapses to the unbounded interval, so an
//! inconclusive answer always falls back to the exact path.

use super::rational::{to_f64, Rational};
use num_traits::Zero;

const REL: f64 = 1.0 / (1u64 << 50) as f64;
const REL_CONVERSION: f64 = 1.0 / (1u64 << 45) as f64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const UNBOUNDED: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    fn widened(lo: f64, hi: f64, rel: f64) -> Interval {
        if !(lo.is_finite() && hi.is_finite()) {
            return Self::UNBOUNDED;
        }
        let lo = lo - lo.abs() * rel - f64::MIN_POSITIVE;
        let hi = hi + hi.abs() * rel + f64::MIN_POSITIVE;
        if lo.is_finite() && hi.is_finite() {
            Interval { lo, hi }
        } else {
            Self::UNBOUNDED
        }
    }

    pub fn from_rational(q: &Rational) -> Interval {
        if q.is_zero() {
            return Interval { lo: 0.0, hi: 0.0 };
        }
        let v = to_f64(q);
        Self::widened(v, v, REL_CONVERSION)
    }

    pub fn add(self, o: Interval) -> Interval {
        Self::widened(self.lo + o.lo, self.hi + o.hi, REL)
    }

    pub fn mul(self, o: Interval) -> Interval {
        let c = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        if c.iter().any(|v| v.is_nan()) {
            return Self::UNBOUNDED;
        }
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::widened(lo, hi, REL)
    }

    /// Square root of an interval known to enclose a non-negative value.
    pub fn sqrt(self) -> Interval {
        if !self.hi.is_finite() {
            return Self::UNBOUNDED;
        }
        let lo = self.lo.max(0.0).sqrt();
        let hi = self.hi.max(0.0).sqrt();
        let w = Self::widened(lo, hi, REL);
        Interval {
            lo: w.lo.max(0.0),
            hi: w.hi,
        }
    }

    /// `Some(sign)` when the interval excludes zero (or is exactly zero).
    pub fn sign(self) -> Option<i8> {
        if self.lo > 0.0 {
            Some(1)
        } else if self.hi < 0.0 {
            Some(-1)
        } else if self.lo == 0.0 && self.hi == 0.0 {
            Some(0)
        } else {
            None
        }
    }

    /// `Some(ordering)` when the two intervals are disjoint.
    pub fn compare(self, o: Interval) -> Option<std::cmp::Ordering> {
        if self.hi < o.lo {
            Some(std::cmp::Ordering::Less)
        } else if self.lo > o.hi {
            Some(std::cmp::Ordering::Greater)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat;

    #[test]
    fn encloses_simple_values() {
        let third = Interval::from_rational(&rat(1, 3));
        assert!(third.lo < 1.0 / 3.0 && third.hi > 1.0 / 3.0);
        let two = Interval::from_rational(&rat(2, 1)).sqrt();
        assert!(two.lo < std::f64::consts::SQRT_2 && two.hi > std::f64::consts::SQRT_2);
        let diff = two.mul(two).add(Interval::from_rational(&rat(-2, 1)));
        assert_eq!(diff.sign(), None);
    }

    #[test]
    fn huge_values_are_inconclusive() {
        let big = Interval::from_rational(&rat(1, 1)).mul(Interval::UNBOUNDED);
        assert_eq!(big.sign(), None);
    }
}
