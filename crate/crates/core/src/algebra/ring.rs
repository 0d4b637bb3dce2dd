use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::field::{ConstructibleReal, GaussianConstructible, Rational};

/// Commutative ring with exact division wherever the quotient exists.
///
/// Method names avoid clashing with the inherent and `std::ops` methods of
/// the number types.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    /// `self / o` where the quotient is known to lie in the ring.
    ///
    /// Panics when `o` is zero or the division is not exact.
    fn exact_div(&self, o: &Self) -> Self;
    fn from_i64(n: i64) -> Self;
}

pub trait Field: Ring {
    fn inverse(&self) -> Option<Self>;
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Self {
        assert!(!Zero::is_zero(o), "division by zero");
        self / o
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
}

impl Field for Rational {
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Ring for ConstructibleReal {
    fn zero() -> Self {
        ConstructibleReal::zero()
    }
    fn one() -> Self {
        ConstructibleReal::one()
    }
    fn is_zero(&self) -> bool {
        ConstructibleReal::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn exact_div(&self, o: &Self) -> Self {
        self.div(o).expect("division by zero")
    }
    fn from_i64(n: i64) -> Self {
        ConstructibleReal::from(n)
    }
}

impl Field for ConstructibleReal {
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl Ring for GaussianConstructible {
    fn zero() -> Self {
        GaussianConstructible::zero()
    }
    fn one() -> Self {
        GaussianConstructible::one()
    }
    fn is_zero(&self) -> bool {
        GaussianConstructible::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn exact_div(&self, o: &Self) -> Self {
        self.div(o).expect("division by zero")
    }
    fn from_i64(n: i64) -> Self {
        GaussianConstructible::from_ints(n, 0)
    }
}

impl Field for GaussianConstructible {
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}
