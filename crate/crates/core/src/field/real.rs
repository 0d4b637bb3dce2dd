//! Real numbers obtained from the rationals by field operations and square
//! roots.
//!
//! A value is either a rational or `a + b*sqrt(r)` where `sqrt(r)` is a
//! [`Generator`] and `a`, `b` only involve generators strictly below it.
//! Generators are totally ordered: square roots of rational primes first
//! (by the prime), then nested roots by height and radicand. Rational
//! radicands are always split into prime generators, so values over
//! rational radicands have a unique structural form and compare
//! structurally. Once a nested generator is involved equality falls back to
//! the exact sign of the difference, which is correct for any presentation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::Interval;
use super::rational::{format_rational, rational_sqrt, square_free_decomposition, Rational};
use super::FieldError;

#[derive(Clone)]
pub struct ConstructibleReal(Arc<Node>);

struct Node {
    kind: Kind,
    nested: bool,
    approx: OnceLock<Interval>,
}

enum Kind {
    Rat(Rational),
    Ext {
        a: ConstructibleReal,
        b: ConstructibleReal,
        root: Generator,
    },
}

/// An adjoined square root `sqrt(radicand)`.
#[derive(Clone)]
pub struct Generator(Arc<GenNode>);

struct GenNode {
    radicand: ConstructibleReal,
    order: GenOrder,
    sqrt_approx: OnceLock<Interval>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum GenOrder {
    Prime(BigUint),
    Nested(u32),
}

impl Generator {
    fn prime(p: BigUint) -> Generator {
        let radicand = ConstructibleReal::from(Rational::from_integer(BigInt::from(p.clone())));
        Generator(Arc::new(GenNode {
            radicand,
            order: GenOrder::Prime(p),
            sqrt_approx: OnceLock::new(),
        }))
    }

    fn nested(radicand: ConstructibleReal) -> Generator {
        let height = radicand
            .generators()
            .iter()
            .map(Generator::height)
            .max()
            .unwrap_or(0)
            + 1;
        Generator(Arc::new(GenNode {
            radicand,
            order: GenOrder::Nested(height),
            sqrt_approx: OnceLock::new(),
        }))
    }

    pub fn radicand(&self) -> &ConstructibleReal {
        &self.0.radicand
    }

    /// The generator as a field element, `0 + 1*sqrt(r)`.
    pub fn value(&self) -> ConstructibleReal {
        ConstructibleReal::ext_raw(ConstructibleReal::zero(), ConstructibleReal::one(), self.clone())
    }

    /// Square roots of rational primes have height 0.
    pub fn height(&self) -> u32 {
        match self.0.order {
            GenOrder::Prime(_) => 0,
            GenOrder::Nested(h) => h,
        }
    }

    pub fn is_nested(&self) -> bool {
        matches!(self.0.order, GenOrder::Nested(_))
    }

    /// The prime `p` for a generator `sqrt(p)`.
    pub fn prime_radicand(&self) -> Option<&BigUint> {
        match &self.0.order {
            GenOrder::Prime(p) => Some(p),
            GenOrder::Nested(_) => None,
        }
    }

    fn sqrt_approx(&self) -> Interval {
        *self
            .0
            .sqrt_approx
            .get_or_init(|| self.0.radicand.approx().sqrt())
    }
}

impl PartialEq for Generator {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Generator {}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0
            .order
            .cmp(&other.0.order)
            .then_with(|| self.0.radicand.structural_cmp(&other.0.radicand))
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sqrt({})", self.0.radicand)
    }
}

impl From<Rational> for ConstructibleReal {
    fn from(q: Rational) -> Self {
        ConstructibleReal(Arc::new(Node {
            kind: Kind::Rat(q),
            nested: false,
            approx: OnceLock::new(),
        }))
    }
}

impl From<i64> for ConstructibleReal {
    fn from(n: i64) -> Self {
        ConstructibleReal::from(Rational::from_integer(BigInt::from(n)))
    }
}

impl ConstructibleReal {
    pub fn zero() -> Self {
        Self::from(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from(Rational::one())
    }

    fn ext_raw(a: Self, b: Self, root: Generator) -> Self {
        let nested = a.0.nested || b.0.nested || root.is_nested();
        ConstructibleReal(Arc::new(Node {
            kind: Kind::Ext { a, b, root },
            nested,
            approx: OnceLock::new(),
        }))
    }

    /// `a + b*root`, collapsing to `a` when `b` is zero.
    fn make_ext(a: Self, b: Self, root: &Generator) -> Self {
        if b.is_zero() {
            a
        } else {
            Self::ext_raw(a, b, root.clone())
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.0.kind {
            Kind::Rat(q) => Some(q),
            Kind::Ext { .. } => None,
        }
    }

    /// `(a, b, root)` for `a + b*sqrt(r)`, `None` for rationals.
    pub fn parts(&self) -> Option<(&Self, &Self, &Generator)> {
        match &self.0.kind {
            Kind::Rat(_) => None,
            Kind::Ext { a, b, root } => Some((a, b, root)),
        }
    }

    pub fn top(&self) -> Option<&Generator> {
        self.parts().map(|(_, _, g)| g)
    }

    /// True when a nested (non-rational) radicand occurs anywhere.
    pub fn involves_nested(&self) -> bool {
        self.0.nested
    }

    /// Writes `self = a + b*g` for a generator `g >= top(self)`.
    fn split(&self, g: &Generator) -> (Self, Self) {
        match &self.0.kind {
            Kind::Ext { a, b, root } if root == g => (a.clone(), b.clone()),
            _ => (self.clone(), Self::zero()),
        }
    }

    fn max_top<'a>(x: &'a Self, y: &'a Self) -> Option<&'a Generator> {
        match (x.top(), y.top()) {
            (None, None) => None,
            (Some(g), None) | (None, Some(g)) => Some(g),
            (Some(g), Some(h)) => Some(if g >= h { g } else { h }),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0.kind {
            Kind::Rat(q) => q.is_zero(),
            Kind::Ext { .. } => self.0.nested && self.sign() == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0.kind, Kind::Rat(q) if q.is_one())
    }

    pub fn neg(&self) -> Self {
        match &self.0.kind {
            Kind::Rat(q) => Self::from(-q),
            Kind::Ext { a, b, root } => Self::ext_raw(a.neg(), b.neg(), root.clone()),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match Self::max_top(self, o) {
            None => Self::from(self.as_rational().unwrap() + o.as_rational().unwrap()),
            Some(g) => {
                let g = g.clone();
                let (a1, b1) = self.split(&g);
                let (a2, b2) = o.split(&g);
                Self::make_ext(a1.add(&a2), b1.add(&b2), &g)
            }
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        match Self::max_top(self, o) {
            None => Self::from(self.as_rational().unwrap() - o.as_rational().unwrap()),
            Some(g) => {
                let g = g.clone();
                let (a1, b1) = self.split(&g);
                let (a2, b2) = o.split(&g);
                Self::make_ext(a1.sub(&a2), b1.sub(&b2), &g)
            }
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        if q.is_one() {
            return self.clone();
        }
        match &self.0.kind {
            Kind::Rat(p) => Self::from(p * q),
            Kind::Ext { a, b, root } => Self::ext_raw(a.scale(q), b.scale(q), root.clone()),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if let Some(q) = o.as_rational() {
            return self.scale(q);
        }
        if let Some(q) = self.as_rational() {
            return o.scale(q);
        }
        let g = Self::max_top(self, o).unwrap().clone();
        let (a1, b1) = self.split(&g);
        let (a2, b2) = o.split(&g);
        if b2.as_rational().is_some_and(Zero::is_zero) {
            return Self::make_ext(a1.mul(o), b1.mul(o), &g);
        }
        if b1.as_rational().is_some_and(Zero::is_zero) {
            return Self::make_ext(self.mul(&a2), self.mul(&b2), &g);
        }
        let aa = &a1 * &a2;
        let bb = &b1 * &b2;
        let cross = (&a1 + &b1).mul(&(&a2 + &b2)).sub(&aa).sub(&bb);
        Self::make_ext(aa.add(&bb.mul(g.radicand())), cross, &g)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        match &self.0.kind {
            Kind::Rat(q) => {
                if q.is_zero() {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(Self::from(q.recip()))
                }
            }
            Kind::Ext { a, b, root } => {
                let norm = a.square().sub(&b.square().mul(root.radicand()));
                if norm.is_zero() {
                    // Only reachable through dependent nested radicands: the
                    // root already lies in the lower field as |a/b|.
                    let mut s = a.div(b)?;
                    if s.sign() < 0 {
                        s = s.neg();
                    }
                    return a.add(&b.mul(&s)).inv();
                }
                let ninv = norm.inv()?;
                Ok(Self::make_ext(a.mul(&ninv), b.mul(&ninv).neg(), root))
            }
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self, FieldError> {
        if let Some(q) = o.as_rational() {
            if q.is_zero() {
                return Err(FieldError::DivisionByZero);
            }
            return Ok(self.scale(&q.recip()));
        }
        Ok(self.mul(&o.inv()?))
    }

    pub(crate) fn approx(&self) -> Interval {
        *self.0.approx.get_or_init(|| match &self.0.kind {
            Kind::Rat(q) => Interval::from_rational(q),
            Kind::Ext { a, b, root } => a.approx().add(b.approx().mul(root.sqrt_approx())),
        })
    }

    /// Sign of the denoted real number: -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        match &self.0.kind {
            Kind::Rat(q) => {
                if q.is_positive() {
                    1
                } else if q.is_negative() {
                    -1
                } else {
                    0
                }
            }
            Kind::Ext { a, b, root } => {
                if let Some(s) = self.approx().sign() {
                    return s;
                }
                self.exact_sign(a, b, root)
            }
        }
    }

    fn exact_sign(&self, a: &Self, b: &Self, root: &Generator) -> i8 {
        let sa = a.sign();
        let sb = b.sign();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        // a and b*sqrt(r) have opposite signs; compare a^2 with b^2 r.
        let diff = a.square().sub(&b.square().mul(root.radicand()));
        sa * diff.sign()
    }

    /// Sign computed without the interval fast path.
    pub fn sign_exact(&self) -> i8 {
        match &self.0.kind {
            Kind::Rat(_) => self.sign(),
            Kind::Ext { a, b, root } => {
                let sa = a.sign_exact();
                let sb = b.sign_exact();
                if sb == 0 {
                    return sa;
                }
                if sa == 0 || sa == sb {
                    return if sa == 0 { sb } else { sa };
                }
                let diff = a.square().sub(&b.square().mul(root.radicand()));
                sa * diff.sign_exact()
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Diagnostic decimal value; not authoritative.
    pub fn to_f64(&self) -> f64 {
        match &self.0.kind {
            Kind::Rat(q) => q.to_f64().unwrap_or(f64::NAN),
            Kind::Ext { a, b, root } => a.to_f64() + b.to_f64() * root.radicand().to_f64().sqrt(),
        }
    }

    /// All generators in the tower of this value, radicands included, in
    /// ascending order.
    // generator order reads only the radicand and rank, never the cached interval
    #[allow(clippy::mutable_key_type)]
    pub fn generators(&self) -> Vec<Generator> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_generators(&mut out);
        out.into_iter().collect()
    }

    #[allow(clippy::mutable_key_type)]
    fn collect_generators(&self, out: &mut std::collections::BTreeSet<Generator>) {
        if let Kind::Ext { a, b, root } = &self.0.kind {
            if out.insert(root.clone()) {
                root.radicand().collect_generators(out);
            }
            a.collect_generators(out);
            b.collect_generators(out);
        }
    }

    /// Number of generators in the tower; 0 for rationals.
    pub fn level(&self) -> usize {
        self.generators().len()
    }

    /// Non-negative square root, adjoining new generators only when the
    /// value is not already a square in its own tower.
    pub fn sqrt_adjoin(&self) -> Result<Self, FieldError> {
        match self.sign() {
            -1 => return Err(FieldError::NegativeRadicand),
            0 => return Ok(Self::zero()),
            _ => {}
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::sqrt_positive_rational(q));
        }
        let tower = self.generators();
        if let Some(y) = sqrt_within(self, &tower) {
            return Ok(y);
        }
        let (a, b, root) = self.parts().unwrap();
        let lower = &tower[..tower.len() - 1];
        let r = root.radicand();
        // sqrt(a + b sqrt r) = u + sign(b) v with u^2 = (a + s)/2, when
        // s^2 = a^2 - b^2 r has a root in the lower field.
        let disc = a.square().sub(&b.square().mul(r));
        if disc.sign() >= 0 {
            if let Some(s) = sqrt_within(&disc, lower) {
                let half = Rational::new(BigInt::one(), BigInt::from(2));
                let u = a.add(&s).scale(&half).sqrt_adjoin()?;
                let v = b.abs().mul(&root.value()).div(&u.scale(&Rational::from_integer(2.into())))?;
                return Ok(if b.sign() > 0 { u.add(&v) } else { u.sub(&v) });
            }
        }
        Ok(Generator::nested(self.clone()).value())
    }

    fn sqrt_positive_rational(q: &Rational) -> Self {
        if let Some(r) = rational_sqrt(q) {
            return Self::from(r);
        }
        let m = (q.numer() * q.denom()).magnitude().clone();
        let (square, primes) = square_free_decomposition(&m);
        let coeff = Rational::new(BigInt::from(square), q.denom().clone());
        primes.into_iter().fold(Self::from(coeff), |acc, p| {
            Self::ext_raw(Self::zero(), acc, Generator::prime(p))
        })
    }

    /// Galois conjugation `sqrt(r) -> -sqrt(r)` at the generator `g`.
    pub fn conjugate(&self, g: &Generator) -> Result<Self, FieldError> {
        for h in self.generators() {
            if h.is_nested() && h.radicand().generators().contains(g) {
                return Err(FieldError::ConjugationUnsupported);
            }
        }
        Ok(self.conjugate_unchecked(g))
    }

    fn conjugate_unchecked(&self, g: &Generator) -> Self {
        match &self.0.kind {
            Kind::Rat(_) => self.clone(),
            Kind::Ext { a, b, root } => {
                let ca = a.conjugate_unchecked(g);
                let cb = b.conjugate_unchecked(g);
                if root == g {
                    Self::ext_raw(ca, cb.neg(), root.clone())
                } else {
                    Self::ext_raw(ca, cb, root.clone())
                }
            }
        }
    }

    pub fn structural_eq(&self, o: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &o.0) {
            return true;
        }
        match (&self.0.kind, &o.0.kind) {
            (Kind::Rat(p), Kind::Rat(q)) => p == q,
            (
                Kind::Ext { a, b, root },
                Kind::Ext {
                    a: a2,
                    b: b2,
                    root: root2,
                },
            ) => root == root2 && b.structural_eq(b2) && a.structural_eq(a2),
            _ => false,
        }
    }

    /// A total order on presentations (not on values).
    pub fn structural_cmp(&self, o: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &o.0) {
            return Ordering::Equal;
        }
        match (&self.0.kind, &o.0.kind) {
            (Kind::Rat(p), Kind::Rat(q)) => p.cmp(q),
            (Kind::Rat(_), Kind::Ext { .. }) => Ordering::Less,
            (Kind::Ext { .. }, Kind::Rat(_)) => Ordering::Greater,
            (
                Kind::Ext { a, b, root },
                Kind::Ext {
                    a: a2,
                    b: b2,
                    root: root2,
                },
            ) => root
                .cmp(root2)
                .then_with(|| b.structural_cmp(b2))
                .then_with(|| a.structural_cmp(a2)),
        }
    }

    /// Exact comparison of the denoted reals.
    pub fn compare(&self, o: &Self) -> Ordering {
        if self.structural_eq(o) {
            return Ordering::Equal;
        }
        if let Some(ord) = self.approx().compare(o.approx()) {
            return ord;
        }
        match self.sub(o).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

/// Square root of `n` inside `Q(tower)`, if there is one. `tower` must be
/// sorted and contain every generator of `n`.
fn sqrt_within(n: &ConstructibleReal, tower: &[Generator]) -> Option<ConstructibleReal> {
    type CR = ConstructibleReal;
    match n.sign() {
        -1 => return None,
        0 => return Some(CR::zero()),
        _ => {}
    }
    let Some((g, lower)) = tower.split_last() else {
        return n.as_rational().and_then(rational_sqrt).map(CR::from);
    };
    let (a, b) = n.split(g);
    let r = g.radicand();
    if b.is_zero() {
        if let Some(c) = sqrt_within(&a, lower) {
            return Some(c);
        }
        let q = a.div(r).ok()?;
        return sqrt_within(&q, lower).map(|e| CR::make_ext(CR::zero(), e, g));
    }
    let disc = a.square().sub(&b.square().mul(r));
    let s = sqrt_within(&disc, lower)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for cand in [(&a + &s).scale(&half), (&a - &s).scale(&half)] {
        if let Some(c) = sqrt_within(&cand, lower) {
            if c.is_zero() {
                continue;
            }
            let e = b.div(&c.scale(&Rational::from_integer(2.into()))).ok()?;
            let y = CR::make_ext(c, e, g);
            return Some(y.abs());
        }
    }
    None
}

impl PartialEq for ConstructibleReal {
    fn eq(&self, o: &Self) -> bool {
        if self.structural_eq(o) {
            return true;
        }
        if !self.0.nested && !o.0.nested {
            return false;
        }
        self.sub(o).sign() == 0
    }
}

impl Eq for ConstructibleReal {}

impl PartialOrd for ConstructibleReal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for ConstructibleReal {
    fn cmp(&self, o: &Self) -> Ordering {
        self.compare(o)
    }
}

impl fmt::Display for ConstructibleReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Rat(q) => write!(f, "{}", format_rational(q)),
            Kind::Ext { a, b, root } => {
                let radical = format!("sqrt({})", root.radicand());
                let term = if b.is_one() {
                    radical
                } else if b.as_rational().is_some() {
                    format!("{b}*{radical}")
                } else {
                    format!("({b})*{radical}")
                };
                if a.as_rational().is_some_and(Zero::is_zero) {
                    write!(f, "{term}")
                } else {
                    write!(f, "{a} + {term}")
                }
            }
        }
    }
}

impl fmt::Debug for ConstructibleReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&ConstructibleReal> for &ConstructibleReal {
            type Output = ConstructibleReal;
            fn $m(self, o: &ConstructibleReal) -> ConstructibleReal {
                ConstructibleReal::$m(self, o)
            }
        }
        impl $tr<ConstructibleReal> for ConstructibleReal {
            type Output = ConstructibleReal;
            fn $m(self, o: ConstructibleReal) -> ConstructibleReal {
                ConstructibleReal::$m(&self, &o)
            }
        }
        impl $tr<ConstructibleReal> for &ConstructibleReal {
            type Output = ConstructibleReal;
            fn $m(self, o: ConstructibleReal) -> ConstructibleReal {
                ConstructibleReal::$m(self, &o)
            }
        }
        impl $tr<&ConstructibleReal> for ConstructibleReal {
            type Output = ConstructibleReal;
            fn $m(self, o: &ConstructibleReal) -> ConstructibleReal {
                ConstructibleReal::$m(&self, o)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for ConstructibleReal {
    type Output = ConstructibleReal;
    fn neg(self) -> ConstructibleReal {
        ConstructibleReal::neg(&self)
    }
}

impl Neg for &ConstructibleReal {
    type Output = ConstructibleReal;
    fn neg(self) -> ConstructibleReal {
        ConstructibleReal::neg(self)
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{int, rat};

    type CR = ConstructibleReal;

    fn q(n: i64, d: i64) -> CR {
        CR::from(rat(n, d))
    }

    fn sqrt(n: i64) -> CR {
        CR::from(n).sqrt_adjoin().unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(1, 2).div(&q(1, 4)).unwrap(), q(2, 1));
        assert!(matches!(q(1, 2).div(&CR::zero()), Err(FieldError::DivisionByZero)));
    }

    #[test]
    fn root_two_squared_is_two() {
        let r2 = sqrt(2);
        let sq = &r2 * &r2;
        assert_eq!(sq.as_rational(), Some(&int(2)));
        assert_eq!(sq, CR::from(2));
    }

    #[test]
    fn conjugate_product_hand_expansion() {
        // (1 + sqrt2)(1 - sqrt2) = 1 - 2 = -1
        let r2 = sqrt(2);
        let x = CR::one() + &r2;
        let y = CR::one() - &r2;
        assert_eq!((x * y).as_rational(), Some(&int(-1)));
    }

    #[test]
    fn sqrt_adjoin_examples() {
        assert_eq!(CR::zero().sqrt_adjoin().unwrap(), CR::zero());
        assert_eq!(q(9, 4).sqrt_adjoin().unwrap().as_rational(), Some(&rat(3, 2)));
        let r3 = sqrt(3);
        assert_eq!(r3.level(), 1);
        assert_eq!((&r3 * &r3).as_rational(), Some(&int(3)));
        assert!(matches!(CR::from(-1).sqrt_adjoin(), Err(FieldError::NegativeRadicand)));
    }

    #[test]
    fn composite_radicands_split_into_primes() {
        let r6 = sqrt(6);
        assert_eq!(r6, sqrt(2) * sqrt(3));
        assert!(r6.structural_eq(&(sqrt(3) * sqrt(2))));
        let r12 = sqrt(12);
        assert_eq!(r12, CR::from(2) * sqrt(3));
        assert_eq!(q(3, 4).sqrt_adjoin().unwrap(), sqrt(3).scale(&rat(1, 2)));
    }

    #[test]
    fn sign_examples() {
        let r2 = sqrt(2);
        assert_eq!((&r2 - CR::one()).sign(), 1);
        assert_eq!((CR::one() - &r2).sign(), -1);
        assert_eq!((&r2 * &r2 - CR::from(2)).sign(), 0);
        // sqrt2 + sqrt3 - sqrt(10 - eps) style near-cancellation
        let x = sqrt(2) + sqrt(3);
        assert_eq!(x.compare(&sqrt(5)), Ordering::Greater);
    }

    #[test]
    fn exact_sign_without_fast_path() {
        let r2 = sqrt(2);
        let r3 = sqrt(3);
        let x = &r2 + &r3 - sqrt(5);
        assert_eq!(x.sign_exact(), 1);
        let y = (&r2 + &r3).square() - (CR::from(5) + CR::from(2) * sqrt(6));
        assert_eq!(y.sign_exact(), 0);
        assert_eq!((CR::one() - &r2).sign_exact(), -1);
    }

    #[test]
    fn as_rational_examples() {
        assert_eq!(q(5, 6).as_rational(), Some(&rat(5, 6)));
        assert_eq!(sqrt(3).as_rational(), None);
        assert_eq!((sqrt(3) * sqrt(3)).as_rational(), Some(&int(3)));
    }

    #[test]
    fn inverse_of_tower_element() {
        let x = CR::from(3) + sqrt(2) * sqrt(5) + sqrt(7);
        let inv = x.inv().unwrap();
        assert_eq!(x * inv, CR::one());
    }

    #[test]
    fn denesting_known_identities() {
        // sqrt(3 + 2 sqrt 2) = 1 + sqrt 2
        let x = CR::from(3) + CR::from(2) * sqrt(2);
        assert_eq!(x.sqrt_adjoin().unwrap(), CR::one() + sqrt(2));
        // sqrt(2 + sqrt 3) = (sqrt 6 + sqrt 2) / 2 -- needs a new prime
        let y = CR::from(2) + sqrt(3);
        let r = y.sqrt_adjoin().unwrap();
        assert!(!r.involves_nested());
        assert_eq!(r.square(), y);
        // sqrt(6) inside Q(sqrt2, sqrt3) is found without new generators
        let z = (sqrt(2) + sqrt(3)).square();
        assert_eq!(z.sqrt_adjoin().unwrap(), sqrt(2) + sqrt(3));
    }

    #[test]
    fn genuinely_nested_root() {
        let x = CR::one() + sqrt(2);
        let r = x.sqrt_adjoin().unwrap();
        assert!(r.involves_nested());
        assert_eq!(r.top().unwrap().height(), 1);
        assert_eq!(r.square(), x);
        assert_eq!(r.sign(), 1);
        let again = x.sqrt_adjoin().unwrap();
        assert!(r.structural_eq(&again));
    }

    #[test]
    fn dependent_nested_roots_still_compare_exactly() {
        // sqrt(2 + sqrt2) * sqrt(2 - sqrt2) = sqrt 2
        let a = (CR::from(2) + sqrt(2)).sqrt_adjoin().unwrap();
        let b = (CR::from(2) - sqrt(2)).sqrt_adjoin().unwrap();
        let prod = &a * &b;
        assert_eq!(prod, sqrt(2));
        let diff = prod - sqrt(2);
        assert!(diff.is_zero());
        assert!(diff.inv().is_err());
    }

    #[test]
    fn conjugation_flips_one_root() {
        let r2 = sqrt(2);
        let r3 = sqrt(3);
        let x = CR::one() + &r2 + &r2 * &r3;
        let g = r2.top().unwrap().clone();
        let c = x.conjugate(&g).unwrap();
        assert_eq!(c, CR::one() - &r2 - &r2 * &r3);
        let nested = (CR::one() + &r2).sqrt_adjoin().unwrap();
        assert!(matches!(nested.conjugate(&g), Err(FieldError::ConjugationUnsupported)));
    }

    #[test]
    fn display_is_readable() {
        let x = q(1, 2) + CR::from(3) * sqrt(2);
        assert_eq!(x.to_string(), "1/2 + 3*sqrt(2)");
        assert_eq!(sqrt(3).to_string(), "sqrt(3)");
    }
}
