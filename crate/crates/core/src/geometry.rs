//! Points, the squared-distance forms `phi` (real) and `psi` (complex,
//! bilinear), affine dependence, the ratio relation, trilateration and exact
//! isometries.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::bareiss_det;
use crate::field::rational::int;
use crate::field::{ConstructibleReal, FieldError, GaussianConstructible, Generator, Rational};

type CR = ConstructibleReal;
type G = GaussianConstructible;

pub const MAX_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("a + b = 0 in the ratio relation")]
    DegenerateRatio,
    #[error("trilateration anchors are affinely dependent")]
    DependentAnchors,
    #[error("segment has zero squared distance")]
    NullSegment,
    #[error("s^2 does not equal psi(P, Q)")]
    NotASquare,
    #[error("pair is not null-separated")]
    NotNull,
    #[error("points coincide")]
    CoincidentPoints,
    #[error("linear part is not orthogonal")]
    NotOrthogonal,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Real point of dimension `1..=MAX_DIM`. Ordering is lexicographic on
/// exact coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointR(pub Vec<CR>);

impl PointR {
    pub fn new(coords: Vec<CR>) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&coords.len()),
            "point dimension must be in 1..={MAX_DIM}"
        );
        PointR(coords)
    }

    pub fn xy(x: CR, y: CR) -> Self {
        PointR(vec![x, y])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| CR::from(c)).collect())
    }

    pub fn from_rationals(cs: &[Rational]) -> Self {
        Self::new(cs.iter().cloned().map(CR::from).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Self::new(vec![CR::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn x(&self) -> &CR {
        &self.0[0]
    }

    pub fn y(&self) -> &CR {
        &self.0[1]
    }

    pub fn add(&self, o: &Self) -> Self {
        PointR(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        PointR(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &CR) -> Self {
        PointR(self.0.iter().map(|a| a * s).collect())
    }

    pub fn dot(&self, o: &Self) -> CR {
        self.0
            .iter()
            .zip(&o.0)
            .fold(CR::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Squared distance; panics on mismatched dimensions. See [`phi`].
    pub fn dist_sq(&self, o: &Self) -> CR {
        assert_eq!(self.dim(), o.dim(), "dimension mismatch");
        let d = self.sub(o);
        d.dot(&d)
    }

    /// Galois conjugate of every coordinate.
    pub fn conjugate(&self, g: &Generator) -> Result<Self, FieldError> {
        Ok(PointR(
            self.0.iter().map(|c| c.conjugate(g)).collect::<Result<_, _>>()?,
        ))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(CR::to_f64).collect()
    }
}

impl fmt::Display for PointR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for PointR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Point of C^2 with Gaussian-constructible coordinates.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointC(pub [G; 2]);

impl PointC {
    pub fn new(a: G, b: G) -> Self {
        PointC([a, b])
    }

    /// `(re0 + i im0, re1 + i im1)` from integers.
    pub fn from_ints(re0: i64, im0: i64, re1: i64, im1: i64) -> Self {
        Self::new(G::from_ints(re0, im0), G::from_ints(re1, im1))
    }

    pub fn origin() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    pub fn from_real(p: &PointR) -> Self {
        assert_eq!(p.dim(), 2, "complex embedding needs a planar point");
        Self::new(G::real(p.0[0].clone()), G::real(p.0[1].clone()))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.0[0].add(&o.0[0]), self.0[1].add(&o.0[1]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.0[0].sub(&o.0[0]), self.0[1].sub(&o.0[1]))
    }

    pub fn scale(&self, s: &G) -> Self {
        Self::new(self.0[0].mul(s), self.0[1].mul(s))
    }

    /// Lexicographic order on the four real coordinates.
    pub fn lex_cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0[0].lex_cmp(&o.0[0]).then_with(|| self.0[1].lex_cmp(&o.0[1]))
    }

    pub fn conjugate(&self, g: &Generator) -> Result<Self, FieldError> {
        let c = |z: &G| -> Result<G, FieldError> { Ok(G::new(z.re.conjugate(g)?, z.im.conjugate(g)?)) };
        Ok(Self::new(c(&self.0[0])?, c(&self.0[1])?))
    }
}

impl fmt::Display for PointC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0[0], self.0[1])
    }
}

impl fmt::Debug for PointC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn check_dims(points: &[&PointR]) -> Result<usize, GeometryError> {
    let n = points.first().map_or(0, |p| p.dim());
    if points.iter().any(|p| p.dim() != n) {
        return Err(GeometryError::DimensionMismatch(
            "points have different dimensions".into(),
        ));
    }
    Ok(n)
}

/// `phi_n(p, q) = sum (p_i - q_i)^2`.
pub fn phi(p: &PointR, q: &PointR) -> Result<CR, GeometryError> {
    check_dims(&[p, q])?;
    Ok(p.dist_sq(q))
}

/// `psi_2(p, q) = (p_1 - q_1)^2 + (p_2 - q_2)^2`, bilinear (no conjugation).
pub fn psi(p: &PointC, q: &PointC) -> G {
    let d = p.sub(q);
    d.0[0].square().add(&d.0[1].square())
}

/// Determinant of the coordinate matrix of `n + 1` points in dimension `n`,
/// bordered by a column of ones.
pub fn bordered_coordinate_det(points: &[PointR]) -> Result<CR, GeometryError> {
    let refs: Vec<&PointR> = points.iter().collect();
    let n = check_dims(&refs)?;
    if points.len() != n + 1 {
        return Err(GeometryError::DimensionMismatch(format!(
            "need {} points in dimension {n}, got {}",
            n + 1,
            points.len()
        )));
    }
    let m = points
        .iter()
        .map(|p| {
            let mut row = p.0.clone();
            row.push(CR::one());
            row
        })
        .collect();
    Ok(bareiss_det(m))
}

pub fn affinely_dependent(points: &[PointR]) -> Result<bool, GeometryError> {
    Ok(bordered_coordinate_det(points)?.is_zero())
}

/// Whether `x - z = a/(a+b) (xt - z)` holds exactly.
pub fn ratio_check(
    z: &PointR,
    x: &PointR,
    xt: &PointR,
    a: &CR,
    b: &CR,
) -> Result<bool, GeometryError> {
    check_dims(&[z, x, xt])?;
    let sum = a + b;
    if sum.is_zero() {
        return Err(GeometryError::DegenerateRatio);
    }
    let lambda = a.div(&sum)?;
    Ok(x.sub(z) == xt.sub(z).scale(&lambda))
}

/// The unique planar point with squared distances `d_i` to the anchors
/// `c_i`, or `None` when no point satisfies all three.
pub fn solve_trilateration(
    c: [&PointR; 3],
    d: [&CR; 3],
) -> Result<Option<PointR>, GeometryError> {
    if check_dims(&c)? != 2 {
        return Err(GeometryError::DimensionMismatch(
            "trilateration is planar".into(),
        ));
    }
    // 2 (c_i - c_0) . x = |c_i|^2 - |c_0|^2 - (d_i - d_0), i = 1, 2
    let row = |i: usize| {
        let v = c[i].sub(c[0]);
        let rhs = c[i].dot(c[i]) - c[0].dot(c[0]) - (d[i] - d[0]);
        (v.x().scale(&int(2)), v.y().scale(&int(2)), rhs)
    };
    let (a11, a12, b1) = row(1);
    let (a21, a22, b2) = row(2);
    let det = &a11 * &a22 - &a12 * &a21;
    if det.is_zero() {
        return Err(GeometryError::DependentAnchors);
    }
    let x = (&b1 * &a22 - &a12 * &b2).div(&det)?;
    let y = (&a11 * &b2 - &b1 * &a21).div(&det)?;
    let p = PointR::xy(x, y);
    Ok((0..3).all(|i| &p.dist_sq(c[i]) == d[i]).then_some(p))
}

/// Real plane isometry `p -> m p + t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsometryR {
    pub m: [[CR; 2]; 2],
    pub t: [CR; 2],
}

impl IsometryR {
    pub fn identity() -> Self {
        IsometryR {
            m: [[CR::one(), CR::zero()], [CR::zero(), CR::one()]],
            t: [CR::zero(), CR::zero()],
        }
    }

    /// The orientation-preserving isometry sending `a0 -> a`, `b0 -> b`.
    ///
    /// Needs `|b0 - a0| = |b - a| > 0`; cosine and sine are rational
    /// functions of the two direction vectors, so no root is adjoined.
    pub fn mapping_pair(a0: &PointR, b0: &PointR, a: &PointR, b: &PointR) -> Result<Self, GeometryError> {
        let u0 = b0.sub(a0);
        let u = b.sub(a);
        let len = u0.dot(&u0);
        if len.is_zero() {
            return Err(GeometryError::NullSegment);
        }
        if len != u.dot(&u) {
            return Err(GeometryError::NotASquare);
        }
        let cos = u0.dot(&u).div(&len)?;
        let sin = (u0.x() * u.y() - u0.y() * u.x()).div(&len)?;
        let m = [[cos.clone(), -&sin], [sin, cos]];
        let rot = IsometryR { m, t: [CR::zero(), CR::zero()] };
        let ra0 = rot.apply(a0);
        Ok(IsometryR { t: [a.x() - ra0.x(), a.y() - ra0.y()], ..rot })
    }

    pub fn apply(&self, p: &PointR) -> PointR {
        let [[a, b], [c, d]] = &self.m;
        PointR::xy(
            a * p.x() + b * p.y() + &self.t[0],
            c * p.x() + d * p.y() + &self.t[1],
        )
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        let mm = |i: usize, j: usize| &self.m[i][0] * &o.m[0][j] + &self.m[i][1] * &o.m[1][j];
        let t = self.apply(&PointR::xy(o.t[0].clone(), o.t[1].clone()));
        IsometryR {
            m: [[mm(0, 0), mm(0, 1)], [mm(1, 0), mm(1, 1)]],
            t: [t.0[0].clone(), t.0[1].clone()],
        }
    }
}

/// Complex isometry `p -> m p + t` with `m m^T = I` (orthogonal, not
/// unitary), validated at construction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IsometryC {
    translation: [G; 2],
    matrix: [[G; 2]; 2],
}

impl IsometryC {
    pub fn new(translation: [G; 2], matrix: [[G; 2]; 2]) -> Result<Self, GeometryError> {
        let row_dot = |i: usize, j: usize| matrix[i][0].mul(&matrix[j][0]).add(&matrix[i][1].mul(&matrix[j][1]));
        let ok = row_dot(0, 0) == G::one() && row_dot(1, 1) == G::one() && row_dot(0, 1).is_zero();
        if !ok {
            return Err(GeometryError::NotOrthogonal);
        }
        Ok(IsometryC { translation, matrix })
    }

    pub fn identity() -> Self {
        Self::translation_by(&PointC::origin())
    }

    pub fn translation_by(v: &PointC) -> Self {
        IsometryC {
            translation: v.0.clone(),
            matrix: [[G::one(), G::zero()], [G::zero(), G::one()]],
        }
    }

    pub fn translation(&self) -> &[G; 2] {
        &self.translation
    }

    pub fn matrix(&self) -> &[[G; 2]; 2] {
        &self.matrix
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        let a = &self.matrix;
        let b = &o.matrix;
        let mm = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
        let t = apply_isometry(self, &PointC(o.translation.clone()));
        IsometryC {
            translation: t.0,
            matrix: [[mm(0, 0), mm(0, 1)], [mm(1, 0), mm(1, 1)]],
        }
    }
}

pub fn apply_isometry(h: &IsometryC, p: &PointC) -> PointC {
    let m = &h.matrix;
    let row = |i: usize| m[i][0].mul(&p.0[0]).add(&m[i][1].mul(&p.0[1])).add(&h.translation[i]);
    PointC::new(row(0), row(1))
}

/// Complex isometry with `h(0,0) = P` and `h(s,0) = Q`, given `psi(P,Q) = s^2`.
pub fn build_isometry_complex(p: &PointC, q: &PointC, s: &CR) -> Result<IsometryC, GeometryError> {
    let d = psi(p, q);
    if d.is_zero() || s.is_zero() {
        return Err(GeometryError::NullSegment);
    }
    if d != G::real(s.square()) {
        return Err(GeometryError::NotASquare);
    }
    let s_inv = G::real(s.inv()?);
    let w = q.sub(p);
    let u1 = w.0[0].mul(&s_inv);
    let u2 = w.0[1].mul(&s_inv);
    // columns u and (-u2, u1)
    IsometryC::new(p.0.clone(), [[u1.clone(), u2.neg()], [u2, u1]])
}

/// Complex isometry with `h(0,0) = X` and `h(1,i) = Y` for a null-separated
/// pair `psi(X,Y) = 0`, `X != Y`.
///
/// With `w = Y - X` we have `w_2 = ±i w_1`, `w_1 != 0`. Taking
/// `u_1 = (w_1 + 1/w_1)/2` and `u_2 = ±i (w_1 - 1/w_1)/2` gives a unit
/// column, completed by `(-u_2, u_1)` or `(u_2, -u_1)` respectively.
pub fn build_isometry_null(x: &PointC, y: &PointC) -> Result<IsometryC, GeometryError> {
    let w = y.sub(x);
    if w.0[0].is_zero() && w.0[1].is_zero() {
        return Err(GeometryError::CoincidentPoints);
    }
    if !psi(x, y).is_zero() {
        return Err(GeometryError::NotNull);
    }
    let w1 = &w.0[0];
    let w1_inv = w1.inv()?;
    let half = G::real(CR::from(Rational::new(1.into(), 2.into())));
    let u1 = w1.add(&w1_inv).mul(&half);
    let diff = w1.sub(&w1_inv).mul(&half);
    let plus = w.0[1] == G::i().mul(w1);
    let matrix = if plus {
        let u2 = G::i().mul(&diff);
        [[u1.clone(), u2.neg()], [u2, u1]]
    } else {
        let u2 = G::i().mul(&diff).neg();
        [[u1.clone(), u2.clone()], [u2, u1.neg()]]
    };
    IsometryC::new(x.0.clone(), matrix)
}
