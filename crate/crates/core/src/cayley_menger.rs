//! Cayley–Menger determinants: from points, from squared-distance matrices
//! with one unknown entry `t`, and the symbolic forcing identities.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{bareiss_det, Field, MPoly, Poly, Ring};
use crate::exec::{self, Execution};
use crate::field::rational::{int, rational_sqrt, Rational};
use crate::field::ConstructibleReal;
use crate::geometry::{bordered_coordinate_det, GeometryError, PointR};

/// Polynomial in the unknown squared distance `t` with rational coefficients.
pub type CMPolynomial = Poly<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CMError {
    #[error("more than one unknown cell")]
    MultipleUnknowns,
    #[error("no unknown cell")]
    MissingUnknown,
    #[error("matrix is not symmetric")]
    AsymmetricMatrix,
    #[error("diagonal entry is not a known zero")]
    NonzeroDiagonal,
    #[error("matrix is not square or has fewer than two points")]
    BadShape,
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("rational roots are only extracted up to degree 2, got {0}")]
    DegreeTooHigh(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cell<F> {
    Known(F),
    Unknown,
}

/// Symmetric squared-distance matrix with zero diagonal and at most one
/// unknown (mirrored) off-diagonal pair.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix<F = Rational> {
    cells: Vec<Vec<Cell<F>>>,
    unknown: Option<(usize, usize)>,
}

impl<F: Field> DistanceMatrix<F> {
    pub fn new(cells: Vec<Vec<Cell<F>>>) -> Result<Self, CMError> {
        let m = cells.len();
        if m < 2 || cells.iter().any(|r| r.len() != m) {
            return Err(CMError::BadShape);
        }
        let mut unknown = None;
        #[allow(clippy::needless_range_loop)]
        for i in 0..m {
            if cells[i][i] != Cell::Known(F::zero()) {
                return Err(CMError::NonzeroDiagonal);
            }
            for j in i + 1..m {
                if cells[i][j] != cells[j][i] {
                    return Err(CMError::AsymmetricMatrix);
                }
                if cells[i][j] == Cell::Unknown {
                    if unknown.is_some() {
                        return Err(CMError::MultipleUnknowns);
                    }
                    unknown = Some((i, j));
                }
            }
        }
        Ok(DistanceMatrix { cells, unknown })
    }

    /// Builds from the upper-triangle values `dist(i, j)`, with `t` at `unknown`.
    pub fn from_fn(m: usize, unknown: Option<(usize, usize)>, dist: impl Fn(usize, usize) -> F) -> Result<Self, CMError> {
        let key = unknown.map(|(a, b)| (a.min(b), a.max(b)));
        let cells = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| match (i.cmp(&j), key) {
                        (std::cmp::Ordering::Equal, _) => Cell::Known(F::zero()),
                        (_, Some(k)) if k == (i.min(j), i.max(j)) => Cell::Unknown,
                        _ => Cell::Known(dist(i.min(j), i.max(j))),
                    })
                    .collect()
            })
            .collect();
        Self::new(cells)
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn unknown(&self) -> Option<(usize, usize)> {
        self.unknown
    }

    pub fn cell(&self, i: usize, j: usize) -> &Cell<F> {
        &self.cells[i][j]
    }

    /// Replaces the unknown cell by `t0`.
    pub fn substitute(&self, t0: &F) -> Self {
        let cells = self
            .cells
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| match c {
                        Cell::Unknown => Cell::Known(t0.clone()),
                        k => k.clone(),
                    })
                    .collect()
            })
            .collect();
        DistanceMatrix { cells, unknown: None }
    }

    fn bordered<R: Ring>(&self, lift: impl Fn(&Cell<F>) -> R) -> Vec<Vec<R>> {
        let m = self.size();
        (0..=m)
            .map(|i| {
                (0..=m)
                    .map(|j| match (i, j) {
                        (0, 0) => R::zero(),
                        (0, _) | (_, 0) => R::one(),
                        _ => lift(&self.cells[i - 1][j - 1]),
                    })
                    .collect()
            })
            .collect()
    }

    /// Determinant of the fully known matrix.
    pub fn det(&self) -> Result<F, CMError> {
        if self.unknown.is_some() {
            return Err(CMError::MultipleUnknowns);
        }
        Ok(bareiss_det(self.bordered(|c| match c {
            Cell::Known(v) => v.clone(),
            Cell::Unknown => unreachable!(),
        })))
    }
}

/// Bordered matrix `[[0, 1, ..], [1, phi(c_i, c_j)], ..]` for points.
fn bordered_from_points(points: &[PointR]) -> Result<Vec<Vec<ConstructibleReal>>, CMError> {
    let dim = points.first().map_or(0, PointR::dim);
    if points.len() < 2 {
        return Err(CMError::BadShape);
    }
    if points.iter().any(|p| p.dim() != dim) {
        return Err(GeometryError::DimensionMismatch("points have different dimensions".into()).into());
    }
    let m = points.len();
    Ok((0..=m)
        .map(|i| {
            (0..=m)
                .map(|j| match (i, j) {
                    (0, 0) => ConstructibleReal::zero(),
                    (0, _) | (_, 0) => ConstructibleReal::one(),
                    _ => points[i - 1].dist_sq(&points[j - 1]),
                })
                .collect()
        })
        .collect())
}

pub fn cm_det(points: &[PointR]) -> Result<ConstructibleReal, CMError> {
    Ok(bareiss_det(bordered_from_points(points)?))
}

/// `(bordered coordinate det)^2 = (-1)^(n+1) / 2^n * Δ` for `n + 1` points
/// in dimension `n`.
pub fn cm_coordinate_identity(points: &[PointR]) -> Result<bool, CMError> {
    let lhs = bordered_coordinate_det(points)?.square();
    let n = points[0].dim();
    let sign = if n.is_multiple_of(2) { -1 } else { 1 };
    let factor = Rational::new(sign.into(), (1i64 << n).into());
    Ok(lhs == cm_det(points)?.scale(&factor))
}

/// Expands the determinant as a polynomial in the unknown cell `t`.
pub fn cm_det_symbolic<F: Field>(dm: &DistanceMatrix<F>) -> Result<Poly<F>, CMError> {
    if dm.unknown.is_none() {
        return Err(CMError::MissingUnknown);
    }
    Ok(bareiss_det(dm.bordered(|c| match c {
        Cell::Known(v) => Poly::constant(v.clone()),
        Cell::Unknown => Poly::t(),
    })))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    #[serde(with = "crate::serde_rational")]
    pub value: Rational,
    pub multiplicity: u32,
}

/// Rational roots with multiplicity, ascending. Complete for degree ≤ 2.
pub fn forced_roots(p: &CMPolynomial) -> Result<Vec<Root>, CMError> {
    let deg = p.degree().ok_or(CMError::ZeroPolynomial)?;
    let root = |value, multiplicity| Root { value, multiplicity };
    match deg {
        0 => Ok(Vec::new()),
        1 => Ok(vec![root(-p.coeff(0) / p.coeff(1), 1)]),
        2 => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let disc = &b * &b - int(4) * &a * &c;
            let two_a = int(2) * &a;
            if Zero::is_zero(&disc) {
                return Ok(vec![root(-b / two_a, 2)]);
            }
            let Some(s) = rational_sqrt(&disc) else {
                return Ok(Vec::new());
            };
            let mut rs = [(-&b - &s) / &two_a, (-&b + &s) / &two_a];
            rs.sort();
            Ok(rs.into_iter().map(|v| root(v, 1)).collect())
        }
        d => Err(CMError::DegreeTooHigh(d)),
    }
}

/// Variable indices for the symbolic identities.
pub mod vars {
    pub const T: usize = 0;
    pub const D: usize = 1;
    pub const A: usize = 2;
    pub const B: usize = 3;
    pub const S: usize = 4;
    /// Display names: `t`, `d^2`, `a^2`, `b^2`, `a^2+b^2`.
    pub const NAMES: [&str; 5] = ["t", "D", "A", "B", "S"];
}

/// One symbolic forcing identity: a CM determinant with unknown `t` and
/// its expected factored form.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: &'static str,
    /// Factored form, e.g. `2*d^2*t*(3*d^2-t)`.
    pub display: &'static str,
    pub computed: MPoly,
    pub expected: MPoly,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.computed == self.expected
    }

    /// Expanded computed polynomial with `D = d^2`, `A = a^2`, `B = b^2`,
    /// `S = a^2 + b^2`.
    pub fn expanded(&self) -> String {
        self.computed.render(&vars::NAMES)
    }
}

fn v(i: usize) -> MPoly {
    MPoly::var(i)
}

fn c(n: i64) -> MPoly {
    MPoly::from_i64(n)
}

/// Symbolic CM determinant of `m` points whose pairwise squared distances are
/// `dist(i, j)` for `i < j`.
pub fn symbolic_cm(m: usize, dist: impl Fn(usize, usize) -> MPoly) -> MPoly {
    let rows = (0..=m)
        .map(|i| {
            (0..=m)
                .map(|j| match (i, j) {
                    (0, 0) => MPoly::zero(),
                    (0, _) | (_, 0) => MPoly::one(),
                    _ if i == j => MPoly::zero(),
                    _ => dist((i - 1).min(j - 1), (i - 1).max(j - 1)),
                })
                .collect()
        })
        .collect();
    bareiss_det(rows)
}

/// Looks up `(i, j)` in an upper-triangle table.
fn table(pairs: Vec<((usize, usize), MPoly)>) -> impl Fn(usize, usize) -> MPoly {
    move |i, j| {
        pairs
            .iter()
            .find(|(k, _)| *k == (i, j))
            .map(|(_, p)| p.clone())
            .expect("every pair is tabulated")
    }
}

/// The five forcing identities, checked symbolically in `Q[D, A, B, S][t]`.
pub fn forcing_identities() -> Vec<IdentityCheck> {
    forcing_identities_with(Execution::default())
}

pub fn forcing_identities_with(exec: Execution) -> Vec<IdentityCheck> {
    let builders: [fn() -> IdentityCheck; 5] = [
        identity_sqrt3,
        identity_double,
        identity_pyth,
        identity_case_neg,
        identity_case_null,
    ];
    exec::map(exec, &builders, |f| f())
}

/// Points `x, p1, p2, y`; all pairs `d^2` except `(x, y) = t`.
fn identity_sqrt3() -> IdentityCheck {
    let (t, d) = (v(vars::T), v(vars::D));
    let computed = symbolic_cm(4, |i, j| if (i, j) == (0, 3) { t.clone() } else { d.clone() });
    let expected = c(2).times(&d).times(&t).times(&c(3).times(&d).minus(&t));
    IdentityCheck { name: "sqrt3", display: "2*d^2*t*(3*d^2-t)", computed, expected }
}

/// Points `x, p1, p2, p3, y` of two adjacent equilateral triangles.
fn identity_double() -> IdentityCheck {
    let (t, d) = (v(vars::T), v(vars::D));
    let d3 = c(3).times(&d);
    let computed = symbolic_cm(
        5,
        table(vec![
            ((0, 1), d.clone()),
            ((0, 2), d.clone()),
            ((0, 3), d3.clone()),
            ((0, 4), t.clone()),
            ((1, 2), d.clone()),
            ((1, 3), d.clone()),
            ((1, 4), d.clone()),
            ((2, 3), d.clone()),
            ((2, 4), d3),
            ((3, 4), d.clone()),
        ]),
    );
    let expected = c(3).times(&d.pow(2)).times(&t.minus(&c(4).times(&d)).pow(2));
    IdentityCheck { name: "double", display: "3*d^4*(t-4*d^2)^2", computed, expected }
}

/// Points `x, p1, p2, y` with `x` the midpoint of `p1 p2`.
fn identity_pyth() -> IdentityCheck {
    let (t, a, b) = (v(vars::T), v(vars::A), v(vars::B));
    let computed = symbolic_cm(
        4,
        table(vec![
            ((0, 1), b.clone()),
            ((0, 2), b.clone()),
            ((0, 3), t.clone()),
            ((1, 2), c(4).times(&b)),
            ((1, 3), a.clone()),
            ((2, 3), a.clone()),
        ]),
    );
    let expected = c(-8).times(&b).times(&t.plus(&b).minus(&a).pow(2));
    IdentityCheck { name: "pyth", display: "-8*b^2*(t+b^2-a^2)^2", computed, expected }
}

/// Points `X, A, B, Y` of the negative complex case, `S = a^2 + b^2`.
fn identity_case_neg() -> IdentityCheck {
    let (t, s) = (v(vars::T), v(vars::S));
    let computed = symbolic_cm(
        4,
        table(vec![
            ((0, 1), c(-4).times(&s)),
            ((0, 2), c(-4).times(&s)),
            ((0, 3), t.clone()),
            ((1, 2), c(-16).times(&s)),
            ((1, 3), c(-3).times(&s)),
            ((2, 3), c(-3).times(&s)),
        ]),
    );
    let expected = c(32).times(&s).times(&t.minus(&s).pow(2));
    IdentityCheck { name: "complex_negative", display: "32*(a^2+b^2)*(t-(a^2+b^2))^2", computed, expected }
}

/// Points `X, A, B, Y` of the null complex case.
fn identity_case_null() -> IdentityCheck {
    let t = v(vars::T);
    let computed = symbolic_cm(
        4,
        table(vec![
            ((0, 1), c(1)),
            ((0, 2), c(1)),
            ((0, 3), t.clone()),
            ((1, 2), c(4)),
            ((1, 3), c(3)),
            ((2, 3), c(-1)),
        ]),
    );
    let expected = c(-8).times(&t.pow(2));
    IdentityCheck { name: "complex_null", display: "-8*t^2", computed, expected }
}

/// Symbolic CM determinant of an equilateral triple with side `d^2`, and
/// the expected `-3 d^4`.
pub fn equilateral_identity() -> (MPoly, MPoly) {
    let d = v(vars::D);
    let computed = symbolic_cm(3, |_, _| d.clone());
    (computed, c(-3).times(&d.pow(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat;

    fn p(cs: &[i64]) -> CMPolynomial {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn point_determinants() {
        let pts = |v: &[[i64; 2]]| v.iter().map(|c| PointR::from_ints(c)).collect::<Vec<_>>();
        assert_eq!(cm_det(&pts(&[[0, 0], [1, 0]])).unwrap(), ConstructibleReal::from(2));
        let s3 = ConstructibleReal::from(3).sqrt_adjoin().unwrap();
        let tri = vec![
            PointR::from_ints(&[0, 0]),
            PointR::from_ints(&[2, 0]),
            PointR::xy(ConstructibleReal::one(), s3),
        ];
        assert_eq!(cm_det(&tri).unwrap(), ConstructibleReal::from(-3 * 16));
        assert!(cm_det(&pts(&[[0, 0], [1, 0], [5, 7], [2, 9]])).unwrap().is_zero());
    }

    #[test]
    fn coordinate_identity_examples() {
        let pts = |v: &[[i64; 2]]| v.iter().map(|c| PointR::from_ints(c)).collect::<Vec<_>>();
        let right = pts(&[[0, 0], [1, 0], [0, 1]]);
        assert_eq!(cm_det(&right).unwrap(), ConstructibleReal::from(-4));
        assert!(cm_coordinate_identity(&right).unwrap());
        assert!(cm_coordinate_identity(&pts(&[[0, 0], [1, 1], [2, 2]])).unwrap());
    }

    #[test]
    fn matrix_validation() {
        let ok = DistanceMatrix::from_fn(3, Some((0, 2)), |_, _| int(1)).unwrap();
        assert_eq!(ok.unknown(), Some((0, 2)));
        let mut cells: Vec<Vec<Cell<Rational>>> = (0..3)
            .map(|i| (0..3).map(|j| Cell::Known(int(if i == j { 0 } else { 1 }))).collect())
            .collect();
        cells[0][1] = Cell::Known(int(2));
        assert_eq!(DistanceMatrix::new(cells.clone()), Err(CMError::AsymmetricMatrix));
        cells[1][0] = Cell::Unknown;
        cells[0][1] = Cell::Unknown;
        cells[1][2] = Cell::Unknown;
        cells[2][1] = Cell::Unknown;
        assert_eq!(DistanceMatrix::new(cells), Err(CMError::MultipleUnknowns));
    }

    #[test]
    fn concrete_gadget_polynomials() {
        let sqrt3 = DistanceMatrix::from_fn(4, Some((0, 3)), |_, _| int(1)).unwrap();
        assert_eq!(cm_det_symbolic(&sqrt3).unwrap(), p(&[0, 6, -2]));
        let null = DistanceMatrix::from_fn(4, Some((0, 3)), |i, j| match (i, j) {
            (0, 1) | (0, 2) => int(1),
            (1, 2) => int(4),
            (1, 3) => int(3),
            _ => int(-1),
        })
        .unwrap();
        assert_eq!(cm_det_symbolic(&null).unwrap(), p(&[0, 0, -8]));
        assert_eq!(
            cm_det_symbolic(&sqrt3).unwrap().eval(&rat(7, 3)),
            sqrt3.substitute(&rat(7, 3)).det().unwrap()
        );
    }

    #[test]
    fn roots() {
        let r = forced_roots(&p(&[0, 6, -2])).unwrap();
        assert_eq!(r, vec![Root { value: int(0), multiplicity: 1 }, Root { value: int(3), multiplicity: 1 }]);
        let r = forced_roots(&p(&[48, -24, 3])).unwrap();
        assert_eq!(r, vec![Root { value: int(4), multiplicity: 2 }]);
        let r = forced_roots(&p(&[0, 0, -8])).unwrap();
        assert_eq!(r, vec![Root { value: int(0), multiplicity: 2 }]);
        assert_eq!(forced_roots(&p(&[])), Err(CMError::ZeroPolynomial));
        assert!(forced_roots(&p(&[-2, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn identities_hold() {
        for id in forcing_identities() {
            assert!(id.holds(), "{}: {}", id.name, id.expanded());
        }
        let (got, want) = equilateral_identity();
        assert_eq!(got, want);
    }
}
