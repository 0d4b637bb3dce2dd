//! Exact arithmetic over towers of real quadratic extensions of the
//! rationals, and a Gaussian layer on top.

mod ast;
mod gauss;
pub(crate) mod interval;
pub mod rational;
mod real;

pub use ast::RadicalAst;
pub use gauss::GaussianConstructible;
pub use rational::Rational;
pub use real::{ConstructibleReal, Generator};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeRadicand,
    #[error("conjugated root occurs inside a nested radicand")]
    ConjugationUnsupported,
    #[error("{0}")]
    Parse(String),
}

/// Arithmetic operation selector for [`field_arith`] and [`gauss_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(
    op: ArithOp,
    x: &ConstructibleReal,
    y: &ConstructibleReal,
) -> Result<ConstructibleReal, FieldError> {
    Ok(match op {
        ArithOp::Add => x.add(y),
        ArithOp::Sub => x.sub(y),
        ArithOp::Mul => x.mul(y),
        ArithOp::Div => x.div(y)?,
    })
}

pub fn gauss_arith(
    op: ArithOp,
    x: &GaussianConstructible,
    y: &GaussianConstructible,
) -> Result<GaussianConstructible, FieldError> {
    Ok(match op {
        ArithOp::Add => x.add(y),
        ArithOp::Sub => x.sub(y),
        ArithOp::Mul => x.mul(y),
        ArithOp::Div => x.div(y)?,
    })
}
