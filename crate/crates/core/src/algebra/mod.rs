//! Small commutative-algebra toolkit: a ring abstraction, fraction-free
//! determinants, and dense univariate / sparse multivariate polynomials.

mod det;
mod mpoly;
mod poly;
mod ring;

pub use det::bareiss_det;
pub use mpoly::MPoly;
pub use poly::Poly;
pub use ring::{Field, Ring};
