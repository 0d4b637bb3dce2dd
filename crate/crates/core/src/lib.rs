//! Exact construction and verification of finite unit-distance witness
//! configurations in the real and complex plane.

pub mod algebra;
pub mod cayley_menger;
pub mod complex;
pub mod exec;
pub mod field;
pub mod geometry;
pub mod replay;
pub mod serde_rational;
pub mod witness;
