//! Finite unit-distance witness sets for rational squared distances.

mod build;
pub(crate) mod graph;
mod planner;
mod recipe;
mod skeleton;

pub use build::{
    build, build_at, build_int, build_rational_sq, build_sqrt_int, build_with_stats, divide_recipe, gadget_divide,
    gadget_double, gadget_pyth, gadget_sqrt3, trivial_unit, BuildOptions, BuildStats,
};
pub use graph::{verify_witness, verify_witness_with, GadgetKind, Provenance, VerificationReport, Violation, WitnessGraph};
pub use planner::{paper_chain_estimate, plan_derivation, plan_int, plan_sqrt_int, PlanOptions, DEFAULT_BUDGET};
pub use recipe::{divide_e, DerivationTree, Node};

use thiserror::Error;

use crate::field::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("points are not at unit distance")]
    NotUnitSeparated,
    #[error("pair is not at squared distance {dsq}")]
    TargetMismatch { dsq: String },
    #[error("need a^2 > b^2, got a^2 = {a_sq}, b^2 = {b_sq}")]
    NotDescending { a_sq: String, b_sq: String },
    #[error("divisor k must be at least 2, got {0}")]
    BadK(u64),
    #[error("squared distance must be positive, got {0}")]
    NonPositive(String),
    #[error("estimated {estimate} unit edges exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("child build failed: {0}")]
    ChildBuildFailed(String),
    #[error("inconsistent recipe: {0}")]
    BadRecipe(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}
