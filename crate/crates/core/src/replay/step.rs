use serde::{Deserialize, Serialize};

use crate::serde_rational::Q;

/// One replayed inference. Indices are graph vertices; values are squared
/// distances unless stated otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    /// The CM determinant of `points` vanishes. `distances` is the full
    /// squared-distance matrix in `points` order with `null` at the unknown
    /// cell `unknown` (local indices). The determinant as a polynomial in
    /// the unknown is `expected_polynomial` (ascending coefficients) and its
    /// rational roots are `admissible_roots`.
    CmForce {
        points: Vec<usize>,
        distances: Vec<Vec<Option<Q>>>,
        unknown: [usize; 2],
        expected_polynomial: Vec<Q>,
        admissible_roots: Vec<Q>,
    },
    /// Rules out the zero root for `collapsed`: if its endpoints coincided,
    /// trilateration against the equilateral `triple` (side `side_sq`)
    /// would force `|collapsed[0] witness|^2 = collapse_value`, which is
    /// not among the established `alternatives`.
    EliminateDegenerate {
        collapsed: [usize; 2],
        triple: [usize; 3],
        side_sq: Q,
        witness: usize,
        collapse_value: Q,
        alternatives: Vec<Q>,
    },
    /// `|z x| = a`, `|x xt| = b`, `|z xt| = a + b` give
    /// `x - z = a / (a + b) (xt - z)`; `a` and `b` are lengths.
    RatioStep { z: usize, x: usize, xt: usize, a: Q, b: Q },
    /// Two ratio facts about `z` with the same `scale` give
    /// `|pair|^2 = scale^2 |via|^2`.
    RatioCompose { pair: [usize; 2], via: [usize; 2], z: usize, scale: Q },
    /// Cites an established squared distance.
    KnownDistance { pair: [usize; 2], value: Q },
    /// Images of `pair` differ: `anchor` is at squared distance `values[0]`
    /// from `pair[0]` and `values[1]` from `pair[1]`, and these differ.
    Distinct { pair: [usize; 2], anchor: usize, values: [Q; 2] },
    /// `|pair|^2 = value` is forced.
    Conclude { pair: [usize; 2], value: Q },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub steps: Vec<Step>,
}

impl Step {
    pub fn kind(&self) -> &'static str {
        match self {
            Step::CmForce { .. } => "cm_force",
            Step::EliminateDegenerate { .. } => "eliminate_degenerate",
            Step::RatioStep { .. } => "ratio_step",
            Step::RatioCompose { .. } => "ratio_compose",
            Step::KnownDistance { .. } => "known_distance",
            Step::Distinct { .. } => "distinct",
            Step::Conclude { .. } => "conclude",
        }
    }
}
