//! Certificates replaying the forcing arguments behind each witness, and an
//! independent checker.
//!
//! A certificate is plain data. The checker trusts nothing but the graph's
//! unit edges: every distance it uses is either a unit edge or the
//! conclusion of an earlier step.

mod check;
mod derive;
mod step;

pub use check::{check_certificate, check_certificate_with, eliminate_degenerate, CheckReport, StepFailure};
pub use derive::derive_certificate;
pub use step::{Certificate, Step};

use thiserror::Error;

use crate::field::Rational;
use crate::witness::{Provenance, WitnessGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("malformed provenance: {0}")]
    MalformedProvenance(String),
    #[error("equilateral premise has zero side")]
    ZeroTriangle,
}

/// What the checker needs from a graph: vertex count, unit edges, the
/// target pair and its claimed value, and the provenance tree.
pub trait Replayable {
    fn vertex_count(&self) -> usize;
    fn unit_edges(&self) -> &[[usize; 2]];
    fn target(&self) -> [usize; 2];
    fn target_value(&self) -> &Rational;
    fn provenance(&self) -> &Provenance;
}

impl Replayable for WitnessGraph {
    fn vertex_count(&self) -> usize {
        self.points.len()
    }
    fn unit_edges(&self) -> &[[usize; 2]] {
        &self.unit_edges
    }
    fn target(&self) -> [usize; 2] {
        self.target
    }
    fn target_value(&self) -> &Rational {
        &self.dsq
    }
    fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{int, rat};
    use crate::serde_rational::Q;
    use crate::witness::{build, gadget_double, plan_derivation, BuildOptions, DerivationTree};

    fn certify(p: u64, q: u64) -> (WitnessGraph, Certificate) {
        let opts = BuildOptions::default();
        let g = build(&plan_derivation(p, q, &opts.plan).unwrap(), &opts).unwrap();
        let c = derive_certificate(&g).unwrap();
        (g, c)
    }

    #[test]
    fn unit_is_a_single_conclusion() {
        let (g, c) = certify(1, 1);
        assert_eq!(c.steps, vec![Step::Conclude { pair: g.target, value: Q(int(1)) }]);
        assert!(check_certificate(&g, &c).passed);
    }

    #[test]
    fn double_forces_four() {
        let opts = BuildOptions::default();
        let g = gadget_double(DerivationTree::unit(), &opts).unwrap();
        let c = derive_certificate(&g).unwrap();
        let Step::CmForce { expected_polynomial, admissible_roots, .. } = &c.steps[c.steps.len() - 2] else {
            panic!("{:?}", c.steps)
        };
        // 3 (t - 4)^2
        assert_eq!(expected_polynomial, &[int(48), int(-24), int(3)].map(Q).to_vec());
        assert_eq!(admissible_roots, &vec![Q(int(4))]);
        assert_eq!(c.steps.last(), Some(&Step::Conclude { pair: g.target, value: Q(int(4)) }));
        let r = check_certificate(&g, &c);
        assert!(r.passed, "{:?}", r.failures);
    }

    #[test]
    fn sqrt3_eliminates_collapse() {
        let (g, c) = certify(3, 1);
        let kinds: Vec<_> = c.steps.iter().map(Step::kind).collect();
        assert_eq!(kinds, ["cm_force", "cm_force", "eliminate_degenerate", "conclude"]);
        let Step::CmForce { admissible_roots, .. } = &c.steps[0] else { unreachable!() };
        assert_eq!(admissible_roots, &vec![Q(int(0)), Q(int(3))]);
        assert!(check_certificate(&g, &c).passed);
    }

    #[test]
    fn small_targets_replay() {
        for (p, q) in [(2, 1), (4, 1), (5, 1), (1, 4), (3, 4), (7, 3)] {
            let (g, c) = certify(p, q);
            let r = check_certificate_with(&g, &c, crate::exec::Execution::Sequential);
            assert!(r.passed, "{p}/{q}: {:?}", r.failures);
            assert_eq!(r, check_certificate(&g, &c));
        }
    }

    #[test]
    fn tampering_fails() {
        let (g, c) = certify(3, 1);
        let mut bad = c.clone();
        if let Step::Conclude { value, .. } = bad.steps.last_mut().unwrap() {
            *value = Q(int(2));
        }
        assert!(!check_certificate(&g, &bad).passed);

        let mut bad = c.clone();
        bad.steps.remove(2);
        let r = check_certificate(&g, &bad);
        assert!(!r.passed);
        assert_eq!(r.failures[0].kind, "conclude");

        let mut bad = c.clone();
        if let Step::CmForce { expected_polynomial, .. } = &mut bad.steps[0] {
            expected_polynomial[1] = Q(rat(1, 2));
        }
        assert_eq!(check_certificate(&g, &bad).failures[0].kind, "cm_force");

        let mut cut = g.clone();
        cut.unit_edges.pop();
        assert!(!check_certificate(&cut, &c).passed);
    }

    #[test]
    fn elimination_rule() {
        let alts = [int(0), int(3)];
        assert_eq!(eliminate_degenerate(&int(1), &int(1), &alts), Ok(true));
        assert_eq!(eliminate_degenerate(&int(1), &int(3), &alts), Ok(false));
        assert_eq!(eliminate_degenerate(&int(0), &int(1), &alts), Err(ReplayError::ZeroTriangle));
    }

    #[test]
    fn certificate_json_round_trip() {
        let (_, c) = certify(2, 1);
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"kind\":\"cm_force\""));
        assert_eq!(serde_json::from_str::<Certificate>(&s).unwrap(), c);
    }
}
