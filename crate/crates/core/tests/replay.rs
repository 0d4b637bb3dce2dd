mod common;

use common::*;

use unitforce::complex::{build_complex, ComplexWitnessGraph};
use unitforce::exec::Execution;
use unitforce::geometry::PointC;
use unitforce::replay::{check_certificate, check_certificate_with, derive_certificate, Replayable, Step};
use unitforce::witness::{build_rational_sq, gadget_sqrt3, BuildOptions, DerivationTree, WitnessGraph};

fn real(p: u64, q: u64) -> WitnessGraph {
    build_rational_sq(p, q, None, &BuildOptions::default()).unwrap()
}

fn complex(y: PointC) -> ComplexWitnessGraph {
    build_complex(&PointC::origin(), &y, &BuildOptions::default()).unwrap()
}

fn fuzz<G: Replayable>(g: &G) -> usize {
    let cert = derive_certificate(g).unwrap();
    assert!(check_certificate(g, &cert).passed);
    let muts = single_field_mutations(&cert);
    for (what, m) in &muts {
        assert!(!check_certificate(g, m).passed, "mutation survived: {what}");
    }
    muts.len()
}

#[test]
fn single_field_mutations_all_fail() {
    let mut total = 0;
    for (p, q) in [(2, 1), (3, 1), (1, 4)] {
        total += fuzz(&real(p, q));
    }
    total += fuzz(&complex(PointC::from_ints(1, 0, 0, 1)));
    total += fuzz(&complex(PointC::from_ints(0, 1, 0, 0)));
    eprintln!("{total} mutations"); assert!(total >= 200, "only {total} mutations");
}

#[test]
fn steps_only_cite_established_pairs() {
    let g = real(3, 4);
    let cert = derive_certificate(&g).unwrap();
    let mut known: std::collections::HashSet<(usize, usize)> =
        g.unit_edges.iter().map(|&[a, b]| (a.min(b), a.max(b))).collect();
    let k = |a: usize, b: usize| (a.min(b), a.max(b));
    for s in &cert.steps {
        match s {
            Step::CmForce { points, distances, .. } => {
                for i in 0..points.len() {
                    for j in i + 1..points.len() {
                        if distances[i][j].is_some() {
                            assert!(known.contains(&k(points[i], points[j])));
                        }
                    }
                }
            }
            Step::KnownDistance { pair, .. } => assert!(known.contains(&k(pair[0], pair[1]))),
            Step::Conclude { pair, .. } => {
                known.insert(k(pair[0], pair[1]));
            }
            _ => {}
        }
    }
}

#[test]
fn derivation_matches_gadget_shapes() {
    let g = gadget_sqrt3(DerivationTree::unit(), &BuildOptions::default()).unwrap();
    let kinds: Vec<&str> = derive_certificate(&g).unwrap().steps.iter().map(Step::kind).collect();
    assert_eq!(kinds, ["cm_force", "cm_force", "eliminate_degenerate", "conclude"]);
    let g = real(1, 4);
    let kinds: Vec<&str> = derive_certificate(&g).unwrap().steps.iter().map(Step::kind).collect();
    let tail = &kinds[kinds.len() - 5..];
    assert_eq!(tail, ["ratio_step", "ratio_step", "ratio_compose", "known_distance", "conclude"]);
}

#[test]
fn modes_agree_and_truncation_fails() {
    let g = real(3, 4);
    let cert = derive_certificate(&g).unwrap();
    assert_eq!(check_certificate_with(&g, &cert, Execution::Sequential), check_certificate_with(&g, &cert, Execution::Parallel));
    for cut in [1, cert.steps.len() / 2] {
        let mut short = cert.clone();
        short.steps.truncate(cert.steps.len() - cut);
        assert!(!check_certificate(&g, &short).passed);
    }
}
