//! Shared oracles and generators for the integration tests.
#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use unitforce::field::rational::{int, rat};
use unitforce::field::{ConstructibleReal as CR, GaussianConstructible as G, Rational};
use unitforce::geometry::{IsometryC, PointC, PointR};
use unitforce::replay::{Certificate, Step};
use unitforce::serde_rational::Q;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_rational(r: &mut impl Rng, span: i64) -> Rational {
    rat(r.gen_range(-span..=span), r.gen_range(1..=6))
}

pub fn rand_coords(r: &mut impl Rng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| rand_rational(r, 12)).collect()
}

/// Cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut acc = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * laplace_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

pub fn sq_dist(p: &[Rational], q: &[Rational]) -> Rational {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// Bordered squared-distance matrix determinant by cofactor expansion.
pub fn cm_oracle(points: &[Vec<Rational>]) -> Rational {
    let m = points.len();
    let mut rows = vec![std::iter::once(Rational::zero()).chain((0..m).map(|_| Rational::one())).collect::<Vec<_>>()];
    for p in points {
        let mut row = vec![Rational::one()];
        row.extend(points.iter().map(|q| sq_dist(p, q)));
        rows.push(row);
    }
    laplace_det(&rows)
}

pub fn coord_det_oracle(points: &[Vec<Rational>]) -> Rational {
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| p.iter().cloned().chain(std::iter::once(Rational::one())).collect())
        .collect();
    laplace_det(&rows)
}

pub fn to_point(cs: &[Rational]) -> PointR {
    PointR::from_rationals(cs)
}

pub fn sqrt(n: i64) -> CR {
    CR::from(n).sqrt_adjoin().unwrap()
}

/// Random element of `Q(sqrt 2, sqrt 3)(i)`.
pub fn rand_gaussian(r: &mut impl Rng) -> G {
    let part = |r: &mut ChaCha8Rng| {
        CR::from(rand_rational(r, 5)) + sqrt(2).scale(&rand_rational(r, 3)) + sqrt(3).scale(&rand_rational(r, 2))
    };
    let mut inner = rng(r.gen());
    G::new(part(&mut inner), part(&mut inner))
}

pub fn rand_point_c(r: &mut impl Rng) -> PointC {
    PointC::new(rand_gaussian(r), rand_gaussian(r))
}

fn rand_gaussian_rational(r: &mut impl Rng) -> G {
    G::new(CR::from(rand_rational(r, 6)), CR::from(rand_rational(r, 6)))
}

/// Random complex isometry: a Cayley-parametrised rotation, optionally
/// composed with a reflection, and a random translation.
pub fn rand_isometry_c(r: &mut impl Rng) -> IsometryC {
    loop {
        let u = rand_gaussian_rational(r);
        let one = G::one();
        let den = one.add(&u.square());
        let Ok(inv) = den.inv() else { continue };
        let c = one.sub(&u.square()).mul(&inv);
        let s = u.scale_rational(&int(2)).mul(&inv);
        let flip = r.gen_bool(0.5);
        let m = if flip { [[c.clone(), s.clone()], [s, c.neg()]] } else { [[c.clone(), s.neg()], [s, c]] };
        let t = [rand_gaussian(r), rand_gaussian(r)];
        return IsometryC::new(t, m).expect("rotation or reflection is orthogonal");
    }
}

fn bump(q: &mut Q) {
    q.0 += Rational::one();
}

/// Every single-field value mutation of `cert`: each rational in each step
/// is shifted by one, null matrix cells are filled, and unknown cells moved.
pub fn single_field_mutations(cert: &Certificate) -> Vec<(String, Certificate)> {
    let mut out = Vec::new();
    for (i, step) in cert.steps.iter().enumerate() {
        let mut push = |what: String, f: &dyn Fn(&mut Step)| {
            let mut c = cert.clone();
            f(&mut c.steps[i]);
            out.push((format!("step {i} {}: {what}", step.kind()), c));
        };
        match step {
            Step::CmForce { distances, expected_polynomial, admissible_roots, .. } => {
                let m = distances.len();
                for a in 0..m {
                    for b in a + 1..m {
                        push(format!("distance ({a},{b})"), &|s| {
                            if let Step::CmForce { distances, .. } = s {
                                let cell = match &distances[a][b] {
                                    Some(q) => Q(&q.0 + Rational::one()),
                                    None => Q(Rational::zero()),
                                };
                                distances[a][b] = Some(cell.clone());
                                distances[b][a] = Some(cell);
                            }
                        });
                    }
                }
                for k in 0..expected_polynomial.len() {
                    push(format!("coefficient {k}"), &|s| {
                        if let Step::CmForce { expected_polynomial, .. } = s {
                            bump(&mut expected_polynomial[k]);
                        }
                    });
                }
                for k in 0..admissible_roots.len() {
                    push(format!("root {k}"), &|s| {
                        if let Step::CmForce { admissible_roots, .. } = s {
                            bump(&mut admissible_roots[k]);
                        }
                    });
                }
                push("unknown cell".into(), &|s| {
                    if let Step::CmForce { unknown, .. } = s {
                        unknown[1] -= 1;
                    }
                });
            }
            Step::EliminateDegenerate { alternatives, .. } => {
                push("side".into(), &|s| {
                    if let Step::EliminateDegenerate { side_sq, .. } = s {
                        bump(side_sq);
                    }
                });
                push("collapse value".into(), &|s| {
                    if let Step::EliminateDegenerate { collapse_value, .. } = s {
                        bump(collapse_value);
                    }
                });
                for k in 0..alternatives.len() {
                    push(format!("alternative {k}"), &|s| {
                        if let Step::EliminateDegenerate { alternatives, .. } = s {
                            bump(&mut alternatives[k]);
                        }
                    });
                }
            }
            Step::RatioStep { .. } => {
                push("a".into(), &|s| {
                    if let Step::RatioStep { a, .. } = s {
                        bump(a);
                    }
                });
                push("b".into(), &|s| {
                    if let Step::RatioStep { b, .. } = s {
                        bump(b);
                    }
                });
            }
            Step::RatioCompose { .. } => push("scale".into(), &|s| {
                if let Step::RatioCompose { scale, .. } = s {
                    bump(scale);
                }
            }),
            Step::KnownDistance { .. } => push("value".into(), &|s| {
                if let Step::KnownDistance { value, .. } = s {
                    bump(value);
                }
            }),
            Step::Distinct { .. } => {
                for k in 0..2 {
                    push(format!("value {k}"), &|s| {
                        if let Step::Distinct { values, .. } = s {
                            bump(&mut values[k]);
                        }
                    });
                }
            }
            Step::Conclude { .. } => push("value".into(), &|s| {
                if let Step::Conclude { value, .. } = s {
                    bump(value);
                }
            }),
        }
    }
    out
}
