use num_traits::Zero;

use super::step::{Certificate, Step};
use super::{ReplayError, Replayable};
use crate::cayley_menger::{cm_det_symbolic, forced_roots, DistanceMatrix};
use crate::field::rational::{int, Rational};
use crate::serde_rational::Q;
use crate::witness::{GadgetKind, Provenance};

/// Walks the provenance tree bottom-up, emitting each gadget's step pattern.
pub fn derive_certificate<G: Replayable + ?Sized>(g: &G) -> Result<Certificate, ReplayError> {
    let mut steps = Vec::new();
    walk(g.provenance(), &mut steps)?;
    let [x, y] = g.target();
    let last = Step::Conclude { pair: [x, y], value: Q(g.target_value().clone()) };
    if steps.last() != Some(&last) {
        steps.push(last);
    }
    Ok(Certificate { steps })
}

fn bad(msg: impl Into<String>) -> ReplayError {
    ReplayError::MalformedProvenance(msg.into())
}

fn label(p: &Provenance, name: &str) -> Result<usize, ReplayError> {
    p.label(name).ok_or_else(|| bad(format!("{:?} node lacks label {name}", p.kind)))
}

fn expect_children(p: &Provenance, n: usize) -> Result<(), ReplayError> {
    if p.children.len() == n {
        Ok(())
    } else {
        Err(bad(format!("{:?} node has {} children, expected {n}", p.kind, p.children.len())))
    }
}

/// CM step over `points` with the unknown between the first and last
/// point; `dist(i, j)` gives the known squared distance for `i < j`.
pub(crate) fn cm_step(points: Vec<usize>, dist: impl Fn(usize, usize) -> Rational) -> Result<Step, ReplayError> {
    let m = points.len();
    let unknown = [0, m - 1];
    let dm = DistanceMatrix::from_fn(m, Some((0, m - 1)), &dist).map_err(|e| bad(e.to_string()))?;
    let poly = cm_det_symbolic(&dm).map_err(|e| bad(e.to_string()))?;
    let roots = forced_roots(&poly).map_err(|e| bad(e.to_string()))?;
    let distances = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| match (i.min(j), i.max(j)) {
                    (a, b) if a == b => Some(Q(Rational::zero())),
                    (0, b) if b == m - 1 => None,
                    (a, b) => Some(Q(dist(a, b))),
                })
                .collect()
        })
        .collect();
    Ok(Step::CmForce {
        points,
        distances,
        unknown,
        expected_polynomial: poly.coeffs().iter().cloned().map(Q).collect(),
        admissible_roots: roots.into_iter().map(|r| Q(r.value)).collect(),
    })
}

fn table(pairs: &[((usize, usize), Rational)]) -> impl Fn(usize, usize) -> Rational + '_ {
    move |i, j| {
        pairs
            .iter()
            .find(|(k, _)| *k == (i, j))
            .map(|(_, v)| v.clone())
            .expect("pair tabulated")
    }
}

fn walk(p: &Provenance, steps: &mut Vec<Step>) -> Result<(), ReplayError> {
    for c in &p.children {
        walk(c, steps)?;
    }
    let d = &p.dsq;
    let conclude = |steps: &mut Vec<Step>, x, y| steps.push(Step::Conclude { pair: [x, y], value: Q(d.clone()) });
    match &p.kind {
        GadgetKind::Unit => expect_children(p, 0),
        GadgetKind::SqrtChain { .. } | GadgetKind::RationalComposite { .. } | GadgetKind::ComplexPositive => {
            expect_children(p, 1)?;
            if p.children[0].dsq != *d || p.children[0].pair() != p.pair() {
                return Err(bad("wrapper child does not force the same pair"));
            }
            Ok(())
        }
        GadgetKind::Sqrt3 => {
            expect_children(p, 11)?;
            let [x, y, yt, p1, p2, pt1, pt2] =
                ["x", "y", "yt", "p1", "p2", "pt1", "pt2"].map(|l| label(p, l));
            let (x, y, yt, p1, p2, pt1, pt2) = (x?, y?, yt?, p1?, p2?, pt1?, pt2?);
            let c = d / int(3);
            steps.push(cm_step(vec![x, p1, p2, y], |_, _| c.clone())?);
            steps.push(cm_step(vec![x, pt1, pt2, yt], |_, _| c.clone())?);
            steps.push(Step::EliminateDegenerate {
                collapsed: [x, y],
                triple: [x, p1, p2],
                side_sq: Q(c.clone()),
                witness: yt,
                collapse_value: Q(c.clone()),
                alternatives: vec![Q(Rational::zero()), Q(d.clone())],
            });
            conclude(steps, x, y);
            Ok(())
        }
        GadgetKind::Double => {
            expect_children(p, 9)?;
            let [x, y, p1, p2, p3] = ["x", "y", "p1", "p2", "p3"].map(|l| label(p, l));
            let (x, y, p1, p2, p3) = (x?, y?, p1?, p2?, p3?);
            let c = d / int(4);
            let c3 = &c * int(3);
            // local order x, p1, p2, p3, y
            let t = [
                ((0, 1), c.clone()),
                ((0, 2), c.clone()),
                ((0, 3), c3.clone()),
                ((1, 2), c.clone()),
                ((1, 3), c.clone()),
                ((1, 4), c.clone()),
                ((2, 3), c.clone()),
                ((2, 4), c3),
                ((3, 4), c.clone()),
            ];
            steps.push(cm_step(vec![x, p1, p2, p3, y], table(&t))?);
            conclude(steps, x, y);
            Ok(())
        }
        GadgetKind::Pyth => {
            expect_children(p, 5)?;
            let [x, y, p1, p2] = ["x", "y", "p1", "p2"].map(|l| label(p, l));
            let (x, y, p1, p2) = (x?, y?, p1?, p2?);
            let b = p.children[0].dsq.clone();
            let a = p.children[2].dsq.clone();
            if &a - &b != *d {
                return Err(bad("pyth children do not match a^2 - b^2"));
            }
            // local order x, p1, p2, y
            let t = [
                ((0, 1), b.clone()),
                ((0, 2), b.clone()),
                ((1, 2), &b * int(4)),
                ((1, 3), a.clone()),
                ((2, 3), a),
            ];
            steps.push(cm_step(vec![x, p1, p2, y], table(&t))?);
            conclude(steps, x, y);
            Ok(())
        }
        GadgetKind::Divide { k, e } => {
            expect_children(p, 7)?;
            let [x, y, z, xt, yt] = ["x", "y", "z", "xt", "yt"].map(|l| label(p, l));
            let (x, y, z, xt, yt) = (x?, y?, z?, xt?, yt?);
            let (k, e) = (int(*k as i64), int(*e as i64));
            let a = Q(e.clone());
            let b = Q((&k - int(1)) * &e);
            steps.push(Step::RatioStep { z, x, xt, a: a.clone(), b: b.clone() });
            steps.push(Step::RatioStep { z, x: y, xt: yt, a, b });
            steps.push(Step::RatioCompose { pair: [x, y], via: [xt, yt], z, scale: Q(int(1) / &k) });
            let child = p.children[6].dsq.clone();
            steps.push(Step::KnownDistance { pair: [xt, yt], value: Q(child) });
            conclude(steps, x, y);
            Ok(())
        }
        GadgetKind::ComplexNegative => {
            expect_children(p, 5)?;
            let [x, y, a, b] = ["x", "y", "a", "b"].map(|l| label(p, l));
            let (x, y, a, b) = (x?, y?, a?, b?);
            let s = d.clone();
            // local order X, A, B, Y
            let t = [
                ((0, 1), &s * int(-4)),
                ((0, 2), &s * int(-4)),
                ((1, 2), &s * int(-16)),
                ((1, 3), &s * int(-3)),
                ((2, 3), &s * int(-3)),
            ];
            steps.push(cm_step(vec![x, a, b, y], table(&t))?);
            steps.push(Step::Conclude { pair: [x, y], value: Q(s) });
            Ok(())
        }
        GadgetKind::ComplexNull => {
            expect_children(p, 5)?;
            let [x, y, a, b] = ["x", "y", "a", "b"].map(|l| label(p, l));
            let (x, y, a, b) = (x?, y?, a?, b?);
            let t = [
                ((0, 1), int(1)),
                ((0, 2), int(1)),
                ((1, 2), int(4)),
                ((1, 3), int(3)),
                ((2, 3), int(-1)),
            ];
            steps.push(cm_step(vec![x, a, b, y], table(&t))?);
            steps.push(Step::Distinct { pair: [x, y], anchor: a, values: [Q(int(1)), Q(int(3))] });
            steps.push(Step::Conclude { pair: [x, y], value: Q(Rational::zero()) });
            Ok(())
        }
    }
}
