use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::step::{Certificate, Step};
use super::{ReplayError, Replayable};
use crate::algebra::Poly;
use crate::cayley_menger::{cm_det_symbolic, forced_roots, Cell, DistanceMatrix};
use crate::exec::{self, Execution};
use crate::field::rational::{format_rational, Rational};
use crate::serde_rational::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFailure {
    pub step: usize,
    pub kind: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub steps_checked: usize,
    pub failures: Vec<StepFailure>,
}

/// Decides the elimination of the zero alternative: with a nondegenerate
/// equilateral premise, a collapse is refuted iff its forced value is not
/// among the alternatives.
pub fn eliminate_degenerate(side_sq: &Rational, collapse_value: &Rational, alternatives: &[Rational]) -> Result<bool, ReplayError> {
    if side_sq.is_zero() {
        return Err(ReplayError::ZeroTriangle);
    }
    Ok(!alternatives.contains(collapse_value))
}

pub fn check_certificate<G: Replayable + ?Sized>(g: &G, cert: &Certificate) -> CheckReport {
    check_certificate_with(g, cert, Execution::default())
}

type Key = (usize, usize);

fn key(a: usize, b: usize) -> Key {
    (a.min(b), a.max(b))
}

#[derive(Default)]
struct Facts {
    n: usize,
    exact: HashMap<Key, Rational>,
    alternatives: HashMap<Key, Vec<Rational>>,
    ratios: Vec<(usize, usize, usize, Rational)>,
    scaled: HashMap<Key, (Key, Rational)>,
}

type Check<T = ()> = Result<T, String>;

fn fmt(v: &Rational) -> String {
    format_rational(v)
}

impl Facts {
    fn pair(&self, a: usize, b: usize) -> Check<Key> {
        if a >= self.n || b >= self.n {
            return Err(format!("vertex index out of range in ({a}, {b})"));
        }
        if a == b {
            return Err(format!("degenerate pair ({a}, {a})"));
        }
        Ok(key(a, b))
    }

    fn exact(&self, a: usize, b: usize) -> Check<&Rational> {
        let k = self.pair(a, b)?;
        self.exact.get(&k).ok_or_else(|| format!("no established distance for ({a}, {b})"))
    }

    fn expect(&self, a: usize, b: usize, v: &Rational) -> Check {
        let got = self.exact(a, b)?;
        if got == v {
            Ok(())
        } else {
            Err(format!("({a}, {b}) is established as {}, not {}", fmt(got), fmt(v)))
        }
    }

    fn set(&mut self, a: usize, b: usize, v: Rational) -> Check {
        let k = self.pair(a, b)?;
        match self.exact.get(&k) {
            Some(old) if *old != v => Err(format!("({a}, {b}) already established as {}, conflicts with {}", fmt(old), fmt(&v))),
            _ => {
                self.exact.insert(k, v);
                Ok(())
            }
        }
    }
}

/// Polynomial and roots recomputed from a CM step's matrix alone.
type CmRecomputed = Check<(Poly<Rational>, Vec<Rational>)>;

fn recompute_cm(step: &Step) -> Option<CmRecomputed> {
    let Step::CmForce { points, distances, unknown, .. } = step else {
        return None;
    };
    Some((|| {
        let m = points.len();
        if distances.len() != m || distances.iter().any(|r| r.len() != m) {
            return Err("distance matrix shape does not match point list".to_string());
        }
        let cells = distances
            .iter()
            .map(|r| r.iter().map(|c| c.as_ref().map_or(Cell::Unknown, |q| Cell::Known(q.0.clone()))).collect())
            .collect();
        let dm = DistanceMatrix::new(cells).map_err(|e| e.to_string())?;
        if dm.unknown() != Some((unknown[0].min(unknown[1]), unknown[0].max(unknown[1]))) {
            return Err("unknown cell does not match the declared pair".to_string());
        }
        let poly = cm_det_symbolic(&dm).map_err(|e| e.to_string())?;
        let roots = forced_roots(&poly).map_err(|e| e.to_string())?;
        Ok((poly, roots.into_iter().map(|r| r.value).collect()))
    })())
}

type CmKey<'a> = (&'a Vec<Vec<Option<Q>>>, [usize; 2]);

/// Recomputes each distinct CM problem once.
fn recompute_all(steps: &[Step], exec: Execution) -> Vec<Option<CmRecomputed>> {
    let mut index: HashMap<CmKey, usize> = HashMap::new();
    let mut unique: Vec<&Step> = Vec::new();
    let slots: Vec<Option<usize>> = steps
        .iter()
        .map(|s| match s {
            Step::CmForce { distances, unknown, .. } => Some(*index.entry((distances, *unknown)).or_insert_with(|| {
                unique.push(s);
                unique.len() - 1
            })),
            _ => None,
        })
        .collect();
    let results = exec::map(exec, &unique, |s| recompute_cm(s).expect("cm step"));
    slots.into_iter().map(|i| i.map(|i| results[i].clone())).collect()
}

fn rationals(qs: &[Q]) -> Vec<Rational> {
    qs.iter().map(|q| q.0.clone()).collect()
}

fn same_set(a: &[Rational], b: &[Rational]) -> bool {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    a.sort();
    a.dedup();
    b.sort();
    b.dedup();
    a == b
}

/// Replays `cert` against `g`. Determinant work runs through `exec`; the
/// fact pass is sequential.
pub fn check_certificate_with<G: Replayable + ?Sized>(g: &G, cert: &Certificate, exec: Execution) -> CheckReport {
    let recomputed = recompute_all(&cert.steps, exec);
    let mut facts = Facts { n: g.vertex_count(), ..Facts::default() };
    let mut failures = Vec::new();
    for &[a, b] in g.unit_edges() {
        if let Err(reason) = facts.set(a, b, Rational::one()) {
            failures.push(StepFailure { step: 0, kind: "unit_edge".into(), reason });
        }
    }
    for (i, (step, cm)) in cert.steps.iter().zip(recomputed).enumerate() {
        if let Err(reason) = apply(&mut facts, step, cm) {
            failures.push(StepFailure { step: i, kind: step.kind().into(), reason });
        }
    }
    let [x, y] = g.target();
    let concluded = matches!(cert.steps.last(), Some(Step::Conclude { pair, value })
        if key(pair[0], pair[1]) == key(x, y) && value.0 == *g.target_value());
    if !concluded {
        failures.push(StepFailure {
            step: cert.steps.len(),
            kind: "conclude".into(),
            reason: format!("certificate does not end by concluding ({x}, {y}) = {}", fmt(g.target_value())),
        });
    }
    CheckReport { passed: failures.is_empty(), steps_checked: cert.steps.len(), failures }
}

fn apply(f: &mut Facts, step: &Step, cm: Option<CmRecomputed>) -> Check {
    match step {
        Step::CmForce { points, distances, unknown, expected_polynomial, admissible_roots } => {
            let (poly, roots) = cm.expect("recomputed for every cm step")?;
            for (i, &p) in points.iter().enumerate() {
                for &q in &points[i + 1..] {
                    f.pair(p, q)?;
                }
            }
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    if let Some(v) = &distances[i][j] {
                        f.expect(points[i], points[j], &v.0)?;
                    }
                }
            }
            if poly.coeffs() != rationals(expected_polynomial).as_slice() {
                return Err(format!("determinant is {poly}, not the stated polynomial"));
            }
            if !same_set(&roots, &rationals(admissible_roots)) {
                return Err("stated roots differ from the recomputed roots".into());
            }
            let (a, b) = (points[unknown[0]], points[unknown[1]]);
            match roots.as_slice() {
                [v] => f.set(a, b, v.clone()),
                [u, v] if u.is_zero() || v.is_zero() => {
                    let k = f.pair(a, b)?;
                    f.alternatives.insert(k, roots);
                    Ok(())
                }
                [] => Err("determinant has no rational root".into()),
                _ => Err("determinant leaves two nonzero alternatives".into()),
            }
        }
        Step::EliminateDegenerate { collapsed, triple, side_sq, witness, collapse_value, alternatives } => {
            let [x, y] = *collapsed;
            let [t0, p1, p2] = *triple;
            if t0 != x {
                return Err("triple does not start at the collapsed pair".into());
            }
            let k = f.pair(x, y)?;
            let alts = f.alternatives.get(&k).ok_or("collapsed pair has no established alternatives")?;
            let v = match alts.as_slice() {
                [z, v] | [v, z] if z.is_zero() && !v.is_zero() => v.clone(),
                _ => return Err("collapsed pair alternatives are not {v, 0}".into()),
            };
            let s = &side_sq.0;
            for (a, b) in [(x, p1), (x, p2), (p1, p2)] {
                f.expect(a, b, s)?;
            }
            let tri = DistanceMatrix::from_fn(3, None, |_, _| s.clone()).and_then(|m| m.det()).map_err(|e| e.to_string())?;
            if tri.is_zero() {
                return Err(ReplayError::ZeroTriangle.to_string());
            }
            f.expect(y, p1, s)?;
            f.expect(y, p2, s)?;
            f.expect(y, *witness, &collapse_value.0)?;
            let kw = f.pair(x, *witness)?;
            let wa = f.alternatives.get(&kw).ok_or("witness pair has no established alternatives")?;
            let stated = rationals(alternatives);
            if !same_set(wa, &stated) {
                return Err("stated alternatives differ from the established ones".into());
            }
            if !eliminate_degenerate(s, &collapse_value.0, &stated).map_err(|e| e.to_string())? {
                return Err("collapse value is among the alternatives".into());
            }
            f.set(x, y, v)
        }
        Step::RatioStep { z, x, xt, a, b } => {
            let (a, b) = (&a.0, &b.0);
            if !a.is_positive() || !b.is_positive() {
                return Err("ratio lengths must be positive".into());
            }
            let s = a + b;
            f.expect(*z, *x, &(a * a))?;
            f.expect(*x, *xt, &(b * b))?;
            f.expect(*z, *xt, &(&s * &s))?;
            f.ratios.push((*z, *x, *xt, a / s));
            Ok(())
        }
        Step::RatioCompose { pair, via, z, scale } => {
            let has = |p: usize, pt: usize| f.ratios.iter().any(|(rz, rx, rt, l)| rz == z && *rx == p && *rt == pt && *l == scale.0);
            if !has(pair[0], via[0]) || !has(pair[1], via[1]) {
                return Err("missing ratio fact for composition".into());
            }
            let k = f.pair(pair[0], pair[1])?;
            let kv = f.pair(via[0], via[1])?;
            f.scaled.insert(k, (kv, scale.0.clone()));
            Ok(())
        }
        Step::KnownDistance { pair, value } => f.expect(pair[0], pair[1], &value.0),
        Step::Distinct { pair, anchor, values } => {
            f.expect(*anchor, pair[0], &values[0].0)?;
            f.expect(*anchor, pair[1], &values[1].0)?;
            if values[0] == values[1] {
                return Err("anchor distances coincide".into());
            }
            Ok(())
        }
        Step::Conclude { pair, value } => {
            let k = f.pair(pair[0], pair[1])?;
            let v = &value.0;
            if let Some(e) = f.exact.get(&k) {
                return if e == v { Ok(()) } else { Err(format!("established value is {}, not {}", fmt(e), fmt(v))) };
            }
            let (via, scale) = f.scaled.get(&k).cloned().ok_or("no established distance to conclude from")?;
            let base = f.exact(via.0, via.1)?.clone();
            let got = &scale * &scale * base;
            if got != *v {
                return Err(format!("scaled distance is {}, not {}", fmt(&got), fmt(v)));
            }
            f.set(pair[0], pair[1], v.clone())
        }
    }
}
