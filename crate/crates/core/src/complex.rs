//! Witness sets in the complex plane `C^2` for pairs whose `psi` value is
//! rational, split by the sign of that value.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{self, Execution};
use crate::field::rational::{format_rational, int, Rational};
use crate::field::{ConstructibleReal as CR, FieldError, GaussianConstructible as G, Generator};
use crate::geometry::{apply_isometry, build_isometry_complex, build_isometry_null, psi, GeometryError, IsometryC, PointC};
use crate::replay::Replayable;
use crate::witness::graph::{dedup_points, dot, duplicate_pairs, normalize_edges, structural_violations};
use crate::witness::{build_rational_sq, BuildOptions, GadgetKind, Provenance, VerificationReport, Violation, WitnessError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("psi of the target pair is not rational: {0}")]
    IrrationalPsi(String),
    #[error("target points coincide")]
    CoincidentPoints,
    #[error("case needs a negative psi, got {0}")]
    WrongSign(String),
    #[error("psi {psi} does not belong to the {case:?} case")]
    WrongCase { case: CaseTag, psi: String },
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    Positive,
    Negative,
    Null,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexWitnessGraph {
    pub points: Vec<PointC>,
    pub unit_edges: Vec<[usize; 2]>,
    pub target: [usize; 2],
    #[serde(with = "crate::serde_rational")]
    pub psi_target: Rational,
    pub case_tag: CaseTag,
    pub provenance: Provenance,
}

impl ComplexWitnessGraph {
    pub fn x(&self) -> &PointC {
        &self.points[self.target[0]]
    }

    pub fn y(&self) -> &PointC {
        &self.points[self.target[1]]
    }

    /// Image under a complex isometry; every `psi` value is preserved.
    pub fn transport(&self, h: &IsometryC) -> ComplexWitnessGraph {
        ComplexWitnessGraph {
            points: self.points.iter().map(|p| apply_isometry(h, p)).collect(),
            ..self.clone()
        }
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut gs: Vec<Generator> = self
            .points
            .iter()
            .flat_map(|p| p.0.iter().flat_map(|z| z.re.generators().into_iter().chain(z.im.generators())))
            .collect();
        gs.sort();
        gs.dedup();
        gs
    }

    /// Graphviz source laid out by the real parts of the coordinates.
    pub fn to_dot(&self) -> String {
        let pos = self.points.iter().map(|p| (p.0[0].re.to_f64(), p.0[1].re.to_f64()));
        dot(pos, &self.unit_edges, self.target, &format!("psi {}", format_rational(&self.psi_target)))
    }

    pub fn conjugate(&self, g: &Generator) -> Result<ComplexWitnessGraph, FieldError> {
        let points = self.points.iter().map(|p| p.conjugate(g)).collect::<Result<_, _>>()?;
        Ok(ComplexWitnessGraph { points, ..self.clone() })
    }
}

impl Replayable for ComplexWitnessGraph {
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
        &self.psi_target
    }
    fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

pub fn verify_complex(g: &ComplexWitnessGraph) -> VerificationReport {
    verify_complex_with(g, Execution::default())
}

pub fn verify_complex_with(g: &ComplexWitnessGraph, exec: Execution) -> VerificationReport {
    let n = g.points.len();
    let mut violations = structural_violations(n, &g.unit_edges, g.target);
    let bad = exec::map(exec, &g.unit_edges, |&e| {
        if e[0] >= n || e[1] >= n {
            return None;
        }
        let d = psi(&g.points[e[0]], &g.points[e[1]]);
        (d != G::one()).then(|| Violation::EdgeNotUnit { edge: e, squared_length: d.to_string() })
    });
    violations.extend(bad.into_iter().flatten());
    if g.target[0] < n && g.target[1] < n {
        let d = psi(g.x(), g.y());
        if d != G::real(CR::from(g.psi_target.clone())) {
            violations.push(Violation::TargetMismatch { expected: format_rational(&g.psi_target), actual: d.to_string() });
        }
    }
    for (first, second) in duplicate_pairs(exec, &g.points, PointC::lex_cmp) {
        violations.push(Violation::DuplicatePoint { first, second });
    }
    VerificationReport { violations }
}

fn rational_psi(x: &PointC, y: &PointC) -> Result<Rational, ComplexError> {
    if x == y {
        return Err(ComplexError::CoincidentPoints);
    }
    let d = psi(x, y);
    d.as_rational().cloned().ok_or_else(|| ComplexError::IrrationalPsi(d.to_string()))
}

/// Dispatches on the sign of `psi(X, Y)`.
pub fn build_complex(x: &PointC, y: &PointC, opts: &BuildOptions) -> Result<ComplexWitnessGraph, ComplexError> {
    let v = rational_psi(x, y)?;
    match v.cmp(&int(0)) {
        std::cmp::Ordering::Greater => build_case_pos(x, y, opts),
        std::cmp::Ordering::Less => build_case_neg(x, y, opts),
        std::cmp::Ordering::Equal => build_case_null(x, y, opts),
    }
}

fn u64_parts(v: &Rational) -> Result<(u64, u64), ComplexError> {
    let conv = |n: &num_bigint::BigInt| u64::try_from(n).map_err(|_| WitnessError::NonPositive(format_rational(v)));
    Ok((conv(v.numer())?, conv(v.denom())?))
}

/// Positive case: a real witness placed on the canonical pair and carried
/// onto `(X, Y)` by a complex isometry.
pub fn build_case_pos(x: &PointC, y: &PointC, opts: &BuildOptions) -> Result<ComplexWitnessGraph, ComplexError> {
    let v = rational_psi(x, y)?;
    if v <= int(0) {
        return Err(ComplexError::WrongCase { case: CaseTag::Positive, psi: format_rational(&v) });
    }
    let (p, q) = u64_parts(&v)?;
    let real = build_rational_sq(p, q, None, opts)?;
    let s = CR::from(v.clone()).sqrt_adjoin()?;
    let h = build_isometry_complex(x, y, &s)?;
    let points: Vec<PointC> = exec::map(opts.exec, &real.points, |p| apply_isometry(&h, &PointC::from_real(p)));
    let provenance = wrap(GadgetKind::ComplexPositive, v.clone(), real.target, vec![], vec![real.provenance]);
    Ok(ComplexWitnessGraph {
        points,
        unit_edges: real.unit_edges,
        target: real.target,
        psi_target: v,
        case_tag: CaseTag::Positive,
        provenance,
    })
}

fn wrap(kind: GadgetKind, dsq: Rational, target: [usize; 2], extra: Vec<(&str, usize)>, children: Vec<Provenance>) -> Provenance {
    let mut labels = BTreeMap::from([("x".to_string(), target[0]), ("y".to_string(), target[1])]);
    labels.extend(extra.into_iter().map(|(k, v)| (k.to_string(), v)));
    Provenance { kind, dsq, labels, children }
}

/// Merges five sub-witnesses on the anchor pairs `X-A, X-B, A-B, A-Y, B-Y`
/// (in that order) into one graph forcing `(X, Y)`.
fn assemble(
    anchors: [&PointC; 4],
    subs: Vec<ComplexWitnessGraph>,
    kind: GadgetKind,
    psi_target: Rational,
    case_tag: CaseTag,
    exec: Execution,
) -> ComplexWitnessGraph {
    let mut all: Vec<PointC> = anchors.iter().map(|&p| p.clone()).collect();
    let mut edges = Vec::new();
    let mut children = Vec::new();
    for s in subs {
        let off = all.len();
        all.extend(s.points);
        edges.extend(s.unit_edges.iter().map(|[a, b]| [a + off, b + off]));
        let mut p = s.provenance;
        p.remap(&|i| i + off);
        children.push(p);
    }
    let (points, map) = dedup_points(exec, all, PointC::lex_cmp);
    let unit_edges = normalize_edges(edges, &map);
    for c in &mut children {
        c.remap(&|i| map[i]);
    }
    let [x, y, a, b] = [0, 1, 2, 3].map(|i| map[i]);
    ComplexWitnessGraph {
        points,
        unit_edges,
        target: [x, y],
        psi_target: psi_target.clone(),
        case_tag,
        provenance: wrap(kind, psi_target, [x, y], vec![("a", a), ("b", b)], children),
    }
}

fn sub_builds(
    pairs: Vec<(PointC, PointC)>,
    opts: &BuildOptions,
) -> Result<Vec<ComplexWitnessGraph>, ComplexError> {
    exec::map(opts.exec, &pairs, |(p, q)| build_complex(p, q, opts)).into_iter().collect()
}

/// Anchors `A = (-2ib, 2ia)`, `B = (2ib, -2ia)` relative to `X`, where
/// `Y - X = (a, b)`.
pub fn case_neg_anchors(x: &PointC, y: &PointC) -> (PointC, PointC) {
    let w = y.sub(x);
    let two_i = G::i().scale_rational(&int(2));
    let a = PointC::new(two_i.mul(&w.0[1]).neg(), two_i.mul(&w.0[0]));
    (x.add(&a), x.sub(&a))
}

/// Negative case: `psi(X, Y) = a^2 + b^2 < 0`.
pub fn build_case_neg(x: &PointC, y: &PointC, opts: &BuildOptions) -> Result<ComplexWitnessGraph, ComplexError> {
    let v = rational_psi(x, y)?;
    if v >= int(0) {
        return Err(ComplexError::WrongSign(format_rational(&v)));
    }
    let (a, b) = case_neg_anchors(x, y);
    let subs = sub_builds(
        vec![
            (x.clone(), a.clone()),
            (x.clone(), b.clone()),
            (a.clone(), b.clone()),
            (a.clone(), y.clone()),
            (b.clone(), y.clone()),
        ],
        opts,
    )?;
    Ok(assemble([x, y, &a, &b], subs, GadgetKind::ComplexNegative, v, CaseTag::Negative, opts.exec))
}

/// Anchors `h(-1, 0)` and `h(1, 0)` for the isometry `h` taking
/// `(0,0), (1,i)` to `X, Y`.
pub fn case_null_anchors(x: &PointC, y: &PointC) -> Result<(PointC, PointC), ComplexError> {
    let h = build_isometry_null(x, y)?;
    Ok((apply_isometry(&h, &PointC::from_ints(-1, 0, 0, 0)), apply_isometry(&h, &PointC::from_ints(1, 0, 0, 0))))
}

/// Null case: `psi(X, Y) = 0` with `X != Y`.
pub fn build_case_null(x: &PointC, y: &PointC, opts: &BuildOptions) -> Result<ComplexWitnessGraph, ComplexError> {
    let v = rational_psi(x, y)?;
    if v != int(0) {
        return Err(ComplexError::WrongCase { case: CaseTag::Null, psi: format_rational(&v) });
    }
    let (a, b) = case_null_anchors(x, y)?;
    let subs = sub_builds(
        vec![
            (x.clone(), a.clone()),
            (x.clone(), b.clone()),
            (a.clone(), b.clone()),
            (a.clone(), y.clone()),
            (b.clone(), y.clone()),
        ],
        opts,
    )?;
    Ok(assemble([x, y, &a, &b], subs, GadgetKind::ComplexNull, v, CaseTag::Null, opts.exec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::replay::{check_certificate, derive_certificate, Step};
    use crate::serde_rational::Q;

    fn pt(re0: i64, im0: i64, re1: i64, im1: i64) -> PointC {
        PointC::from_ints(re0, im0, re1, im1)
    }

    fn q(v: i64) -> Q {
        Q(int(v))
    }

    fn cm_step(g: &ComplexWitnessGraph) -> (Vec<Q>, Vec<Q>) {
        let c = derive_certificate(g).unwrap();
        let r = check_certificate(g, &c);
        assert!(r.passed, "{:?}", r.failures);
        c.steps
            .iter()
            .rev()
            .find_map(|s| match s {
                Step::CmForce { expected_polynomial, admissible_roots, .. } => {
                    Some((expected_polynomial.clone(), admissible_roots.clone()))
                }
                _ => None,
            })
            .unwrap()
    }

    #[test]
    fn dispatch_by_sign() {
        let o = BuildOptions::default();
        let g = build_complex(&pt(0, 0, 0, 0), &pt(2, 0, 0, 0), &o).unwrap();
        assert_eq!((g.case_tag, g.psi_target.clone()), (CaseTag::Positive, int(4)));
        assert!(verify_complex(&g).passed());
        let unit = build_case_pos(&pt(0, 0, 0, 0), &pt(1, 0, 0, 0), &o).unwrap();
        assert_eq!((unit.points.len(), unit.unit_edges.len()), (2, 1));
        assert!(matches!(
            build_case_pos(&pt(0, 0, 0, 0), &pt(0, 0, 0, 2), &o),
            Err(ComplexError::WrongCase { case: CaseTag::Positive, .. })
        ));
        assert!(matches!(build_case_neg(&pt(0, 0, 0, 0), &pt(2, 0, 0, 0), &o), Err(ComplexError::WrongSign(_))));
        assert!(matches!(build_case_null(&pt(0, 0, 0, 0), &pt(2, 0, 0, 0), &o), Err(ComplexError::WrongCase { .. })));
        assert_eq!(build_complex(&pt(1, 1, 0, 0), &pt(1, 1, 0, 0), &o), Err(ComplexError::CoincidentPoints));
        let irr = PointC::new(G::real(CR::from(2).sqrt_adjoin().unwrap()), G::from_ints(0, 1));
        assert!(matches!(build_complex(&pt(0, 0, 0, 0), &irr.add(&pt(0, 0, 1, 0)), &o), Err(ComplexError::IrrationalPsi(_))));
    }

    #[test]
    fn negative_case_anchors_and_root() {
        let (x, y) = (pt(0, 0, 0, 0), pt(0, 1, 0, 0));
        let (a, b) = case_neg_anchors(&x, &y);
        let v = |p: &PointC, q: &PointC| psi(p, q).as_rational().cloned().unwrap();
        assert_eq!([v(&a, &x), v(&b, &x), v(&a, &b), v(&a, &y), v(&b, &y)], [4, 4, 16, 3, 3].map(int));
        let g = build_complex(&x, &y, &BuildOptions::default()).unwrap();
        assert_eq!((g.case_tag, g.psi_target.clone()), (CaseTag::Negative, int(-1)));
        assert!(verify_complex(&g).passed());
        // 32 S (t - S)^2 at S = -1
        assert_eq!(cm_step(&g), (vec![q(-32), q(-64), q(-32)], vec![q(-1)]));
    }

    #[test]
    fn null_case_anchors_root_and_distinctness() {
        let (x, y) = (pt(0, 0, 0, 0), pt(1, 0, 0, 1));
        let (a, b) = case_null_anchors(&x, &y).unwrap();
        let v = |p: &PointC, q: &PointC| psi(p, q).as_rational().cloned().unwrap();
        assert_eq!([v(&a, &x), v(&b, &x), v(&a, &b), v(&a, &y), v(&b, &y)], [1, 1, 4, 3, -1].map(int));
        let g = build_complex(&x, &y, &BuildOptions::default()).unwrap();
        assert_eq!((g.case_tag, g.psi_target.clone()), (CaseTag::Null, int(0)));
        assert!(verify_complex(&g).passed());
        assert_eq!(cm_step(&g), (vec![q(0), q(0), q(-8)], vec![q(0)]));
        let c = derive_certificate(&g).unwrap();
        assert!(c.steps.iter().any(|s| matches!(s, Step::Distinct { values, .. } if *values == [q(1), q(3)])));
    }

    #[test]
    fn transport_and_json() {
        let o = BuildOptions::default();
        let g = build_complex(&pt(0, 0, 0, 0), &pt(1, 0, 1, 0), &o).unwrap();
        let h = build_isometry_null(&pt(1, 1, 0, 0), &pt(2, 1, 0, 1)).unwrap();
        let moved = g.transport(&h);
        assert!(verify_complex(&moved).passed());
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("\"case_tag\":\"Positive\""));
        assert_eq!(serde_json::from_str::<ComplexWitnessGraph>(&s).unwrap(), g);
    }
}
