//! Flattening derivation trees into witness graphs.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::graph::{dedup_points, normalize_edges, GadgetKind, Provenance, WitnessGraph};
use super::planner::{plan_derivation, plan_int, plan_sqrt_int, PlanOptions};
use super::recipe::{divide_e, pair_children, DerivationTree, Node};
use super::skeleton::{canonical_pair, skeleton};
use super::WitnessError;
use crate::exec::{self, Execution};
use crate::field::rational::{format_rational, Rational};
use crate::field::ConstructibleReal;
use crate::geometry::{IsometryR, PointR};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    pub plan: PlanOptions,
    pub exec: Execution,
}

impl BuildOptions {
    pub fn paper_chain() -> Self {
        BuildOptions { plan: PlanOptions::paper_chain(), ..Self::default() }
    }

    pub fn sequential() -> Self {
        BuildOptions { exec: Execution::Sequential, ..Self::default() }
    }
}

/// Sizes before and after deduplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct BuildStats {
    pub raw_points: usize,
    pub raw_edges: usize,
    pub points: usize,
    pub edges: usize,
}

/// Gadget output in local references: 0 is the attachment `x`, 1 is `y`,
/// `r >= 2` is `interior[r - 2]`.
struct Fragment {
    interior: Vec<PointR>,
    edges: Vec<[usize; 2]>,
    prov: Provenance,
}

fn kind_of(t: &DerivationTree) -> GadgetKind {
    match t.node() {
        Node::Unit => GadgetKind::Unit,
        Node::Sqrt3 { .. } => GadgetKind::Sqrt3,
        Node::Double { .. } => GadgetKind::Double,
        Node::Pyth { .. } => GadgetKind::Pyth,
        Node::Divide { k, e, .. } => GadgetKind::Divide { k: *k, e: *e },
        Node::SqrtChain { n, .. } => GadgetKind::SqrtChain { n: *n },
        Node::RationalComposite { p, q, .. } => GadgetKind::RationalComposite { p: *p, q: *q },
    }
}

fn flatten(t: &Arc<DerivationTree>, iso: &IsometryR, exec: Execution) -> Result<Fragment, WitnessError> {
    let sk = skeleton(t)?;
    let mut interior: Vec<PointR> = sk.points[2..].iter().map(|p| iso.apply(p)).collect();
    let mut edges = Vec::new();
    if matches!(t.node(), Node::Unit) {
        edges.push([0, 1]);
    }
    let kids = pair_children(t.node());
    let run = |k: usize| {
        let pair = &sk.pairs[k];
        flatten(kids[k], &iso.compose(&pair.transport), exec)
    };
    // Parallel fan-out only pays off above a few hundred edges.
    let sub = if t.estimate_edges() > 256 { exec } else { Execution::Sequential };
    let frags = exec::map_range(sub, kids.len(), run);
    let labels: BTreeMap<String, usize> = sk.labels.iter().enumerate().map(|(i, l)| (l.to_string(), i)).collect();
    let mut children = Vec::with_capacity(frags.len());
    for (pair, frag) in sk.pairs.iter().zip(frags) {
        let frag = frag?;
        let offset = 2 + interior.len();
        let map = |r: usize| match r {
            0 => pair.i,
            1 => pair.j,
            r => offset + r - 2,
        };
        interior.extend(frag.interior);
        edges.extend(frag.edges.iter().map(|&[a, b]| [map(a), map(b)]));
        let mut prov = frag.prov;
        prov.remap(&map);
        children.push(prov);
    }
    let prov = Provenance { kind: kind_of(t), dsq: t.dsq().clone(), labels, children };
    Ok(Fragment { interior, edges, prov })
}

/// Flattens a derivation with its pair at the canonical position
/// `(0,0), (sqrt(dsq), 0)`.
pub fn build(t: &Arc<DerivationTree>, opts: &BuildOptions) -> Result<WitnessGraph, WitnessError> {
    build_with_stats(t, None, opts).map(|(g, _)| g)
}

/// Flattens a derivation with its pair placed at `at`, which must be at
/// squared distance `dsq`.
pub fn build_at(t: &Arc<DerivationTree>, at: (&PointR, &PointR), opts: &BuildOptions) -> Result<WitnessGraph, WitnessError> {
    build_with_stats(t, Some(at), opts).map(|(g, _)| g)
}

pub fn build_with_stats(
    t: &Arc<DerivationTree>,
    at: Option<(&PointR, &PointR)>,
    opts: &BuildOptions,
) -> Result<(WitnessGraph, BuildStats), WitnessError> {
    let (x0, y0) = canonical_pair(t.dsq())?;
    let iso = match at {
        None => IsometryR::identity(),
        Some((x, y)) => {
            if x.dim() != 2 || y.dim() != 2 || x.dist_sq(y) != ConstructibleReal::from(t.dsq().clone()) {
                return Err(WitnessError::TargetMismatch { dsq: format_rational(t.dsq()) });
            }
            IsometryR::mapping_pair(&x0, &y0, x, y).map_err(|e| WitnessError::BadRecipe(e.to_string()))?
        }
    };
    let frag = flatten(t, &iso, opts.exec)?;
    let mut raw = vec![iso.apply(&x0), iso.apply(&y0)];
    raw.extend(frag.interior);
    let raw_points = raw.len();
    let raw_edges = frag.edges.len();
    let (points, map) = dedup_points(opts.exec, raw, Ord::cmp);
    let unit_edges = normalize_edges(frag.edges, &map);
    let mut provenance = frag.prov;
    provenance.remap(&|i| map[i]);
    let stats = BuildStats { raw_points, raw_edges, points: points.len(), edges: unit_edges.len() };
    let g = WitnessGraph { points, unit_edges, target: [map[0], map[1]], dsq: t.dsq().clone(), provenance };
    Ok((g, stats))
}

/// The two-point witness for a unit pair.
pub fn trivial_unit(x: &PointR, y: &PointR) -> Result<WitnessGraph, WitnessError> {
    if x.dim() != y.dim() || !x.dist_sq(y).is_one() {
        return Err(WitnessError::NotUnitSeparated);
    }
    let labels = BTreeMap::from([("x".to_string(), 0), ("y".to_string(), 1)]);
    Ok(WitnessGraph {
        points: vec![x.clone(), y.clone()],
        unit_edges: vec![[0, 1]],
        target: [0, 1],
        dsq: Rational::from_integer(1.into()),
        provenance: Provenance { kind: GadgetKind::Unit, dsq: Rational::from_integer(1.into()), labels, children: vec![] },
    })
}

/// `sqrt(3) d` from a derivation of `d`.
pub fn gadget_sqrt3(child: Arc<DerivationTree>, opts: &BuildOptions) -> Result<WitnessGraph, WitnessError> {
    build(&DerivationTree::sqrt3(child), opts)
}

/// `2 d` from a derivation of `d`; the `sqrt(3) d` child is the sqrt3
/// gadget over the same derivation.
pub fn gadget_double(child: Arc<DerivationTree>, opts: &BuildOptions) -> Result<WitnessGraph, WitnessError> {
    let s = DerivationTree::sqrt3(child.clone());
    build(&DerivationTree::double(child, s)?, opts)
}

/// `sqrt(a^2 - b^2)` from derivations of `a` and `b`; the `2b` child is
/// the doubling gadget over `b`.
pub fn gadget_pyth(a: Arc<DerivationTree>, b: Arc<DerivationTree>, opts: &BuildOptions) -> Result<WitnessGraph, WitnessError> {
    let double_b = DerivationTree::double(b.clone(), DerivationTree::sqrt3(b.clone()))?;
    build(&DerivationTree::pyth(a, b, double_b)?, opts)
}

/// Recipe for `d / k` with planned integer children.
pub fn divide_recipe(child: Arc<DerivationTree>, k: u64, plan: &PlanOptions) -> Result<Arc<DerivationTree>, WitnessError> {
    if k < 2 {
        return Err(WitnessError::BadK(k));
    }
    let e = divide_e(child.dsq())?;
    DerivationTree::divide(child, k, plan_int(e, plan)?, plan_int((k - 1) * e, plan)?, plan_int(k * e, plan)?)
}

/// `d / k` from a derivation of `d`.
pub fn gadget_divide(child: Arc<DerivationTree>, k: u64, opts: &BuildOptions) -> Result<WitnessGraph, WitnessError> {
    build(&divide_recipe(child, k, &opts.plan)?, opts)
}

/// Witness for squared distance `n`.
pub fn build_sqrt_int(n: u64, opts: &BuildOptions) -> Result<WitnessGraph, WitnessError> {
    build(&plan_sqrt_int(n, &opts.plan)?, opts)
}

/// Witness for distance `n` (squared distance `n^2`).
pub fn build_int(n: u64, opts: &BuildOptions) -> Result<WitnessGraph, WitnessError> {
    build(&plan_int(n, &opts.plan)?, opts)
}

/// Witness for squared distance `p / q`, optionally placed at `at`.
pub fn build_rational_sq(p: u64, q: u64, at: Option<(&PointR, &PointR)>, opts: &BuildOptions) -> Result<WitnessGraph, WitnessError> {
    let t = plan_derivation(p, q, &opts.plan)?;
    match at {
        None => build(&t, opts),
        Some(at) => build_at(&t, at, opts),
    }
}
