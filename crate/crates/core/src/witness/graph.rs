//! Flattened witness graphs, their provenance, exact verification,
//! merging and export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::exec::{self, Execution};
use crate::field::rational::{format_rational, Rational};
use crate::field::{FieldError, Generator};
use crate::geometry::{IsometryR, PointR};

/// Gadget that produced a provenance node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GadgetKind {
    Unit,
    Sqrt3,
    Double,
    Pyth,
    Divide { k: u64, e: u64 },
    SqrtChain { n: u64 },
    RationalComposite { p: u64, q: u64 },
    ComplexPositive,
    ComplexNegative,
    ComplexNull,
}

/// One gadget instance: its labelled points as graph indices, and the
/// instances forcing each of its child pairs, in pair order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(flatten)]
    pub kind: GadgetKind,
    #[serde(with = "crate::serde_rational")]
    pub dsq: Rational,
    pub labels: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Provenance>,
}

impl Provenance {
    pub fn label(&self, name: &str) -> Option<usize> {
        self.labels.get(name).copied()
    }

    /// The forced pair `(x, y)`.
    pub fn pair(&self) -> Option<(usize, usize)> {
        Some((self.label("x")?, self.label("y")?))
    }

    pub fn remap(&mut self, f: &impl Fn(usize) -> usize) {
        for v in self.labels.values_mut() {
            *v = f(*v);
        }
        for c in &mut self.children {
            c.remap(f);
        }
    }

    /// Number of instances in the tree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Provenance::size).sum::<usize>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessGraph {
    pub points: Vec<PointR>,
    pub unit_edges: Vec<[usize; 2]>,
    pub target: [usize; 2],
    #[serde(with = "crate::serde_rational")]
    pub dsq: Rational,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    IndexOutOfRange { edge: [usize; 2] },
    SelfLoop { edge: [usize; 2] },
    DuplicateEdge { edge: [usize; 2] },
    EdgeNotUnit { edge: [usize; 2], squared_length: String },
    TargetMismatch { expected: String, actual: String },
    TargetIndex { target: [usize; 2] },
    DuplicatePoint { first: usize, second: usize },
    Disconnected { components: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Index-level checks shared by real and complex graphs: ranges, loops,
/// duplicate edges, target indices and connectivity.
pub(crate) fn structural_violations(n: usize, edges: &[[usize; 2]], target: [usize; 2]) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &e in edges {
        if e[0] >= n || e[1] >= n {
            out.push(Violation::IndexOutOfRange { edge: e });
        } else if e[0] == e[1] {
            out.push(Violation::SelfLoop { edge: e });
        } else if !seen.insert((e[0].min(e[1]), e[0].max(e[1]))) {
            out.push(Violation::DuplicateEdge { edge: e });
        }
    }
    if target[0] >= n || target[1] >= n || target[0] == target[1] {
        out.push(Violation::TargetIndex { target });
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut components = n;
    for &(a, b) in &seen {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    if components > 1 {
        out.push(Violation::Disconnected { components });
    }
    out
}

/// Indices of exactly equal points, as `(first, later)` pairs.
pub(crate) fn duplicate_pairs<T: Sync + Send>(
    exec: Execution,
    points: &[T],
    cmp: impl Fn(&T, &T) -> std::cmp::Ordering + Sync,
) -> Vec<(usize, usize)> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    exec::sort_by(exec, &mut idx, |&a, &b| cmp(&points[a], &points[b]).then(a.cmp(&b)));
    idx.windows(2)
        .filter(|w| cmp(&points[w[0]], &points[w[1]]).is_eq())
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
        .collect()
}

/// Collapses exactly equal points. Returns the kept points and the map
/// from old to new indices; first occurrences keep their relative order.
pub(crate) fn dedup_points<T: Clone + Sync + Send>(
    exec: Execution,
    points: Vec<T>,
    cmp: impl Fn(&T, &T) -> std::cmp::Ordering + Sync,
) -> (Vec<T>, Vec<usize>) {
    let n = points.len();
    let mut idx: Vec<usize> = (0..n).collect();
    exec::sort_by(exec, &mut idx, |&a, &b| cmp(&points[a], &points[b]).then(a.cmp(&b)));
    let mut rep: Vec<usize> = (0..n).collect();
    for w in idx.windows(2) {
        if cmp(&points[w[0]], &points[w[1]]).is_eq() {
            rep[w[1]] = rep[w[0]];
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut kept = Vec::new();
    for i in 0..n {
        if rep[i] == i {
            map[i] = kept.len();
            kept.push(points[i].clone());
        }
    }
    for i in 0..n {
        map[i] = map[rep[i]];
    }
    (kept, map)
}

/// Remaps, orients `(min, max)`, sorts and deduplicates edges.
pub(crate) fn normalize_edges(edges: impl IntoIterator<Item = [usize; 2]>, map: &[usize]) -> Vec<[usize; 2]> {
    let mut out: Vec<[usize; 2]> = edges
        .into_iter()
        .map(|[a, b]| {
            let (a, b) = (map[a], map[b]);
            [a.min(b), a.max(b)]
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

impl WitnessGraph {
    pub fn x(&self) -> &PointR {
        &self.points[self.target[0]]
    }

    pub fn y(&self) -> &PointR {
        &self.points[self.target[1]]
    }

    /// Image under a plane isometry; all distances are preserved.
    pub fn transport(&self, iso: &IsometryR) -> WitnessGraph {
        WitnessGraph {
            points: self.points.iter().map(|p| iso.apply(p)).collect(),
            ..self.clone()
        }
    }

    /// Every square-root generator occurring in some coordinate.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gs: Vec<Generator> = self.points.iter().flat_map(|p| p.0.iter().flat_map(|c| c.generators())).collect();
        gs.sort();
        gs.dedup();
        gs
    }

    /// Applies the Galois conjugation at `g` to every coordinate.
    pub fn conjugate(&self, g: &Generator) -> Result<WitnessGraph, FieldError> {
        let points = self.points.iter().map(|p| p.conjugate(g)).collect::<Result<_, _>>()?;
        Ok(WitnessGraph { points, ..self.clone() })
    }

    /// Union with exact point deduplication. Target, `dsq` and provenance
    /// come from `self`.
    pub fn merge(&self, other: &WitnessGraph) -> WitnessGraph {
        self.merge_with(other, Execution::default())
    }

    pub fn merge_with(&self, other: &WitnessGraph, exec: Execution) -> WitnessGraph {
        let n1 = self.points.len();
        let all: Vec<PointR> = self.points.iter().chain(&other.points).cloned().collect();
        let (points, map) = dedup_points(exec, all, Ord::cmp);
        let edges = self
            .unit_edges
            .iter()
            .copied()
            .chain(other.unit_edges.iter().map(|[a, b]| [a + n1, b + n1]));
        let unit_edges = normalize_edges(edges, &map);
        let mut provenance = self.provenance.clone();
        provenance.remap(&|i| map[i]);
        WitnessGraph {
            points,
            unit_edges,
            target: [map[self.target[0]], map[self.target[1]]],
            dsq: self.dsq.clone(),
            provenance,
        }
    }

    /// Graphviz source: unit edges solid, the target pair dashed. Node
    /// positions are floating-point renderings for layout only.
    pub fn to_dot(&self) -> String {
        let pos = self.points.iter().map(|p| {
            let c = p.to_f64();
            (c[0], c.get(1).copied().unwrap_or(0.0))
        });
        dot(pos, &self.unit_edges, self.target, &format_rational(&self.dsq))
    }
}

/// Graphviz source with pinned positions, solid unit edges and a dashed,
/// labelled target pair.
pub(crate) fn dot(pos: impl Iterator<Item = (f64, f64)>, edges: &[[usize; 2]], target: [usize; 2], label: &str) -> String {
    let mut s = String::from("graph witness {\n  node [shape=point];\n");
    for (i, (x, y)) in pos.enumerate() {
        let _ = writeln!(s, "  n{i} [pos=\"{x:.6},{y:.6}!\"];");
    }
    for [a, b] in edges {
        let _ = writeln!(s, "  n{a} -- n{b};");
    }
    let [x, y] = target;
    let _ = writeln!(s, "  n{x} -- n{y} [style=dashed, label=\"{label}\"];");
    s.push_str("}\n");
    s
}

/// Checks every invariant of a witness graph exactly.
pub fn verify_witness(g: &WitnessGraph) -> VerificationReport {
    verify_witness_with(g, Execution::default())
}

pub fn verify_witness_with(g: &WitnessGraph, exec: Execution) -> VerificationReport {
    let n = g.points.len();
    let mut violations = structural_violations(n, &g.unit_edges, g.target);
    let bad_edges = exec::map(exec, &g.unit_edges, |&e| {
        if e[0] >= n || e[1] >= n || g.points[e[0]].dim() != g.points[e[1]].dim() {
            return None;
        }
        let d = g.points[e[0]].dist_sq(&g.points[e[1]]);
        (!d.is_one()).then(|| Violation::EdgeNotUnit { edge: e, squared_length: d.to_string() })
    });
    violations.extend(bad_edges.into_iter().flatten());
    if g.target[0] < n && g.target[1] < n {
        let d = g.x().dist_sq(g.y());
        let expected = crate::field::ConstructibleReal::from(g.dsq.clone());
        if d != expected {
            violations.push(Violation::TargetMismatch {
                expected: format_rational(&g.dsq),
                actual: d.to_string(),
            });
        }
    }
    for (first, second) in duplicate_pairs(exec, &g.points, Ord::cmp) {
        violations.push(Violation::DuplicatePoint { first, second });
    }
    VerificationReport { violations }
}
