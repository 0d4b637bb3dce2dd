//! Canonical gadget placements with `x = (0,0)` and `y = (sqrt(dsq), 0)`.
//!
//! Skeletons are cached process-wide by `(kind, dsq, aux)`; a skeleton
//! depends on nothing else.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::recipe::{pair_children, DerivationTree, Node};
use super::WitnessError;
use crate::field::rational::{int, rat, Rational};
use crate::field::ConstructibleReal;
use crate::geometry::{IsometryR, PointR};

type CR = ConstructibleReal;

/// A child witness attached to the skeleton pair `(i, j)`.
#[derive(Debug)]
pub(crate) struct ChildPair {
    pub i: usize,
    pub j: usize,
    /// Maps the child's canonical pair onto `(points[i], points[j])`.
    pub transport: IsometryR,
}

/// Labels and canonical points; index 0 is `x`, index 1 is `y`.
#[derive(Debug)]
pub(crate) struct Skeleton {
    pub labels: &'static [&'static str],
    pub points: Vec<PointR>,
    pub pairs: Vec<ChildPair>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    kind: &'static str,
    dsq: Rational,
    aux: Rational,
}

fn cache() -> &'static Mutex<HashMap<Key, Arc<Skeleton>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Skeleton>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn sqrt(q: &Rational) -> Result<CR, WitnessError> {
    Ok(CR::from(q.clone()).sqrt_adjoin()?)
}

pub(crate) fn canonical_pair(dsq: &Rational) -> Result<(PointR, PointR), WitnessError> {
    Ok((PointR::origin(2), PointR::xy(sqrt(dsq)?, CR::zero())))
}

/// Intersection of the circles `|p - a|^2 = ra`, `|p - b|^2 = rb` on the
/// right of `a -> b` (`right = true`) or on its left.
pub(crate) fn circle_intersection(
    a: &PointR,
    ra: &Rational,
    b: &PointR,
    rb: &Rational,
    right: bool,
) -> Result<PointR, WitnessError> {
    let v = b.sub(a);
    let d2 = v.dot(&v);
    let ra = CR::from(ra.clone());
    let rb = CR::from(rb.clone());
    let two_d2 = d2.scale(&int(2));
    let along = (&ra - &rb + &d2).div(&two_d2)?;
    let h2 = ra.div(&d2)? - along.square();
    if h2.sign() < 0 {
        return Err(WitnessError::BadRecipe("circles do not intersect".into()));
    }
    let h = h2.sqrt_adjoin()?;
    let perp = PointR::xy(-v.y(), v.x().clone());
    let base = a.add(&v.scale(&along));
    let off = perp.scale(&h);
    Ok(if right { base.sub(&off) } else { base.add(&off) })
}

fn key_of(t: &DerivationTree) -> Key {
    let (kind, aux) = match t.node() {
        Node::Pyth { a, .. } => ("pyth", a.dsq().clone()),
        Node::Divide { k, .. } => ("divide", int(*k as i64)),
        _ => (t.kind_name(), int(0)),
    };
    let kind = match kind {
        "sqrt_chain" | "rational_composite" => "wrapper",
        k => k,
    };
    Key { kind, dsq: t.dsq().clone(), aux }
}

pub(crate) fn skeleton(t: &DerivationTree) -> Result<Arc<Skeleton>, WitnessError> {
    let key = key_of(t);
    if let Some(s) = cache().lock().expect("skeleton cache").get(&key) {
        return Ok(s.clone());
    }
    let s = Arc::new(place(t)?);
    cache().lock().expect("skeleton cache").insert(key, s.clone());
    Ok(s)
}

fn place(t: &DerivationTree) -> Result<Skeleton, WitnessError> {
    let p = t.dsq();
    let (x, y) = canonical_pair(p)?;
    let (labels, points, pairs): (&'static [&'static str], Vec<PointR>, Vec<(usize, usize)>) = match t.node() {
        Node::Unit => (&["x", "y"], vec![x, y], vec![]),
        Node::SqrtChain { .. } | Node::RationalComposite { .. } => (&["x", "y"], vec![x, y], vec![(0, 1)]),
        Node::Sqrt3 { child } => {
            let c = child.dsq();
            let three_c = int(3) * c;
            let yt = circle_intersection(&x, &three_c, &y, c, true)?;
            let p1 = circle_intersection(&x, c, &y, c, false)?;
            let p2 = circle_intersection(&x, c, &y, c, true)?;
            let pt1 = circle_intersection(&x, c, &yt, c, false)?;
            let pt2 = circle_intersection(&x, c, &yt, c, true)?;
            // 0 x, 1 y, 2 yt, 3 p1, 4 p2, 5 pt1, 6 pt2
            let pairs = vec![
                (1, 2),
                (0, 3),
                (0, 4),
                (1, 3),
                (1, 4),
                (3, 4),
                (0, 5),
                (0, 6),
                (2, 5),
                (2, 6),
                (5, 6),
            ];
            (&["x", "y", "yt", "p1", "p2", "pt1", "pt2"], vec![x, y, yt, p1, p2, pt1, pt2], pairs)
        }
        Node::Double { child, .. } => {
            let c = sqrt(child.dsq())?;
            let h = c.mul(&sqrt(&int(3))?).scale(&rat(1, 2));
            let p1 = PointR::xy(c.clone(), CR::zero());
            let p2 = PointR::xy(c.scale(&rat(1, 2)), h.clone());
            let p3 = PointR::xy(c.scale(&rat(3, 2)), h);
            // 0 x, 1 y, 2 p1, 3 p2, 4 p3; seven d-pairs then two sqrt3-pairs
            let pairs = vec![(2, 3), (2, 4), (3, 4), (0, 2), (0, 3), (1, 2), (1, 4), (0, 4), (1, 3)];
            (&["x", "y", "p1", "p2", "p3"], vec![x, y, p1, p2, p3], pairs)
        }
        Node::Pyth { b, .. } => {
            let sb = sqrt(b.dsq())?;
            let p1 = PointR::xy(CR::zero(), sb.clone());
            let p2 = PointR::xy(CR::zero(), -sb);
            // 0 x, 1 y, 2 p1, 3 p2; order matches pair_children: b, b, a, a, 4b
            let pairs = vec![(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            (&["x", "y", "p1", "p2"], vec![x, y, p1, p2], pairs)
        }
        Node::Divide { k, e, .. } => {
            let e2 = int(*e as i64) * int(*e as i64);
            let z = circle_intersection(&x, &e2, &y, &e2, true)?;
            let kc = CR::from(*k as i64);
            let xt = z.add(&x.sub(&z).scale(&kc));
            let yt = z.add(&y.sub(&z).scale(&kc));
            // 0 x, 1 y, 2 z, 3 xt, 4 yt; order matches pair_children
            let pairs = vec![(2, 0), (0, 3), (2, 3), (2, 1), (1, 4), (2, 4), (3, 4)];
            (&["x", "y", "z", "xt", "yt"], vec![x, y, z, xt, yt], pairs)
        }
    };
    let kids = pair_children(t.node());
    debug_assert_eq!(kids.len(), pairs.len());
    let pairs = pairs
        .into_iter()
        .zip(kids)
        .map(|((i, j), child)| {
            let (cx, cy) = canonical_pair(child.dsq())?;
            let transport = IsometryR::mapping_pair(&cx, &cy, &points[i], &points[j])
                .map_err(|e| WitnessError::BadRecipe(format!("{} pair ({i},{j}): {e}", t.kind_name())))?;
            Ok(ChildPair { i, j, transport })
        })
        .collect::<Result<_, WitnessError>>()?;
    Ok(Skeleton { labels, points, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt3_skeleton_distances() {
        let t = DerivationTree::sqrt3(DerivationTree::unit());
        let s = skeleton(&t).unwrap();
        assert_eq!(s.points.len(), 7);
        assert_eq!(s.pairs.len(), 11);
        for p in &s.pairs {
            assert_eq!(s.points[p.i].dist_sq(&s.points[p.j]), CR::one());
        }
        assert_eq!(s.points[0].dist_sq(&s.points[1]), CR::from(3));
        assert_eq!(s.points[0].dist_sq(&s.points[2]), CR::from(3));
        assert!(s.points[2].y().sign() < 0);
    }

    #[test]
    fn intersection_sides() {
        let a = PointR::from_ints(&[0, 0]);
        let b = PointR::from_ints(&[2, 0]);
        let lo = circle_intersection(&a, &int(2), &b, &int(2), true).unwrap();
        let hi = circle_intersection(&a, &int(2), &b, &int(2), false).unwrap();
        assert_eq!(lo, PointR::from_ints(&[1, -1]));
        assert_eq!(hi, PointR::from_ints(&[1, 1]));
        assert!(circle_intersection(&a, &int(1), &b, &int(0), true).is_err());
    }
}
