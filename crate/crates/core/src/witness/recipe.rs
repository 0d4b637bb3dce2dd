//! Derivation trees: which gadget produces each forced distance.
//!
//! Trees are DAGs with `Arc`-shared children. Every node caches its squared
//! distance and the raw (pre-deduplication) point and edge counts of its
//! flattening, so size estimates are exact for the flattener.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::WitnessError;
use crate::field::rational::{ceil_sqrt, format_rational, int, Rational};

#[derive(Clone, Debug)]
pub enum Node {
    Unit,
    Sqrt3 {
        child: Arc<DerivationTree>,
    },
    Double {
        child: Arc<DerivationTree>,
        sqrt3: Arc<DerivationTree>,
    },
    Pyth {
        a: Arc<DerivationTree>,
        b: Arc<DerivationTree>,
        double_b: Arc<DerivationTree>,
    },
    Divide {
        child: Arc<DerivationTree>,
        k: u64,
        e: u64,
        e_int: Arc<DerivationTree>,
        km1_int: Arc<DerivationTree>,
        k_int: Arc<DerivationTree>,
    },
    SqrtChain {
        n: u64,
        body: Arc<DerivationTree>,
    },
    RationalComposite {
        p: u64,
        q: u64,
        body: Arc<DerivationTree>,
    },
}

#[derive(Clone, Debug)]
pub struct DerivationTree {
    dsq: Rational,
    node: Node,
    raw_edges: u128,
    raw_points: u128,
}

/// Interior (non-endpoint) points each gadget adds.
pub(crate) fn interior_points(node: &Node) -> u128 {
    match node {
        Node::Unit | Node::SqrtChain { .. } | Node::RationalComposite { .. } => 0,
        Node::Sqrt3 { .. } => 5,
        Node::Double { .. } | Node::Divide { .. } => 3,
        Node::Pyth { .. } => 2,
    }
}

/// Children consumed by each skeleton pair, in pair order.
pub(crate) fn pair_children(node: &Node) -> Vec<&Arc<DerivationTree>> {
    match node {
        Node::Unit => vec![],
        Node::Sqrt3 { child } => vec![child; 11],
        Node::Double { child, sqrt3 } => {
            let mut v = vec![child; 7];
            v.extend([sqrt3, sqrt3]);
            v
        }
        Node::Pyth { a, b, double_b } => vec![b, b, a, a, double_b],
        Node::Divide { child, e_int, km1_int, k_int, .. } => {
            vec![e_int, km1_int, k_int, e_int, km1_int, k_int, child]
        }
        Node::SqrtChain { body, .. } | Node::RationalComposite { body, .. } => vec![body],
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), WitnessError> {
    if cond {
        Ok(())
    } else {
        Err(WitnessError::BadRecipe(msg()))
    }
}

impl DerivationTree {
    fn make(dsq: Rational, node: Node) -> Arc<Self> {
        let kids = pair_children(&node);
        let raw_edges = match node {
            Node::Unit => 1,
            _ => kids.iter().fold(0u128, |acc, c| acc.saturating_add(c.raw_edges)),
        };
        let raw_points = kids
            .iter()
            .fold(interior_points(&node), |acc, c| acc.saturating_add(c.raw_points));
        Arc::new(DerivationTree { dsq, node, raw_edges, raw_points })
    }

    pub fn unit() -> Arc<Self> {
        Self::make(Rational::one(), Node::Unit)
    }

    /// `3 d^2` from `d^2`.
    pub fn sqrt3(child: Arc<Self>) -> Arc<Self> {
        Self::make(int(3) * &child.dsq, Node::Sqrt3 { child })
    }

    /// `4 d^2` from `d^2` and `3 d^2`.
    pub fn double(child: Arc<Self>, sqrt3: Arc<Self>) -> Result<Arc<Self>, WitnessError> {
        check(sqrt3.dsq == int(3) * &child.dsq, || {
            format!("double: sqrt3 child has {} instead of 3*{}", sqrt3.dsq, child.dsq)
        })?;
        Ok(Self::make(int(4) * &child.dsq, Node::Double { child, sqrt3 }))
    }

    /// `a^2 - b^2` from `a^2 > b^2`, `b^2` and `4 b^2`.
    pub fn pyth(a: Arc<Self>, b: Arc<Self>, double_b: Arc<Self>) -> Result<Arc<Self>, WitnessError> {
        if a.dsq <= b.dsq {
            return Err(WitnessError::NotDescending {
                a_sq: format_rational(&a.dsq),
                b_sq: format_rational(&b.dsq),
            });
        }
        check(double_b.dsq == int(4) * &b.dsq, || {
            format!("pyth: third child has {} instead of 4*{}", double_b.dsq, b.dsq)
        })?;
        Ok(Self::make(&a.dsq - &b.dsq, Node::Pyth { a, b, double_b }))
    }

    /// `d^2 / k^2` from `d^2` and the integer witnesses `e`, `(k-1)e`, `ke`
    /// where `e` is the least integer with `e^2 >= d^2`.
    pub fn divide(
        child: Arc<Self>,
        k: u64,
        e_int: Arc<Self>,
        km1_int: Arc<Self>,
        k_int: Arc<Self>,
    ) -> Result<Arc<Self>, WitnessError> {
        if k < 2 {
            return Err(WitnessError::BadK(k));
        }
        let e = divide_e(&child.dsq)?;
        let sq = |m: u64| int(m as i64) * int(m as i64);
        for (w, m) in [(&e_int, e), (&km1_int, (k - 1) * e), (&k_int, k * e)] {
            check(w.dsq == sq(m), || format!("divide: integer child {} is not {m}^2", w.dsq))?;
        }
        let kk = int(k as i64);
        let dsq = &child.dsq / (&kk * &kk);
        Ok(Self::make(dsq, Node::Divide { child, k, e, e_int, km1_int, k_int }))
    }

    pub fn sqrt_chain(n: u64, body: Arc<Self>) -> Result<Arc<Self>, WitnessError> {
        check(body.dsq == int(n as i64), || format!("sqrt chain body has {}, not {n}", body.dsq))?;
        Ok(Self::make(body.dsq.clone(), Node::SqrtChain { n, body }))
    }

    pub fn rational_composite(p: u64, q: u64, body: Arc<Self>) -> Result<Arc<Self>, WitnessError> {
        let target = Rational::new((p as i64).into(), (q as i64).into());
        check(body.dsq == target, || format!("composite body has {}, not {p}/{q}", body.dsq))?;
        Ok(Self::make(target, Node::RationalComposite { p, q, body }))
    }

    pub fn dsq(&self) -> &Rational {
        &self.dsq
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    /// Unit edges of the flattened graph before deduplication.
    pub fn estimate_edges(&self) -> u128 {
        self.raw_edges
    }

    /// Points of the flattened graph before deduplication.
    pub fn estimate_points(&self) -> u128 {
        self.raw_points.saturating_add(2)
    }

    /// Distinct nodes of the DAG.
    pub fn dag_size(self: &Arc<Self>) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(n) = stack.pop() {
            if seen.insert(Arc::as_ptr(&n)) {
                stack.extend(pair_children(&n.node).into_iter().cloned());
            }
        }
        seen.len()
    }

    pub fn kind_name(&self) -> &'static str {
        match self.node {
            Node::Unit => "unit",
            Node::Sqrt3 { .. } => "sqrt3",
            Node::Double { .. } => "double",
            Node::Pyth { .. } => "pyth",
            Node::Divide { .. } => "divide",
            Node::SqrtChain { .. } => "sqrt_chain",
            Node::RationalComposite { .. } => "rational_composite",
        }
    }
}

/// Least integer `e >= 1` with `e^2 >= d^2`.
pub fn divide_e(d_sq: &Rational) -> Result<u64, WitnessError> {
    if d_sq <= &Rational::zero() {
        return Err(WitnessError::NonPositive(format_rational(d_sq)));
    }
    let e = ceil_sqrt(d_sq);
    u64::try_from(e).map_err(|_| WitnessError::BadRecipe(format!("divide: e for {d_sq} overflows")))
}

impl fmt::Display for DerivationTree {
    /// Compact nested form, e.g. `pyth(3, 1)` with children elided below
    /// depth two.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &DerivationTree, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let d = format_rational(&t.dsq);
            if depth == 0 && !matches!(t.node, Node::Unit) {
                return write!(f, "{}[{d}]", t.kind_name());
            }
            match &t.node {
                Node::Unit => write!(f, "unit"),
                Node::Sqrt3 { child } | Node::Double { child, .. } => {
                    write!(f, "{}(", t.kind_name())?;
                    go(child, depth - 1, f)?;
                    write!(f, ")")
                }
                Node::Pyth { a, b, .. } => {
                    write!(f, "pyth(")?;
                    go(a, depth - 1, f)?;
                    write!(f, ", ")?;
                    go(b, depth - 1, f)?;
                    write!(f, ")")
                }
                Node::Divide { child, k, .. } => {
                    write!(f, "divide(")?;
                    go(child, depth - 1, f)?;
                    write!(f, ", {k})")
                }
                Node::SqrtChain { n, body } => {
                    write!(f, "sqrt_chain<{n}>(")?;
                    go(body, depth - 1, f)?;
                    write!(f, ")")
                }
                Node::RationalComposite { p, q, body } => {
                    write!(f, "rational<{p}/{q}>(")?;
                    go(body, depth - 1, f)?;
                    write!(f, ")")
                }
            }
        }
        go(self, 3, f)
    }
}
