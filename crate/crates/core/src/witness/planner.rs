//! Size-minimizing derivation planner and the fixed fallback chain.
//!
//! The planner runs a Knuth-style generalized Dijkstra over the squared
//! distances `m / L` (`1 <= m <= nmax * L`, `L` a square multiple of the
//! target's denominator). Every gadget's size is a sum of child sizes, so
//! finalizing keys in order of increasing size is optimal within the key
//! universe.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::sync::Arc;

use num_integer::Integer;

use super::recipe::{divide_e, DerivationTree};
use super::WitnessError;
use crate::field::rational::{format_rational, Rational};

/// Default cap on estimated unit edges.
pub const DEFAULT_BUDGET: u128 = 250_000;

/// Descent steps beyond which the fallback chain is rejected without
/// building its recipe.
const MAX_CHAIN_DESCENT: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanOptions {
    /// Force the ascend-by-doubling, descend-by-one chain.
    pub paper_chain: bool,
    /// Reject plans whose estimated unit-edge count exceeds this.
    pub budget: u128,
    /// Largest squared distance in the planner's key universe; `None`
    /// adapts to the target.
    pub nmax: Option<u64>,
}

impl Default for PlanOptions {
    fn default() -> Self {
        PlanOptions { paper_chain: false, budget: DEFAULT_BUDGET, nmax: None }
    }
}

impl PlanOptions {
    pub fn paper_chain() -> Self {
        PlanOptions { paper_chain: true, ..Self::default() }
    }
}

fn within_budget(t: Arc<DerivationTree>, budget: u128) -> Result<Arc<DerivationTree>, WitnessError> {
    let estimate = t.estimate_edges();
    if estimate > budget {
        return Err(WitnessError::BudgetExceeded { estimate, budget });
    }
    Ok(t)
}

fn positive(p: u64, q: u64) -> Result<(u64, u64), WitnessError> {
    if p == 0 || q == 0 {
        return Err(WitnessError::NonPositive(format!("{p}/{q}")));
    }
    let g = p.gcd(&q);
    Ok((p / g, q / g))
}

/// A derivation with root squared distance `p / q`.
pub fn plan_derivation(p: u64, q: u64, opts: &PlanOptions) -> Result<Arc<DerivationTree>, WitnessError> {
    let (p, q) = positive(p, q)?;
    if opts.paper_chain {
        return within_budget(paper_rational(p, q, opts.budget)?, opts.budget);
    }
    let planned = Planner::new(p, q, opts.nmax).solve();
    match planned {
        Some(t) => within_budget(t, opts.budget),
        None => within_budget(paper_rational(p, q, opts.budget)?, opts.budget),
    }
}

/// Derivation of `sqrt(n)` (squared distance `n`).
pub fn plan_sqrt_int(n: u64, opts: &PlanOptions) -> Result<Arc<DerivationTree>, WitnessError> {
    positive(n, 1)?;
    if opts.paper_chain {
        within_budget(paper_sqrt_int(n, opts.budget)?, opts.budget)
    } else {
        plan_derivation(n, 1, opts)
    }
}

/// Derivation of the integer distance `n` (squared distance `n^2`).
pub fn plan_int(n: u64, opts: &PlanOptions) -> Result<Arc<DerivationTree>, WitnessError> {
    let sq = n.checked_mul(n).ok_or(WitnessError::BudgetExceeded { estimate: u128::MAX, budget: opts.budget })?;
    plan_sqrt_int(sq, opts)
}

/// Estimated unit edges of the fallback chain for `sqrt(n)`, by recurrence
/// and without building the recipe.
pub fn paper_chain_estimate(n: u64) -> u128 {
    let (k, top) = ascent(n);
    // c(4^j) = 29^j; each descent step: c(m-1) = 2 c(m) + 2 c(1) + c(4)
    let mut c = (0..k).fold(1u128, |acc, _| acc.saturating_mul(29));
    for _ in n..top {
        c = c.saturating_mul(2).saturating_add(2 + 29);
    }
    c
}

/// Least `k` with `4^k >= n`, and `4^k`.
fn ascent(n: u64) -> (u32, u64) {
    let mut k = 0;
    let mut top = 1u64;
    while top < n {
        top = top.saturating_mul(4);
        k += 1;
    }
    (k, top)
}

/// Ascend from 1 to `4^k >= n` by doubling, then descend one unit at a
/// time with the Pythagorean gadget against a unit leg.
fn paper_sqrt_int(n: u64, budget: u128) -> Result<Arc<DerivationTree>, WitnessError> {
    let (k, top) = ascent(n);
    if top - n > MAX_CHAIN_DESCENT {
        return Err(WitnessError::BudgetExceeded { estimate: paper_chain_estimate(n), budget });
    }
    let unit = DerivationTree::unit();
    let mut t = unit.clone();
    for _ in 0..k {
        t = DerivationTree::double(t.clone(), DerivationTree::sqrt3(t))?;
    }
    let four = DerivationTree::double(unit.clone(), DerivationTree::sqrt3(unit.clone()))?;
    for _ in n..top {
        t = DerivationTree::pyth(t, unit.clone(), four.clone())?;
    }
    DerivationTree::sqrt_chain(n, t)
}

fn paper_rational(p: u64, q: u64, budget: u128) -> Result<Arc<DerivationTree>, WitnessError> {
    if q == 1 {
        return paper_sqrt_int(p, budget);
    }
    let too_big = || WitnessError::BudgetExceeded { estimate: u128::MAX, budget };
    let pq = p.checked_mul(q).ok_or_else(too_big)?;
    let body = paper_sqrt_int(pq, budget)?;
    let e = divide_e(body.dsq())?;
    let int = |m: u64| -> Result<Arc<DerivationTree>, WitnessError> {
        paper_sqrt_int(m.checked_mul(m).ok_or_else(too_big)?, budget)
    };
    let divided = DerivationTree::divide(body, q, int(e)?, int((q - 1) * e)?, int(q * e)?)?;
    DerivationTree::rational_composite(p, q, divided)
}

#[derive(Clone, Copy, Debug)]
enum Rule {
    Unit,
    Sqrt3(usize),
    Double(usize),
    Pyth(usize, usize),
    Divide(usize, u64),
}

/// Keys are `m` standing for the squared distance `m / l`.
struct Planner {
    l: usize,
    kmax: usize,
    target: Option<usize>,
    cost: Vec<u128>,
    rule: Vec<Option<Rule>>,
    done: Vec<bool>,
    finalized: Vec<usize>,
    heap: BinaryHeap<Reverse<(u128, usize)>>,
}

/// Least square `L` with `q | L`.
fn square_multiple(q: u64) -> u64 {
    let mut root = 1u64;
    let mut rest = q;
    let mut f = 2u64;
    while f * f <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(f) {
            rest /= f;
            e += 1;
        }
        root *= f.pow(e.div_ceil(2));
        f += 1;
    }
    root * rest
}

impl Planner {
    fn new(p: u64, q: u64, nmax: Option<u64>) -> Self {
        let root = square_multiple(q);
        let l = (root * root) as usize;
        let ceil_target = p.div_ceil(q);
        let nmax = nmax.unwrap_or_else(|| 64.max(4 * ceil_target + 4)) as usize;
        let kmax = nmax.saturating_mul(l);
        let m = (p as u128 * l as u128 / q as u128) as usize;
        let target = (1..=kmax).contains(&m).then_some(m);
        Planner {
            l,
            kmax,
            target,
            cost: vec![u128::MAX; kmax + 1],
            rule: vec![None; kmax + 1],
            done: vec![false; kmax + 1],
            finalized: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn offer(&mut self, m: usize, c: u128, r: Rule) {
        if (1..=self.kmax).contains(&m) && !self.done[m] && c < self.cost[m] {
            self.cost[m] = c;
            self.rule[m] = Some(r);
            self.heap.push(Reverse((c, m)));
        }
    }

    fn fin(&self, m: usize) -> Option<u128> {
        (m >= 1 && m <= self.kmax && self.done[m]).then(|| self.cost[m])
    }

    /// Integer key `n^2` if it lies in the universe.
    fn int_sq_key(&self, n: u64) -> Option<usize> {
        let sq = (n as usize).checked_mul(n as usize)?;
        sq.checked_mul(self.l).filter(|&m| m <= self.kmax)
    }

    fn try_divide(&mut self, d: usize, k: u64) {
        let Some(cd) = self.fin(d) else { return };
        let kk = (k * k) as usize;
        if !d.is_multiple_of(kk) {
            return;
        }
        let e = divide_e(&Rational::new((d as i64).into(), (self.l as i64).into()))
            .expect("positive key");
        let keys = [e, (k - 1) * e, k * e].map(|n| self.int_sq_key(n));
        let costs: Option<Vec<u128>> = keys.iter().map(|k| k.and_then(|m| self.fin(m))).collect();
        if let Some(cs) = costs {
            let c = cs.iter().fold(cd, |acc, c| acc.saturating_add(c.saturating_mul(2)));
            self.offer(d / kk, c, Rule::Divide(d, k));
        }
    }

    fn relax(&mut self, u: usize) {
        let cu = self.cost[u];
        self.offer(3 * u, cu.saturating_mul(11), Rule::Sqrt3(u));
        if let Some(c3) = self.fin(3 * u) {
            self.offer(4 * u, cu.saturating_mul(7).saturating_add(c3.saturating_mul(2)), Rule::Double(u));
        }
        if u.is_multiple_of(3) {
            let c = u / 3;
            if let Some(cc) = self.fin(c) {
                self.offer(4 * c, cc.saturating_mul(7).saturating_add(cu.saturating_mul(2)), Rule::Double(c));
            }
        }
        // Pythagorean gadget: a - b from a, b, 4b.
        let pyth = |ca: u128, cb: u128, c4: u128| ca.saturating_mul(2).saturating_add(cb.saturating_mul(2)).saturating_add(c4);
        let fins = self.finalized.clone();
        for &v in &fins {
            // u as a, v as b
            if v < u {
                if let Some(c4) = self.fin(4 * v) {
                    self.offer(u - v, pyth(cu, self.cost[v], c4), Rule::Pyth(u, v));
                }
            }
            // u as b, v as a
            if v > u {
                if let Some(c4) = self.fin(4 * u) {
                    self.offer(v - u, pyth(self.cost[v], cu, c4), Rule::Pyth(v, u));
                }
            }
            // u as 4b, v as a
            if u.is_multiple_of(4) && v > u / 4 {
                if let Some(cb) = self.fin(u / 4) {
                    self.offer(v - u / 4, pyth(self.cost[v], cb, cu), Rule::Pyth(v, u / 4));
                }
            }
        }
        let kmax = self.kmax;
        let ks: Vec<u64> = (2u64..).take_while(|&k| (k * k) as usize <= kmax).collect();
        for &k in &ks {
            self.try_divide(u, k);
        }
        // u as one of the integer children e^2, ((k-1)e)^2, (ke)^2
        if u.is_multiple_of(self.l) {
            let n = (u / self.l) as u64;
            let r = (n as f64).sqrt() as u64;
            let root = (r.saturating_sub(1)..=r + 1).find(|x| x * x == n);
            if let Some(root) = root {
                for &k in &ks {
                    for j in [1, k - 1, k] {
                        if root % j != 0 {
                            continue;
                        }
                        let e = root / j;
                        // children D with ceil_sqrt(D) = e: (e-1)^2 < D <= e^2
                        let lo = ((e - 1) * (e - 1)) as usize * self.l + 1;
                        let hi = ((e * e) as usize * self.l).min(self.kmax);
                        for d in lo..=hi {
                            self.try_divide(d, k);
                        }
                    }
                }
            }
        }
    }

    fn solve(mut self) -> Option<Arc<DerivationTree>> {
        let target = self.target?;
        self.offer(self.l, 1, Rule::Unit);
        while let Some(Reverse((c, u))) = self.heap.pop() {
            if self.done[u] || c != self.cost[u] {
                continue;
            }
            self.done[u] = true;
            self.finalized.push(u);
            if u == target {
                break;
            }
            self.relax(u);
        }
        if !self.done[target] {
            return None;
        }
        let mut memo = HashMap::new();
        Some(self.tree(target, &mut memo))
    }

    fn tree(&self, m: usize, memo: &mut HashMap<usize, Arc<DerivationTree>>) -> Arc<DerivationTree> {
        if let Some(t) = memo.get(&m) {
            return t.clone();
        }
        let rule = self.rule[m].expect("finalized keys have rules");
        let t = match rule {
            Rule::Unit => DerivationTree::unit(),
            Rule::Sqrt3(c) => DerivationTree::sqrt3(self.tree(c, memo)),
            Rule::Double(c) => DerivationTree::double(self.tree(c, memo), self.tree(3 * c, memo)).expect("planned double"),
            Rule::Pyth(a, b) => DerivationTree::pyth(self.tree(a, memo), self.tree(b, memo), self.tree(4 * b, memo)).expect("planned pyth"),
            Rule::Divide(d, k) => {
                let child = self.tree(d, memo);
                let e = divide_e(child.dsq()).expect("positive");
                let mut int = |n: u64| self.tree(self.int_sq_key(n).expect("planned key"), memo);
                let (a, b, c) = (int(e), int((k - 1) * e), int(k * e));
                DerivationTree::divide(child, k, a, b, c).expect("planned divide")
            }
        };
        debug_assert_eq!(
            format_rational(t.dsq()),
            format_rational(&Rational::new((m as i64).into(), (self.l as i64).into()))
        );
        memo.insert(m, t.clone());
        t
    }
}
