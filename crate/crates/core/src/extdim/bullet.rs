use serde::Serialize;

use super::addcat::AddCat;
use super::classes::{middle_summands, ExtTable, PairPlan};
use super::universe::{Universe, DEFAULT_MULT_BOUND};
use crate::error::{Error, Result};
use crate::homology::DEFAULT_ENUMERATION_BUDGET;
use crate::par::Parallelism;
use crate::rep::Representation;

#[derive(Clone, Debug)]
pub struct BulletOptions {
    /// Largest multiplicity of a single member in the sub-side sum.
    pub mult_bound: usize,
    /// Total number of extension orbits that may be visited.
    pub budget: u128,
    pub parallelism: Parallelism,
}

impl Default for BulletOptions {
    fn default() -> Self {
        BulletOptions {
            mult_bound: DEFAULT_MULT_BOUND,
            budget: DEFAULT_ENUMERATION_BUDGET as u128,
            parallelism: Parallelism::default(),
        }
    }
}

impl BulletOptions {
    pub fn with_mult_bound(mult_bound: usize) -> Self {
        BulletOptions {
            mult_bound,
            ..Default::default()
        }
    }
}

/// Multisets over `items` (index, dim, cap) with total dimension at most `budget`,
/// as (index, count) lists without zero counts. Includes the empty multiset.
fn multisets(items: &[(usize, usize, usize)], budget: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(
        items: &[(usize, usize, usize)],
        budget: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some((&(i, dim, cap), rest)) = items.split_first() else {
            out.push(cur.clone());
            return;
        };
        go(rest, budget, cur, out);
        let mut k = 1;
        while k <= cap && k * dim <= budget {
            cur.push((i, k));
            go(rest, budget - k * dim, cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    go(items, budget, &mut Vec::new(), &mut out);
    out
}

fn total_dim(t: &[Representation], counts: &[(usize, usize)]) -> usize {
    counts.iter().map(|&(i, k)| k * t[i].total_dim()).sum()
}

/// Statistics of one bullet computation.
#[derive(Clone, Debug, Default, Serialize)]
pub struct BulletStats {
    pub pairs: usize,
    pub orbits: u128,
}

/// `S1 • S2` inside the window of `u`: indecomposable summands of middle
/// terms of `0 -> T1 -> E -> T2 -> 0` with `T1` a sum from `s1` (each member
/// at most `mult_bound` times), `T2` a sum from `s2`, and `dim T1 + dim T2 <= d`.
pub fn bullet(u: &Universe, s1: &AddCat, s2: &AddCat, opts: &BulletOptions) -> Result<AddCat> {
    bullet_with_stats(u, s1, s2, opts).map(|(c, _)| c)
}

pub fn bullet_with_stats(
    u: &Universe,
    s1: &AddCat,
    s2: &AddCat,
    opts: &BulletOptions,
) -> Result<(AddCat, BulletStats)> {
    let d = u.dim_bound;
    let alg = &u.algebra;
    let subs = s1.restricted(d);
    let quots = s2.restricted(d);
    let mut result = subs.union(&quots);
    let mut stats = BulletStats::default();
    if subs.is_empty() || quots.is_empty() {
        return Ok((result, stats));
    }
    let table = ExtTable::new(alg, quots.members().to_vec(), subs.members().to_vec(), opts.parallelism);
    // members without Ext against the other side only ever split off
    let qi: Vec<(usize, usize, usize)> = table
        .active_quots()
        .into_iter()
        .map(|i| (i, table.quots[i].total_dim(), usize::MAX))
        .collect();
    let sj: Vec<(usize, usize, usize)> = table
        .active_subs()
        .into_iter()
        .map(|j| (j, table.subs[j].total_dim(), opts.mult_bound))
        .collect();
    if qi.is_empty() || sj.is_empty() {
        return Ok((result, stats));
    }
    let min_sub = sj.iter().map(|s| s.1).min().unwrap_or(0);
    let mut plans = Vec::new();
    for n in multisets(&qi, d.saturating_sub(min_sub)) {
        if n.is_empty() {
            continue;
        }
        let rest = d - total_dim(&table.quots, &n);
        for m in multisets(&sj, rest) {
            if m.is_empty() {
                continue;
            }
            let remaining = opts.budget.saturating_sub(stats.orbits);
            match PairPlan::new(&table, &n, &m, remaining) {
                Ok(Some(plan)) => {
                    stats.orbits += plan.count;
                    stats.pairs += 1;
                    plans.push(plan);
                }
                Ok(None) => {}
                Err(Error::BudgetExceeded { what, needed, .. }) => {
                    return Err(Error::budget(what, stats.orbits.saturating_add(needed), opts.budget));
                }
                Err(e) => return Err(e),
            }
        }
    }
    for summands in middle_summands(&table, &plans, opts.parallelism) {
        for f in summands {
            debug_assert!(f.total_dim() <= d);
            result.insert(f);
        }
    }
    result.sort();
    Ok((result, stats))
}

/// `[T]_n` inside the window: `L_1 = add T`, `L_k = T • L_{k-1}`.
pub fn layer(u: &Universe, t: &AddCat, n: usize, opts: &BulletOptions) -> Result<AddCat> {
    Ok(layers(u, t, n, opts)?
        .pop()
        .unwrap_or_else(|| AddCat::new(u.algebra.clone())))
}

/// `[T]_1, ..., [T]_n`.
pub fn layers(u: &Universe, t: &AddCat, n: usize, opts: &BulletOptions) -> Result<Vec<AddCat>> {
    let mut out: Vec<AddCat> = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    let base = t.restricted(u.dim_bound);
    out.push(base.clone());
    for _ in 1..n {
        let prev = out.last().unwrap();
        // once L_k = L_{k-1}, every later layer is the same
        let stalled = out.len() >= 2 && out[out.len() - 2].len() == prev.len();
        let next = if stalled {
            prev.clone()
        } else {
            bullet(u, &base, prev, opts)?
        };
        out.push(next);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum Containment {
    Holds,
    Counterexample(Representation),
}

impl Containment {
    pub fn holds(&self) -> bool {
        matches!(self, Containment::Holds)
    }
}

/// Whether every member of `c` lies in `[T]_n`; otherwise the first that does not.
pub fn bounded_containment(
    u: &Universe,
    c: &AddCat,
    t: &AddCat,
    n: usize,
    opts: &BulletOptions,
) -> Result<Containment> {
    let l = layer(u, t, n, opts)?;
    Ok(match c.members().iter().find(|m| !l.contains_indecomposable(m)) {
        Some(m) => Containment::Counterexample(m.clone()),
        None => Containment::Holds,
    })
}
