//! Enumeration of middle terms `0 -> T1 -> E -> T2 -> 0` for sums of
//! indecomposables, one extension class per orbit of a general linear group.
//!
//! For `T1 = ⊕ Y_j^{m_j}` the group `∏ GL(m_j)` acts on
//! `Ext^1(T2, T1) = ⊕_j Ext^1(T2, Y_j)^{m_j}` by row operations, and classes
//! in one orbit have isomorphic middle terms. An orbit is a tuple of row
//! spaces; rank deficiency splits off copies of `Y_j`, so only full-rank
//! tuples are needed once smaller `T1` are enumerated separately. The same
//! holds with the roles of the two sides swapped, and each pair of sums uses
//! whichever side gives fewer orbits.

use std::sync::Arc;

use crate::algebra::PathAlgebra;
use crate::error::{Error, Result};
use crate::homology::{
    ext1_with, extension_middle, projective_cover, sum_presentations, ExtClass, ProjectivePresentation,
};
use crate::linalg::Matrix;
use crate::par::{self, Parallelism};
use crate::rep::{decompose, Morphism, Representation};

/// Number of `k`-dimensional subspaces of `GF(p)^n`, saturating.
pub fn gaussian_binomial(n: usize, k: usize, p: u32) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        let a = p.saturating_pow((n - i) as u32).saturating_sub(1);
        let b = p.saturating_pow((i + 1) as u32) - 1;
        num = match num.checked_mul(a) {
            Some(x) => x,
            None => return u128::MAX,
        };
        den *= b;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Every `r x n` matrix in reduced row echelon form of rank `r`.
pub fn rref_matrices(n: usize, r: usize, p: u32) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(r);
    choose_pivots(n, r, 0, &mut pivots, &mut |piv| {
        let mut free = Vec::new();
        for (row, &c) in piv.iter().enumerate() {
            for col in c + 1..n {
                if !piv.contains(&col) {
                    free.push((row, col));
                }
            }
        }
        let mut vals = vec![0u32; free.len()];
        loop {
            let mut m = vec![vec![0u32; n]; r];
            for (row, &c) in piv.iter().enumerate() {
                m[row][c] = 1;
            }
            for (&(row, col), &v) in free.iter().zip(&vals) {
                m[row][col] = v;
            }
            out.push(m);
            let mut k = 0;
            loop {
                if k == vals.len() {
                    return;
                }
                vals[k] += 1;
                if vals[k] < p {
                    break;
                }
                vals[k] = 0;
                k += 1;
            }
        }
    });
    out
}

fn choose_pivots(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == r {
        visit(cur);
        return;
    }
    for c in start..n {
        if n - c < r - cur.len() {
            break;
        }
        cur.push(c);
        choose_pivots(n, r, c + 1, cur, visit);
        cur.pop();
    }
}

/// Ext^1 bases between every quotient-side and sub-side indecomposable.
pub(crate) struct ExtTable {
    pub alg: Arc<PathAlgebra>,
    pub quots: Vec<Representation>,
    pub subs: Vec<Representation>,
    pub pres: Vec<Arc<ProjectivePresentation>>,
    /// `basis[i][j]`: cocycles `ΩX_i -> Y_j` spanning a complement of the
    /// extendable maps.
    pub basis: Vec<Vec<Vec<Morphism>>>,
}

impl ExtTable {
    pub fn new(
        alg: &Arc<PathAlgebra>,
        quots: Vec<Representation>,
        subs: Vec<Representation>,
        mode: Parallelism,
    ) -> Self {
        let pres: Vec<Arc<ProjectivePresentation>> = par::map(mode, &quots, |x| Arc::new(projective_cover(x)));
        let jobs: Vec<(usize, usize)> = (0..quots.len())
            .flat_map(|i| (0..subs.len()).map(move |j| (i, j)))
            .collect();
        let spaces = par::map(mode, &jobs, |&(i, j)| ext1_with(pres[i].clone(), &subs[j]).basis);
        let mut basis = vec![Vec::with_capacity(subs.len()); quots.len()];
        for ((i, _), b) in jobs.into_iter().zip(spaces) {
            basis[i].push(b);
        }
        ExtTable {
            alg: alg.clone(),
            quots,
            subs,
            pres,
            basis,
        }
    }

    /// Table for a single pair, reusing a known presentation of `x`.
    pub fn single(alg: &Arc<PathAlgebra>, pres: Arc<ProjectivePresentation>, y: &Representation) -> Self {
        let basis = ext1_with(pres.clone(), y).basis;
        ExtTable {
            alg: alg.clone(),
            quots: vec![pres.module.clone()],
            subs: vec![y.clone()],
            pres: vec![pres],
            basis: vec![vec![basis]],
        }
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.basis[i][j].len()
    }

    /// Quotient members with some nonzero Ext into the sub side.
    pub fn active_quots(&self) -> Vec<usize> {
        (0..self.quots.len())
            .filter(|&i| (0..self.subs.len()).any(|j| self.dim(i, j) > 0))
            .collect()
    }

    pub fn active_subs(&self) -> Vec<usize> {
        (0..self.subs.len())
            .filter(|&j| (0..self.quots.len()).any(|i| self.dim(i, j) > 0))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    Sub,
    Quotient,
}

/// A pair of sums `T2 = ⊕ X_i^{n_i}`, `T1 = ⊕ Y_j^{m_j}` with the side used
/// for orbit reduction and the per-member row-space lists.
pub(crate) struct PairPlan {
    pub quot_copies: Vec<usize>,
    pub sub_copies: Vec<usize>,
    pub side: Side,
    /// For each reduced member (in copy order) the candidate row spaces.
    pub groups: Vec<(usize, Vec<Vec<Vec<u32>>>)>,
    pub count: u128,
    presentation: Arc<ProjectivePresentation>,
    sub_sum: Representation,
}

fn expand(counts: &[(usize, usize)]) -> Vec<usize> {
    counts.iter().flat_map(|&(i, k)| std::iter::repeat_n(i, k)).collect()
}

impl PairPlan {
    /// Orbit count estimate for each side, before filtering degenerate classes.
    pub fn costs(t: &ExtTable, n: &[(usize, usize)], m: &[(usize, usize)]) -> (u128, u128) {
        let p = t.alg.characteristic();
        let sub_cost = m.iter().fold(1u128, |acc, &(j, mj)| {
            let f: usize = n.iter().map(|&(i, ni)| ni * t.dim(i, j)).sum();
            acc.saturating_mul(gaussian_binomial(f, mj, p))
        });
        let quot_cost = n.iter().fold(1u128, |acc, &(i, ni)| {
            let g: usize = m.iter().map(|&(j, mj)| mj * t.dim(i, j)).sum();
            acc.saturating_mul(gaussian_binomial(g, ni, p))
        });
        (sub_cost, quot_cost)
    }

    /// Builds the plan; `None` when no nondegenerate class exists.
    pub fn new(t: &ExtTable, n: &[(usize, usize)], m: &[(usize, usize)], budget: u128) -> Result<Option<PairPlan>> {
        let (sub_cost, quot_cost) = Self::costs(t, n, m);
        let (side, count) = if sub_cost <= quot_cost {
            (Side::Sub, sub_cost)
        } else {
            (Side::Quotient, quot_cost)
        };
        if count == 0 {
            return Ok(None);
        }
        if count > budget {
            return Err(Error::budget("extension orbit enumeration", count, budget));
        }
        let p = t.alg.characteristic();
        let groups = match side {
            Side::Sub => m
                .iter()
                .map(|&(j, mj)| {
                    let f: usize = n.iter().map(|&(i, ni)| ni * t.dim(i, j)).sum();
                    (j, rref_matrices(f, mj, p))
                })
                .collect(),
            Side::Quotient => n
                .iter()
                .map(|&(i, ni)| {
                    let g: usize = m.iter().map(|&(j, mj)| mj * t.dim(i, j)).sum();
                    (i, rref_matrices(g, ni, p))
                })
                .collect(),
        };
        let quot_copies = expand(n);
        let sub_copies = expand(m);
        let parts: Vec<_> = quot_copies.iter().map(|&i| t.pres[i].clone()).collect();
        let presentation = Arc::new(sum_presentations(&t.alg, &parts));
        let sub_sum = Representation::direct_sum_all(&t.alg, sub_copies.iter().map(|&j| &t.subs[j]));
        Ok(Some(PairPlan {
            quot_copies,
            sub_copies,
            side,
            groups,
            count,
            presentation,
            sub_sum,
        }))
    }

    /// Index tuples into `groups` whose classes are nondegenerate: no copy on
    /// the non-reduced side receives the zero component.
    pub fn class_indices(&self, t: &ExtTable) -> Vec<Vec<usize>> {
        let sizes: Vec<usize> = self.groups.iter().map(|(_, g)| g.len()).collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; sizes.len()];
        if sizes.contains(&0) {
            return out;
        }
        loop {
            if !self.degenerate(t, &idx) {
                out.push(idx.clone());
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < sizes[k] {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    fn other_copies(&self) -> &[usize] {
        match self.side {
            Side::Sub => &self.quot_copies,
            Side::Quotient => &self.sub_copies,
        }
    }

    fn block_dim(&self, t: &ExtTable, member: usize, other: usize) -> usize {
        match self.side {
            Side::Sub => t.dim(other, member),
            Side::Quotient => t.dim(member, other),
        }
    }

    fn degenerate(&self, t: &ExtTable, idx: &[usize]) -> bool {
        let others = self.other_copies();
        let mut hit = vec![false; others.len()];
        for (g, &k) in idx.iter().enumerate() {
            let (member, ref spaces) = self.groups[g];
            for row in &spaces[k] {
                let mut off = 0;
                for (o, &other) in others.iter().enumerate() {
                    let len = self.block_dim(t, member, other);
                    if row[off..off + len].iter().any(|&x| x != 0) {
                        hit[o] = true;
                    }
                    off += len;
                }
            }
        }
        !hit.iter().all(|&h| h)
    }

    /// The class selected by `idx`, as a cocycle on the summed presentation.
    pub fn class(&self, t: &ExtTable, idx: &[usize]) -> ExtClass {
        let n = t.alg.vertex_count();
        let p = t.alg.characteristic();
        let kernel = &self.presentation.kernel;
        let y = &self.sub_sum;
        // row offsets of sub copies and column offsets of kernel copies
        let sub_off = offsets(n, self.sub_copies.iter().map(|&j| t.subs[j].dims()));
        let quot_off = offsets(n, self.quot_copies.iter().map(|&i| t.pres[i].kernel.dims()));
        let mut maps: Vec<Matrix> = (0..n)
            .map(|v| Matrix::zeros(y.dims()[v], kernel.dims()[v], p))
            .collect();
        let mut place = |q: usize, s: usize, f: &Morphism| {
            for (v, m) in maps.iter_mut().enumerate() {
                m.set_block(sub_off[s][v], quot_off[q][v], f.at(v));
            }
        };
        // the reduced side's copies are filled row by row, in copy order
        let mut copy = 0;
        for (g, &k) in idx.iter().enumerate() {
            let (member, ref spaces) = self.groups[g];
            for row in &spaces[k] {
                let mut off = 0;
                for (o, &other) in self.other_copies().iter().enumerate() {
                    let (i, j, q, s) = match self.side {
                        Side::Sub => (other, member, o, copy),
                        Side::Quotient => (member, other, copy, o),
                    };
                    let b = &t.basis[i][j];
                    let coeffs = &row[off..off + b.len()];
                    off += b.len();
                    if coeffs.iter().all(|&c| c == 0) {
                        continue;
                    }
                    let mut f = b[0].scale(coeffs[0]);
                    for (bl, &c) in b.iter().zip(coeffs).skip(1) {
                        if c != 0 {
                            f = f.add(&bl.scale(c));
                        }
                    }
                    place(q, s, &f);
                }
                copy += 1;
            }
        }
        ExtClass {
            x: self.presentation.module.clone(),
            y: y.clone(),
            cocycle: Morphism::new(maps),
            presentation: self.presentation.clone(),
        }
    }
}

fn offsets<'a>(n: usize, dims: impl Iterator<Item = &'a [usize]>) -> Vec<Vec<usize>> {
    let mut acc = vec![0usize; n];
    let mut out = Vec::new();
    for d in dims {
        out.push(acc.clone());
        for v in 0..n {
            acc[v] += d[v];
        }
    }
    out
}

/// Indecomposable summands of the middle terms of one plan, computed in order.
pub(crate) fn plan_summands(t: &ExtTable, plan: &PairPlan) -> Vec<Representation> {
    plan.class_indices(t)
        .into_iter()
        .flat_map(|idx| {
            let e = extension_middle(&plan.class(t, &idx));
            decompose(&e.middle).factors.into_iter().map(|(f, _)| f)
        })
        .collect()
}

/// Indecomposable summands of the middle terms of every planned class,
/// one list per class in plan order.
pub(crate) fn middle_summands(t: &ExtTable, plans: &[PairPlan], mode: Parallelism) -> Vec<Vec<Representation>> {
    let jobs: Vec<(usize, Vec<usize>)> = plans
        .iter()
        .enumerate()
        .flat_map(|(k, plan)| plan.class_indices(t).into_iter().map(move |idx| (k, idx)))
        .collect();
    par::map(mode, &jobs, |(k, idx)| {
        let e = extension_middle(&plans[*k].class(t, idx));
        decompose(&e.middle).factors.into_iter().map(|(f, _)| f).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(6, 3, 2), 1395);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(gaussian_binomial(3, 0, 5), 1);
        assert_eq!(gaussian_binomial(2, 3, 2), 0);
    }

    #[test]
    fn rref_lists_match_counts() {
        for p in [2u32, 3] {
            for n in 0..5 {
                for r in 0..=n {
                    let list = rref_matrices(n, r, p);
                    assert_eq!(list.len() as u128, gaussian_binomial(n, r, p), "n={n} r={r} p={p}");
                    for m in list.iter().filter(|_| r > 0 && n > 0) {
                        let rows: Vec<Vec<i64>> = m.iter().map(|row| row.iter().map(|&x| x as i64).collect()).collect();
                        let mat = Matrix::from_rows(p, &rows);
                        assert_eq!(mat.rank(), r);
                        assert_eq!(mat.rref().0, mat);
                    }
                }
            }
        }
    }
}
