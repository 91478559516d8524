use std::sync::Arc;

use serde::Serialize;

use super::addcat::AddCat;
use super::classes::{plan_summands, ExtTable, PairPlan};
use crate::algebra::{injective, projective, simple, PathAlgebra};
use crate::error::{Error, Result};
use crate::homology::{cosyzygy, projective_cover, ProjectivePresentation, DEFAULT_ENUMERATION_BUDGET};
use crate::par::{self, Parallelism};
use crate::rep::{decompose, DimensionVector, Representation};

pub const DEFAULT_MEMBER_CAP: usize = 5000;
pub const DEFAULT_MULT_BOUND: usize = 2;
/// Pairwise non-isomorphic indecomposables sharing one dimension vector
/// needed before infinite type is suggested.
pub const HEURISTIC_THRESHOLD: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rules {
    pub syzygy: bool,
    pub cosyzygy: bool,
    pub extensions: bool,
    /// Largest `k` used for extensions `0 -> Y^k -> E -> X -> 0`.
    pub mult_bound: usize,
}

impl Default for Rules {
    fn default() -> Self {
        Rules {
            syzygy: true,
            cosyzygy: true,
            extensions: true,
            mult_bound: DEFAULT_MULT_BOUND,
        }
    }
}

#[derive(Clone, Debug)]
pub struct UniverseOptions {
    pub dim_bound: usize,
    pub rules: Rules,
    pub member_cap: usize,
    /// Orbit budget per extension pair.
    pub ext_budget: u128,
    /// Labelled seeds; all simples, projectives and injectives when `None`.
    pub seeds: Option<Vec<(String, Representation)>>,
    /// Stop after this many closure rounds, leaving the universe unsaturated.
    pub max_rounds: Option<usize>,
    pub parallelism: Parallelism,
}

impl UniverseOptions {
    pub fn new(dim_bound: usize) -> Self {
        UniverseOptions {
            dim_bound,
            rules: Rules::default(),
            member_cap: DEFAULT_MEMBER_CAP,
            ext_budget: DEFAULT_ENUMERATION_BUDGET as u128,
            seeds: None,
            max_rounds: None,
            parallelism: Parallelism::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Origin {
    Seed { label: String },
    Syzygy { of: usize },
    Cosyzygy { of: usize },
    Extension { quotient: usize, sub: usize, mult: usize },
}

/// One discovered member. Ids count discoveries; `Universe::members` is sorted.
#[derive(Clone, Debug, Serialize)]
pub struct LogEntry {
    pub id: usize,
    pub dims: DimensionVector,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub struct Universe {
    pub algebra: Arc<PathAlgebra>,
    pub dim_bound: usize,
    pub seeds: Vec<String>,
    pub rules: Rules,
    pub members: AddCat,
    pub log: Vec<LogEntry>,
    /// The last closure round produced no new member.
    pub saturated: bool,
    /// Some candidate was discarded for exceeding the dimension bound.
    pub clipped: bool,
    pub clipped_dims: Vec<DimensionVector>,
    pub rounds: usize,
}

impl Universe {
    /// Saturated, never clipped, every member strictly below the bound.
    pub fn is_certified_window(&self) -> bool {
        self.saturated && !self.clipped && self.members.members().iter().all(|m| m.total_dim() < self.dim_bound)
    }

    /// Largest family of non-isomorphic members sharing a dimension vector.
    pub fn heuristic_infinite(&self) -> Option<(usize, DimensionVector)> {
        match self.members.max_bucket() {
            (k, Some(dv)) if k >= HEURISTIC_THRESHOLD => Some((k, dv)),
            _ => None,
        }
    }
}

pub fn default_seeds(alg: &Arc<PathAlgebra>) -> Vec<(String, Representation)> {
    let mut seeds = Vec::new();
    for v in 0..alg.vertex_count() {
        let l = alg.vertex_label(v);
        seeds.push((format!("S{l}"), simple(alg, v)));
        seeds.push((format!("P{l}"), projective(alg, v)));
        seeds.push((format!("I{l}"), injective(alg, v)));
    }
    seeds
}

enum Job {
    Syzygy(usize),
    Cosyzygy(usize),
    Extension(usize, usize),
}

struct Found {
    modules: Vec<(Representation, Origin)>,
    clipped: Vec<DimensionVector>,
}

pub fn generate_universe(alg: &Arc<PathAlgebra>, opts: &UniverseOptions) -> Result<Universe> {
    let d = opts.dim_bound;
    let seeds = opts.seeds.clone().unwrap_or_else(|| default_seeds(alg));
    let mut cat = AddCat::new(alg.clone());
    let mut log = Vec::new();
    let mut clipped_dims = Vec::new();
    for (label, m) in &seeds {
        for (f, _) in decompose(m).factors {
            if f.total_dim() > d {
                clipped_dims.push(f.dim_vector());
            } else {
                let dims = f.dim_vector();
                if cat.insert(f) {
                    log.push(LogEntry {
                        id: log.len(),
                        dims,
                        origin: Origin::Seed { label: label.clone() },
                    });
                }
            }
        }
    }
    let mut pres: Vec<Arc<ProjectivePresentation>> = Vec::new();
    let mut start = 0;
    let mut rounds = 0;
    let mut saturated = true;
    while start < cat.len() {
        if opts.max_rounds.is_some_and(|r| rounds >= r) {
            saturated = false;
            break;
        }
        rounds += 1;
        let end = cat.len();
        if end > opts.member_cap {
            return Err(Error::budget("universe members", end as u128, opts.member_cap as u128));
        }
        let fresh: Vec<Representation> = cat.members()[start..end].to_vec();
        pres.extend(par::map(opts.parallelism, &fresh, |m| Arc::new(projective_cover(m))));

        let mut jobs = Vec::new();
        for x in start..end {
            if opts.rules.syzygy {
                jobs.push(Job::Syzygy(x));
            }
            if opts.rules.cosyzygy {
                jobs.push(Job::Cosyzygy(x));
            }
        }
        if opts.rules.extensions {
            for x in 0..end {
                for y in 0..end {
                    if x >= start || y >= start {
                        jobs.push(Job::Extension(x, y));
                    }
                }
            }
        }
        let members = cat.members();
        let found = par::map(opts.parallelism, &jobs, |job| -> Result<Found> {
            let mut out = Found {
                modules: Vec::new(),
                clipped: Vec::new(),
            };
            let keep = |m: Representation, origin: Origin, out: &mut Found| {
                if m.total_dim() > d {
                    out.clipped.push(m.dim_vector());
                } else {
                    out.modules.push((m, origin));
                }
            };
            match *job {
                Job::Syzygy(x) => {
                    for (f, _) in decompose(&pres[x].kernel).factors {
                        keep(f, Origin::Syzygy { of: x }, &mut out);
                    }
                }
                Job::Cosyzygy(x) => {
                    for (f, _) in decompose(&cosyzygy(&members[x], 1)).factors {
                        keep(f, Origin::Cosyzygy { of: x }, &mut out);
                    }
                }
                Job::Extension(x, y) => {
                    let table = ExtTable::single(alg, pres[x].clone(), &members[y]);
                    if table.dim(0, 0) == 0 {
                        return Ok(out);
                    }
                    let (dx, dy) = (members[x].total_dim(), members[y].total_dim());
                    if dx + dy > d {
                        // a nonsplit extension the window cannot hold
                        let mut dv = members[x].dims().to_vec();
                        for (a, b) in dv.iter_mut().zip(members[y].dims()) {
                            *a += b;
                        }
                        out.clipped.push(DimensionVector(dv));
                        return Ok(out);
                    }
                    for k in 1..=opts.rules.mult_bound {
                        if dx + k * dy > d {
                            break;
                        }
                        if let Some(plan) = PairPlan::new(&table, &[(0, 1)], &[(0, k)], opts.ext_budget)? {
                            for f in plan_summands(&table, &plan) {
                                keep(
                                    f,
                                    Origin::Extension {
                                        quotient: x,
                                        sub: y,
                                        mult: k,
                                    },
                                    &mut out,
                                );
                            }
                        }
                    }
                }
            }
            Ok(out)
        });
        start = end;
        for f in found {
            let f = f?;
            clipped_dims.extend(f.clipped);
            for (m, origin) in f.modules {
                let dims = m.dim_vector();
                if cat.insert(m) {
                    log.push(LogEntry {
                        id: log.len(),
                        dims,
                        origin,
                    });
                }
            }
        }
    }
    clipped_dims.sort();
    clipped_dims.dedup();
    let mut members = cat;
    members.sort();
    Ok(Universe {
        algebra: alg.clone(),
        dim_bound: d,
        seeds: seeds.into_iter().map(|(l, _)| l).collect(),
        rules: opts.rules.clone(),
        members,
        log,
        saturated,
        clipped: !clipped_dims.is_empty(),
        clipped_dims,
        rounds,
    })
}
