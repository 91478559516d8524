use std::sync::Arc;

use serde::Serialize;

use super::addcat::AddCat;
use super::universe::{generate_universe, Universe, UniverseOptions};
use crate::algebra::{projective, PathAlgebra};
use crate::error::Result;
use crate::homology::syzygy;
use crate::par;
use crate::rep::{decompose, DimensionVector};

/// `Ω^n(A-mod)` as seen through a universe: indecomposable summands of
/// `n`-th syzygies of its members, together with the projectives.
#[derive(Clone, Debug)]
pub struct SyzygyCategory {
    pub n: usize,
    pub dim_bound: usize,
    pub members: AddCat,
    pub source_size: usize,
    pub source_saturated: bool,
    pub source_clipped: bool,
}

pub fn syzygy_category(alg: &Arc<PathAlgebra>, n: usize, opts: &UniverseOptions) -> Result<SyzygyCategory> {
    let u = generate_universe(alg, opts)?;
    Ok(syzygy_category_from(&u, n, opts.parallelism))
}

pub fn syzygy_category_from(u: &Universe, n: usize, mode: par::Parallelism) -> SyzygyCategory {
    let alg = &u.algebra;
    let members = if n == 0 {
        u.members.clone()
    } else {
        let sources = u.members.members();
        let syz = par::map(mode, sources, |m| {
            decompose(&syzygy(m, n))
                .factors
                .into_iter()
                .map(|(f, _)| f)
                .collect::<Vec<_>>()
        });
        let mut cat = AddCat::new(alg.clone());
        for v in 0..alg.vertex_count() {
            cat.insert(projective(alg, v));
        }
        for f in syz.into_iter().flatten() {
            cat.insert(f);
        }
        cat.sort();
        cat
    };
    SyzygyCategory {
        n,
        dim_bound: u.dim_bound,
        members,
        source_size: u.members.len(),
        source_saturated: u.saturated,
        source_clipped: u.clipped,
    }
}

/// Evidence that `Ω^n(A-mod)` has finite type: the category computed from
/// universes at bounds `d` and `d + 1` agree, both universes saturated, and
/// every member is smaller than `d`.
#[derive(Clone, Debug, Serialize)]
pub struct SyzygyFiniteness {
    pub n: usize,
    pub dim_bound: usize,
    pub members: Vec<DimensionVector>,
    pub stable: bool,
    pub certified: bool,
    pub reason: String,
}

pub fn syzygy_finiteness(alg: &Arc<PathAlgebra>, n: usize, opts: &UniverseOptions) -> Result<SyzygyFiniteness> {
    let d = opts.dim_bound;
    let low = syzygy_category(alg, n, opts)?;
    let small = low.members.members().iter().all(|m| m.total_dim() < d);
    let members = low.members.dim_vectors();
    // the wider window is only worth building when the narrow one passes
    if !low.source_saturated || !small {
        let reason = if !low.source_saturated {
            "the source universe did not saturate".to_string()
        } else {
            format!("a member reaches dimension {d}")
        };
        return Ok(SyzygyFiniteness {
            n,
            dim_bound: d,
            members,
            stable: false,
            certified: false,
            reason,
        });
    }
    let mut wider = opts.clone();
    wider.dim_bound = d + 1;
    let high = syzygy_category(alg, n, &wider)?;
    let stable = low.members.len() == high.members.len() && low.members.is_subset(&high.members);
    let certified = stable && high.source_saturated;
    let reason = if certified {
        format!("identical at bounds {d} and {}, all members below {d}", d + 1)
    } else if !high.source_saturated {
        format!("the source universe at bound {} did not saturate", d + 1)
    } else {
        format!(
            "{} members at bound {d}, {} at bound {}",
            low.members.len(),
            high.members.len(),
            d + 1
        )
    };
    Ok(SyzygyFiniteness {
        n,
        dim_bound: d,
        members,
        stable,
        certified,
        reason,
    })
}
