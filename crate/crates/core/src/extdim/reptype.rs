use std::sync::Arc;

use serde::Serialize;

use super::universe::{generate_universe, Universe, UniverseOptions, HEURISTIC_THRESHOLD};
use crate::algebra::PathAlgebra;
use crate::error::Result;
use crate::rep::DimensionVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TitsClass {
    Dynkin,
    Euclidean,
    WildIndefinite,
    NotHereditary,
}

impl std::fmt::Display for TitsClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TitsClass::Dynkin => "Dynkin",
            TitsClass::Euclidean => "Euclidean",
            TitsClass::WildIndefinite => "wild-indefinite",
            TitsClass::NotHereditary => "not-hereditary",
        })
    }
}

/// Determinant of an integer matrix by fraction-free elimination.
fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Symmetrised Euler form `2I - (A + A^T)` of the quiver.
pub fn euler_form(alg: &PathAlgebra) -> Vec<Vec<i64>> {
    let n = alg.vertex_count();
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for a in alg.quiver().arrows() {
        c[a.source][a.target] -= 1;
        c[a.target][a.source] -= 1;
    }
    c
}

fn components(alg: &PathAlgebra) -> Vec<Vec<usize>> {
    let n = alg.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for a in alg.quiver().arrows() {
        let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
        parent[x] = y;
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

fn minor(c: &[Vec<i64>], idx: &[usize]) -> i128 {
    det(idx
        .iter()
        .map(|&i| idx.iter().map(|&j| c[i][j] as i128).collect())
        .collect())
}

/// Definiteness of a connected component: `Some(true)` positive definite,
/// `Some(false)` positive semidefinite but singular, `None` otherwise.
fn definiteness(c: &[Vec<i64>], comp: &[usize]) -> Option<bool> {
    let leading_positive = (1..=comp.len()).all(|k| minor(c, &comp[..k]) > 0);
    if leading_positive {
        return Some(true);
    }
    // semidefinite iff every principal minor is nonnegative
    let k = comp.len();
    assert!(k < 25, "component too large for the principal-minor test");
    for mask in 1u32..(1u32 << k) {
        let idx: Vec<usize> = (0..k).filter(|&b| mask >> b & 1 == 1).map(|b| comp[b]).collect();
        if minor(c, &idx) < 0 {
            return None;
        }
    }
    Some(false)
}

/// Classifies a relation-free quiver by its quadratic form, component by component.
pub fn tits_classification(alg: &PathAlgebra) -> TitsClass {
    tits_with_witness(alg).0
}

/// The class together with a description of the deciding component.
pub fn tits_with_witness(alg: &PathAlgebra) -> (TitsClass, String) {
    if !alg.is_hereditary_path_algebra() {
        return (TitsClass::NotHereditary, "the algebra has relations".into());
    }
    let c = euler_form(alg);
    let mut class = TitsClass::Dynkin;
    let mut witness = "every component has a positive definite form".to_string();
    for comp in components(alg) {
        let labels: Vec<&str> = comp.iter().map(|&v| alg.vertex_label(v)).collect();
        match definiteness(&c, &comp) {
            Some(true) => {}
            Some(false) => {
                if class == TitsClass::Dynkin {
                    class = TitsClass::Euclidean;
                    witness = format!("component {{{}}} has a semidefinite singular form", labels.join(","));
                }
            }
            None => {
                return (
                    TitsClass::WildIndefinite,
                    format!("component {{{}}} has an indefinite form", labels.join(",")),
                )
            }
        }
    }
    (class, witness)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RepTypeVerdict {
    Finite { members: Vec<DimensionVector> },
    Infinite { witness: String },
    Unknown { reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepTypeMethod {
    TitsForm,
    Enumeration,
    HeuristicCount,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepTypeCertificate {
    #[serde(flatten)]
    pub verdict: RepTypeVerdict,
    pub method: RepTypeMethod,
    pub dim_bound: usize,
    pub universe_size: Option<usize>,
    pub saturated: Option<bool>,
    pub clipped: Option<bool>,
}

impl RepTypeCertificate {
    /// True only for verdicts that may feed the bound engine.
    pub fn is_certified(&self) -> bool {
        !matches!(self.method, RepTypeMethod::HeuristicCount) && !matches!(self.verdict, RepTypeVerdict::Unknown { .. })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.verdict, RepTypeVerdict::Finite { .. })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.verdict, RepTypeVerdict::Infinite { .. })
    }

    pub fn member_count(&self) -> Option<usize> {
        match &self.verdict {
            RepTypeVerdict::Finite { members } => Some(members.len()),
            _ => None,
        }
    }
}

fn finite_from(u: &Universe, method: RepTypeMethod) -> RepTypeCertificate {
    RepTypeCertificate {
        verdict: RepTypeVerdict::Finite {
            members: u.members.dim_vectors(),
        },
        method,
        dim_bound: u.dim_bound,
        universe_size: Some(u.members.len()),
        saturated: Some(u.saturated),
        clipped: Some(u.clipped),
    }
}

pub fn rep_type_certificate(alg: &Arc<PathAlgebra>, opts: &UniverseOptions) -> Result<RepTypeCertificate> {
    let d = opts.dim_bound;
    let (class, witness) = tits_with_witness(alg);
    match class {
        TitsClass::Euclidean | TitsClass::WildIndefinite => Ok(RepTypeCertificate {
            verdict: RepTypeVerdict::Infinite {
                witness: format!("{class}: {witness}"),
            },
            method: RepTypeMethod::TitsForm,
            dim_bound: d,
            universe_size: None,
            saturated: None,
            clipped: None,
        }),
        TitsClass::Dynkin => {
            let u = generate_universe(alg, opts)?;
            let mut cert = finite_from(&u, RepTypeMethod::TitsForm);
            if !u.is_certified_window() {
                // the verdict stands; the member list is only what the window holds
                cert.universe_size = Some(u.members.len());
            }
            Ok(cert)
        }
        TitsClass::NotHereditary => {
            let u = generate_universe(alg, opts)?;
            if u.is_certified_window() {
                return Ok(finite_from(&u, RepTypeMethod::Enumeration));
            }
            let base = RepTypeCertificate {
                verdict: RepTypeVerdict::Unknown {
                    reason: format!(
                        "universe at dimension bound {d} is {}",
                        if !u.saturated {
                            "unsaturated"
                        } else if u.clipped {
                            "clipped"
                        } else {
                            "touching the bound"
                        }
                    ),
                },
                method: RepTypeMethod::Enumeration,
                dim_bound: d,
                universe_size: Some(u.members.len()),
                saturated: Some(u.saturated),
                clipped: Some(u.clipped),
            };
            Ok(match u.heuristic_infinite() {
                Some((k, dv)) => RepTypeCertificate {
                    verdict: RepTypeVerdict::Infinite {
                        witness: format!(
                            "{k} >= {HEURISTIC_THRESHOLD} non-isomorphic indecomposables with dimension vector {dv}"
                        ),
                    },
                    method: RepTypeMethod::HeuristicCount,
                    ..base
                },
                None => base,
            })
        }
    }
}
