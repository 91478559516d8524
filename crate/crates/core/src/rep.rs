//! Finite-dimensional left modules as quiver representations.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::PathAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Subspace};

pub const DEFAULT_ISO_BUDGET: u64 = 1 << 16;
pub const DEFAULT_ISO_SAMPLES: usize = 4096;
/// Endomorphism rings with at most this many elements are searched
/// exhaustively when certifying that a summand is indecomposable.
pub const DEFAULT_LOCAL_BUDGET: u64 = 1 << 12;

/// Dimension vector, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DimensionVector(pub Vec<usize>);

impl DimensionVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone)]
pub struct Representation {
    alg: Arc<PathAlgebra>,
    dims: Vec<usize>,
    /// One matrix per arrow, `dims[target] x dims[source]`.
    action: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_algebra(&other.alg) && self.dims == other.dims && self.action == other.action
    }
}

impl Eq for Representation {}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{}", DimensionVector(self.dims.clone()))?;
        let mut m = f.debug_map();
        for (a, mat) in self.alg.quiver().arrows().iter().zip(&self.action) {
            m.entry(&a.name, &mat.to_rows());
        }
        m.finish()
    }
}

/// A reason a candidate representation is not a module over the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    UnknownVertex,
    UnknownArrow,
    MissingArrow,
    Shape,
    Entry,
    Relation { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl Representation {
    pub(crate) fn from_parts_unchecked(alg: Arc<PathAlgebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Self {
        debug_assert_eq!(dims.len(), alg.vertex_count());
        debug_assert_eq!(action.len(), alg.quiver().arrow_count());
        Representation { alg, dims, action }
    }

    /// Builds a representation, checking shapes and every relation.
    pub fn new(
        alg: Arc<PathAlgebra>,
        dims: Vec<usize>,
        action: Vec<Matrix>,
    ) -> std::result::Result<Self, Vec<Violation>> {
        let mut violations = Vec::new();
        if dims.len() != alg.vertex_count() || action.len() != alg.quiver().arrow_count() {
            violations.push(Violation {
                kind: ViolationKind::Shape,
                message: "vertex or arrow count does not match the quiver".into(),
            });
            return Err(violations);
        }
        for (a, m) in alg.quiver().arrows().iter().zip(&action) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] || m.characteristic() != alg.characteristic() {
                violations.push(Violation {
                    kind: ViolationKind::Shape,
                    message: format!(
                        "arrow {} needs a {}x{} matrix, got {}x{}",
                        a.name,
                        dims[a.target],
                        dims[a.source],
                        m.rows(),
                        m.cols()
                    ),
                });
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        let rep = Representation { alg, dims, action };
        violations.extend(rep.relation_violations());
        if violations.is_empty() {
            Ok(rep)
        } else {
            Err(violations)
        }
    }

    fn relation_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let q = self.alg.quiver();
        for (i, rel) in self.alg.relations().iter().enumerate() {
            let (s, t) = (rel.source(q), rel.target(q));
            let mut acc = Matrix::zeros(self.dims[t], self.dims[s], self.alg.characteristic());
            for (c, path) in &rel.terms {
                acc.add_scaled(&self.path_matrix(path), *c);
            }
            if !acc.is_zero() {
                let text = rel
                    .terms
                    .iter()
                    .map(|(c, path)| {
                        let names: Vec<&str> = path.iter().map(|&a| q.arrow(a).name.as_str()).collect();
                        format!("{c}*{}", names.join("."))
                    })
                    .collect::<Vec<_>>()
                    .join(" + ");
                out.push(Violation {
                    kind: ViolationKind::Relation { index: i },
                    message: format!("relation {i} ({text}) does not vanish"),
                });
            }
        }
        out
    }

    pub fn zero_action(alg: Arc<PathAlgebra>, dims: Vec<usize>) -> Self {
        let p = alg.characteristic();
        let action = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source], p))
            .collect();
        Representation { alg, dims, action }
    }

    pub fn zero(alg: Arc<PathAlgebra>) -> Self {
        let n = alg.vertex_count();
        Self::zero_action(alg, vec![0; n])
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        &self.alg
    }

    pub fn characteristic(&self) -> u32 {
        self.alg.characteristic()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimensionVector {
        DimensionVector(self.dims.clone())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.action[arrow]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// The linear map of a path (arrow indices source to target).
    pub fn path_matrix(&self, path: &[usize]) -> Matrix {
        let q = self.alg.quiver();
        let s = q.arrow(path[0]).source;
        let mut m = Matrix::identity(self.dims[s], self.characteristic());
        for &a in path {
            m = self.action[a].mul(&m);
        }
        m
    }

    pub fn check_same_algebra(&self, other: &Representation) -> Result<()> {
        if self.alg.same_algebra(&other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        debug_assert!(self.alg.same_algebra(&other.alg));
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Representation {
            alg: self.alg.clone(),
            dims,
            action,
        }
    }

    pub fn direct_sum_all<'a>(
        alg: &Arc<PathAlgebra>,
        parts: impl IntoIterator<Item = &'a Representation>,
    ) -> Representation {
        parts
            .into_iter()
            .fold(Representation::zero(alg.clone()), |acc, m| acc.direct_sum(m))
    }

    pub fn power(&self, k: usize) -> Representation {
        Representation::direct_sum_all(&self.alg, std::iter::repeat_n(self, k))
    }

    /// `D(M)` as a module over `target`, which must be the opposite algebra.
    pub fn dual_over(&self, target: Arc<PathAlgebra>) -> Representation {
        let action = self.action.iter().map(Matrix::transpose).collect();
        Representation {
            alg: target,
            dims: self.dims.clone(),
            action,
        }
    }

    /// `D(M) = Hom_k(M, k)` over the opposite algebra.
    pub fn dual(&self) -> Representation {
        self.dual_over(self.alg.opposite())
    }

    /// Canonical serialization: dimension vector then all matrix entries.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out =
            Vec::with_capacity(2 * (self.dims.len() + self.action.iter().map(|m| m.data().len()).sum::<usize>()));
        for &d in &self.dims {
            out.extend_from_slice(&(d as u16).to_be_bytes());
        }
        for m in &self.action {
            for &x in m.data() {
                out.extend_from_slice(&(x as u16).to_be_bytes());
            }
        }
        out
    }

    /// Sort key used for every deterministic ordering of modules.
    pub fn order_key(&self) -> (usize, Vec<usize>, Vec<u8>) {
        (self.total_dim(), self.dims.clone(), self.canonical_bytes())
    }

    /// Subrepresentation spanned by the columns of `basis[v]` at each vertex.
    /// The subspaces must be invariant under the arrows.
    pub fn subrepresentation(&self, basis: &[Matrix]) -> (Representation, Morphism) {
        let p = self.characteristic();
        let dims: Vec<usize> = basis.iter().map(Matrix::cols).collect();
        let action = self
            .alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                if dims[a.source] == 0 || dims[a.target] == 0 {
                    return Matrix::zeros(dims[a.target], dims[a.source], p);
                }
                let image = self.action[ai].mul(&basis[a.source]);
                basis[a.target]
                    .solve_matrix(&image)
                    .expect("subspace is invariant under the arrows")
            })
            .collect();
        let sub = Representation {
            alg: self.alg.clone(),
            dims,
            action,
        };
        let incl = Morphism::new(basis.to_vec());
        (sub, incl)
    }

    /// Quotient by the invariant subspaces spanned by `basis[v]`; returns the
    /// quotient, the projection, and the complement coordinates used as its basis.
    pub fn quotient(&self, basis: &[Matrix]) -> (Representation, Morphism, Vec<Vec<usize>>) {
        let p = self.characteristic();
        let subspaces: Vec<Subspace> = basis.iter().map(Subspace::column_span).collect();
        let proj: Vec<Matrix> = subspaces.iter().map(Subspace::quotient_map).collect();
        let comps: Vec<Vec<usize>> = subspaces.iter().map(Subspace::complement_coordinates).collect();
        let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
        let action = self
            .alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                if dims[a.source] == 0 || dims[a.target] == 0 {
                    return Matrix::zeros(dims[a.target], dims[a.source], p);
                }
                proj[a.target].mul(&self.action[ai].select_columns(&comps[a.source]))
            })
            .collect();
        let q = Representation {
            alg: self.alg.clone(),
            dims,
            action,
        };
        (q, Morphism::new(proj), comps)
    }

    /// Radical `sum_a Im(M_a)`, top `M / rad M`, with inclusion and projection.
    pub fn top_and_radical(&self) -> TopRadical {
        let p = self.characteristic();
        let n = self.dims.len();
        let q = self.alg.quiver();
        let mut rad_basis = Vec::with_capacity(n);
        for v in 0..n {
            let mut gens = Matrix::zeros(self.dims[v], 0, p);
            for (ai, a) in q.arrows().iter().enumerate() {
                if a.target == v && self.dims[a.source] > 0 {
                    gens = gens.hstack(&self.action[ai]);
                }
            }
            rad_basis.push(Subspace::column_span(&gens).basis_columns());
        }
        let (rad, inclusion) = self.subrepresentation(&rad_basis);
        let (top, projection, _) = self.quotient(&rad_basis);
        TopRadical {
            top,
            rad,
            projection,
            inclusion,
        }
    }

    pub fn to_module_spec(&self, algebra_ref: &str) -> ModuleSpec {
        let q = self.alg.quiver();
        ModuleSpec {
            algebra: algebra_ref.to_string(),
            dim: q
                .vertices()
                .iter()
                .zip(&self.dims)
                .map(|(v, &d)| (v.clone(), d))
                .collect(),
            action: q
                .arrows()
                .iter()
                .zip(&self.action)
                .map(|(a, m)| {
                    (
                        a.name.clone(),
                        m.to_rows()
                            .into_iter()
                            .map(|r| r.into_iter().map(i64::from).collect())
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn is_indecomposable(&self) -> bool {
        let d = decompose(self);
        d.factors.len() == 1 && d.factors[0].1 == 1
    }
}

pub struct TopRadical {
    pub top: Representation,
    pub rad: Representation,
    pub projection: Morphism,
    pub inclusion: Morphism,
}

/// On-disk module description (JSON).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub algebra: String,
    pub dim: BTreeMap<String, usize>,
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

impl ModuleSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("module serializes")
    }
}

/// Checks a module file against an algebra, collecting every problem.
pub fn validate(alg: &Arc<PathAlgebra>, spec: &ModuleSpec) -> std::result::Result<Representation, Vec<Violation>> {
    let q = alg.quiver();
    let p = alg.characteristic();
    let mut violations = Vec::new();
    let mut dims = vec![0usize; q.vertex_count()];
    for (label, &d) in &spec.dim {
        match q.vertex_index(label) {
            Some(v) => dims[v] = d,
            None => violations.push(Violation {
                kind: ViolationKind::UnknownVertex,
                message: format!("unknown vertex {label:?}"),
            }),
        }
    }
    for name in spec.action.keys() {
        if q.arrow_index(name).is_none() {
            violations.push(Violation {
                kind: ViolationKind::UnknownArrow,
                message: format!("unknown arrow {name:?}"),
            });
        }
    }
    let mut action = Vec::with_capacity(q.arrow_count());
    for a in q.arrows() {
        let (r, c) = (dims[a.target], dims[a.source]);
        match spec.action.get(&a.name) {
            None if r == 0 || c == 0 => action.push(Matrix::zeros(r, c, p)),
            None => {
                violations.push(Violation {
                    kind: ViolationKind::MissingArrow,
                    message: format!("arrow {} has no matrix", a.name),
                });
                action.push(Matrix::zeros(r, c, p));
            }
            Some(rows) => {
                // a 0-row matrix may be written as [] whatever its column count
                let m = if r == 0 && rows.is_empty() {
                    Some(Matrix::zeros(0, c, p))
                } else {
                    Matrix::from_rows_shaped(p, r, c, rows)
                };
                match m {
                    Some(m) => action.push(m),
                    None => {
                        violations.push(Violation {
                            kind: ViolationKind::Shape,
                            message: format!("arrow {} needs a {r}x{c} matrix", a.name),
                        });
                        action.push(Matrix::zeros(r, c, p));
                    }
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    Representation::new(alg.clone(), dims, action)
}

/// A module homomorphism, one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    maps: Vec<Matrix>,
}

impl Morphism {
    pub fn new(maps: Vec<Matrix>) -> Self {
        Morphism { maps }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let p = source.characteristic();
        Morphism {
            maps: source
                .dims
                .iter()
                .zip(&target.dims)
                .map(|(&s, &t)| Matrix::zeros(t, s, p))
                .collect(),
        }
    }

    pub fn identity(m: &Representation) -> Self {
        let p = m.characteristic();
        Morphism {
            maps: m.dims.iter().map(|&d| Matrix::identity(d, p)).collect(),
        }
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn at(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Morphism) -> Morphism {
        Morphism {
            maps: self.maps.iter().zip(&first.maps).map(|(g, f)| g.mul(f)).collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        Morphism {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Morphism {
        Morphism {
            maps: self.maps.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn pow(&self, e: u64) -> Morphism {
        Morphism {
            maps: self.maps.iter().map(|m| m.pow(e)).collect(),
        }
    }

    /// Flattened entries, vertex by vertex (row-major).
    pub fn flatten(&self) -> Vec<u32> {
        self.maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    /// Checks `f_t * M_a = N_a * f_s` for every arrow.
    pub fn intertwines(&self, source: &Representation, target: &Representation) -> bool {
        source
            .alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(ai, a)| self.maps[a.target].mul(&source.action[ai]) == target.action[ai].mul(&self.maps[a.source]))
    }

    /// Block column `[f; g]` into a direct sum target.
    pub fn stack(&self, other: &Morphism) -> Morphism {
        Morphism {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.vstack(b)).collect(),
        }
    }

    /// Block row `[f, g]` out of a direct sum source.
    pub fn join(&self, other: &Morphism) -> Morphism {
        Morphism {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.hstack(b)).collect(),
        }
    }
}

/// A basis of `Hom_A(M, N)`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<Morphism>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `sum_i coeffs[i] * basis[i]`.
    pub fn combination(&self, coeffs: &[u32]) -> Morphism {
        let mut acc = Morphism::zero(&self.source, &self.target);
        for (f, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                for (a, b) in acc.maps.iter_mut().zip(&f.maps) {
                    a.add_scaled(b, c);
                }
            }
        }
        acc
    }
}

/// Solves the intertwining system `f_t M_a = N_a f_s` for all arrows.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomBasis> {
    m.check_same_algebra(n)?;
    Ok(hom_space_unchecked(m, n))
}

pub(crate) fn hom_space_unchecked(m: &Representation, n: &Representation) -> HomBasis {
    let p = m.characteristic();
    let nv = m.dims.len();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    let basis = if unknowns == 0 {
        Vec::new()
    } else {
        let arrows = m.alg.quiver().arrows();
        let eq_count: usize = arrows.iter().map(|a| n.dims[a.target] * m.dims[a.source]).sum();
        let mut sys = Matrix::zeros(eq_count, unknowns, p);
        let mut row = 0;
        for (ai, a) in arrows.iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let (ma, na) = (&m.action[ai], &n.action[ai]);
            for i in 0..n.dims[t] {
                for j in 0..m.dims[s] {
                    // sum_k f_t[i,k] M_a[k,j]
                    for k in 0..m.dims[t] {
                        let c = ma.get(k, j);
                        if c != 0 {
                            let col = offset[t] + i * m.dims[t] + k;
                            sys.set(row, col, linalg::add_mod(sys.get(row, col), c, p));
                        }
                    }
                    // - sum_k N_a[i,k] f_s[k,j]
                    for k in 0..n.dims[s] {
                        let c = na.get(i, k);
                        if c != 0 {
                            let col = offset[s] + k * m.dims[s] + j;
                            sys.set(row, col, linalg::sub_mod(sys.get(row, col), c, p));
                        }
                    }
                    row += 1;
                }
            }
        }
        sys.kernel_basis()
            .into_iter()
            .map(|v| {
                Morphism::new(
                    (0..nv)
                        .map(|u| Matrix::from_vec(n.dims[u], m.dims[u], p, v[offset[u]..offset[u + 1]].to_vec()))
                        .collect(),
                )
            })
            .collect()
    };
    HomBasis {
        source: m.clone(),
        target: n.clone(),
        basis,
    }
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom_space(m, n)?.dim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoVerdict {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct IsoOptions {
    /// Exhaustive search when `p^dim Hom <= budget`.
    pub budget: u64,
    /// Random samples drawn otherwise.
    pub samples: usize,
    pub seed: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            budget: DEFAULT_ISO_BUDGET,
            samples: DEFAULT_ISO_SAMPLES,
            seed: 0,
        }
    }
}

/// Enumerates all coefficient vectors of length `k` over GF(p), in
/// lexicographic order, stopping early when `visit` returns true.
pub fn for_each_vector(k: usize, p: u32, mut visit: impl FnMut(&[u32]) -> bool) -> bool {
    let mut v = vec![0u32; k];
    loop {
        if visit(&v) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == k {
                return false;
            }
            v[i] += 1;
            if v[i] == p {
                v[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

pub fn field_power(p: u32, k: usize) -> Option<u64> {
    (p as u64).checked_pow(k as u32)
}

/// Isomorphism test by searching `Hom(M, N)` for an invertible element.
pub fn is_iso(m: &Representation, n: &Representation, opts: &IsoOptions) -> Result<IsoVerdict> {
    m.check_same_algebra(n)?;
    if m.dims != n.dims {
        return Ok(IsoVerdict::No);
    }
    if m.is_zero() {
        return Ok(IsoVerdict::Yes);
    }
    let h = hom_space_unchecked(m, n);
    if h.basis.iter().any(Morphism::is_invertible) {
        return Ok(IsoVerdict::Yes);
    }
    let p = m.characteristic();
    match field_power(p, h.dim()) {
        Some(count) if count <= opts.budget => {
            let found = for_each_vector(h.dim(), p, |c| h.combination(c).is_invertible());
            Ok(if found { IsoVerdict::Yes } else { IsoVerdict::No })
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut c = vec![0u32; h.dim()];
            for _ in 0..opts.samples {
                for x in c.iter_mut() {
                    *x = rng.gen_range(0..p);
                }
                if h.combination(&c).is_invertible() {
                    return Ok(IsoVerdict::Yes);
                }
            }
            Ok(IsoVerdict::Unknown)
        }
    }
}

/// Exact isomorphism test for two modules with local endomorphism rings:
/// they are isomorphic iff some `g * f` over basis pairs of `Hom(M,N)` and
/// `Hom(N,M)` is invertible.
pub fn iso_indecomposables(m: &Representation, n: &Representation) -> bool {
    if m.dims != n.dims {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let hmn = hom_space_unchecked(m, n);
    if hmn.basis.is_empty() {
        return false;
    }
    if hmn.basis.iter().any(Morphism::is_invertible) {
        return true;
    }
    let hnm = hom_space_unchecked(n, m);
    hmn.basis
        .iter()
        .any(|f| hnm.basis.iter().any(|g| g.compose(f).is_invertible()))
}

/// Direct-sum decomposition into indecomposables with multiplicities.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub factors: Vec<(Representation, usize)>,
    /// False when some summand's endomorphism ring was too large to search
    /// exhaustively and was accepted as local after sampling.
    pub certified: bool,
}

impl Decomposition {
    pub fn summands(&self) -> impl Iterator<Item = &Representation> {
        self.factors.iter().flat_map(|(m, k)| std::iter::repeat_n(m, *k))
    }

    pub fn summand_count(&self) -> usize {
        self.factors.iter().map(|(_, k)| k).sum()
    }
}

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    pub local_budget: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            local_budget: DEFAULT_LOCAL_BUDGET,
            samples: 256,
            seed: 0,
        }
    }
}

pub fn decompose(m: &Representation) -> Decomposition {
    decompose_with(m, &DecomposeOptions::default())
}

pub fn decompose_with(m: &Representation, opts: &DecomposeOptions) -> Decomposition {
    let mut pieces = Vec::new();
    let mut certified = true;
    peel(m, opts, &mut pieces, &mut certified);
    let mut factors: Vec<(Representation, usize)> = Vec::new();
    for piece in pieces {
        match factors.iter_mut().find(|(f, _)| iso_indecomposables(f, &piece)) {
            Some((f, k)) => {
                *k += 1;
                if piece.canonical_bytes() < f.canonical_bytes() {
                    *f = piece;
                }
            }
            None => factors.push((piece, 1)),
        }
    }
    factors.sort_by_key(|(a, _)| a.order_key());
    Decomposition { factors, certified }
}

fn peel(m: &Representation, opts: &DecomposeOptions, out: &mut Vec<Representation>, certified: &mut bool) {
    if m.is_zero() {
        return;
    }
    match find_splitting(m, opts) {
        Split::Found(a, b) => {
            let (sa, _) = m.subrepresentation(&a);
            let (sb, _) = m.subrepresentation(&b);
            peel(&sa, opts, out, certified);
            peel(&sb, opts, out, certified);
        }
        Split::Local { exhaustive } => {
            *certified &= exhaustive;
            out.push(m.clone());
        }
    }
}

enum Split {
    Found(Vec<Matrix>, Vec<Matrix>),
    Local { exhaustive: bool },
}

/// Fitting decomposition `M = Im f^N + Ker f^N` of an endomorphism, if
/// both parts are nonzero.
fn fitting_split(m: &Representation, f: &Morphism) -> Option<(Vec<Matrix>, Vec<Matrix>)> {
    let n = m.total_dim() as u64;
    let fp = f.pow(n);
    if fp.is_zero() || fp.is_invertible() {
        return None;
    }
    let image: Vec<Matrix> = fp
        .maps()
        .iter()
        .map(|x| Subspace::column_span(x).basis_columns())
        .collect();
    let kernel: Vec<Matrix> = fp.maps().iter().map(Matrix::kernel_matrix).collect();
    Some((image, kernel))
}

fn find_splitting(m: &Representation, opts: &DecomposeOptions) -> Split {
    let p = m.characteristic();
    let end = hom_space_unchecked(m, m);
    let k = end.dim();
    if k <= 1 {
        return Split::Local { exhaustive: true };
    }
    let id = Morphism::identity(m);
    let try_one = |f: &Morphism| fitting_split(m, f);
    // basis elements and their scalar shifts
    for b in &end.basis {
        for lambda in 0..p {
            let f = if lambda == 0 {
                b.clone()
            } else {
                b.sub(&id.scale(lambda))
            };
            if let Some((x, y)) = try_one(&f) {
                return Split::Found(x, y);
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if let Some((x, y)) = try_one(&end.basis[i].add(&end.basis[j])) {
                return Split::Found(x, y);
            }
        }
    }
    match field_power(p, k) {
        Some(count) if count <= opts.local_budget => {
            let mut found = None;
            for_each_vector(k, p, |c| {
                found = try_one(&end.combination(c));
                found.is_some()
            });
            match found {
                Some((x, y)) => Split::Found(x, y),
                None => Split::Local { exhaustive: true },
            }
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ m.total_dim() as u64);
            let mut c = vec![0u32; k];
            for _ in 0..opts.samples {
                for x in c.iter_mut() {
                    *x = rng.gen_range(0..p);
                }
                if let Some((x, y)) = try_one(&end.combination(&c)) {
                    return Split::Found(x, y);
                }
            }
            Split::Local { exhaustive: false }
        }
    }
}

/// Total order on modules used for canonical lists.
pub fn module_order(a: &Representation, b: &Representation) -> Ordering {
    a.order_key().cmp(&b.order_key())
}
