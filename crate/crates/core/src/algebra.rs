//! Path algebras `kQ/I` over GF(p) with length-homogeneous relations.
//!
//! Paths are written source to target: the arrow list `[a, b]` means
//! "first `a`, then `b`". The residue basis is computed degree by degree;
//! in degree `l` it is spanned by normal words of degree `l - 1` extended by
//! one arrow, modulo the degree-`l` slice of the ideal, which is spanned by
//! `u * r` for normal words `u` and relations `r`. Everything else (right
//! action of arrows, structure constants, projective modules) is read off
//! the resulting right-multiplication tables.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, check_prime, reduce, Matrix};
use crate::rep::Representation;

pub const DEFAULT_LENGTH_CAP: usize = 30;

/// On-disk description of an algebra (JSON).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub field: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    pub relations: Vec<Vec<TermSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub coeff: i64,
    pub path: Vec<String>,
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Same algebra over a different prime.
    pub fn with_field(mut self, p: u32) -> Self {
        self.field = p;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let mut names = HashMap::new();
        for a in &arrows {
            if names.insert(a.name.as_str(), ()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow {:?}", a.name)));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {:?} has an undeclared endpoint",
                    a.name
                )));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }
}

/// A linear combination of parallel paths of one common length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    /// `(coefficient, arrow indices source to target)`, coefficients nonzero.
    pub terms: Vec<(u32, Vec<usize>)>,
}

impl Relation {
    pub fn source(&self, q: &Quiver) -> usize {
        q.arrow(self.terms[0].1[0]).source
    }

    pub fn target(&self, q: &Quiver) -> usize {
        q.arrow(*self.terms[0].1.last().unwrap()).target
    }

    pub fn length(&self) -> usize {
        self.terms[0].1.len()
    }
}

/// A residue path in the basis of `kQ/I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub path: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

impl Word {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.path.is_empty()
    }
}

/// Sparse vector over the word basis: `(word id, coefficient)` pairs, sorted by id.
pub type WordVec = Vec<(usize, u32)>;

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub length_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            length_cap: DEFAULT_LENGTH_CAP,
        }
    }
}

/// The algebra `A = kQ/I`, immutable after construction.
#[derive(Debug)]
pub struct PathAlgebra {
    spec: AlgebraSpec,
    quiver: Quiver,
    p: u32,
    relations: Vec<Relation>,
    words: Vec<Word>,
    /// `right[w][a]` = residue of `word w` followed by arrow `a`
    /// (empty when not composable or zero).
    right: Vec<Vec<WordVec>>,
    /// Word ids grouped by source vertex, then target, in basis order.
    from_vertex: Vec<Vec<usize>>,
    /// Position of each word inside the vertex space of the projective at its source.
    position: Vec<usize>,
    nil_degree: usize,
    fingerprint: u64,
    length_cap: usize,
    opposite: OnceLock<Arc<PathAlgebra>>,
}

fn parse_quiver(spec: &AlgebraSpec) -> Result<Quiver> {
    let mut arrows = Vec::with_capacity(spec.arrows.len());
    let index = |label: &str| -> Result<usize> {
        spec.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    };
    for a in &spec.arrows {
        arrows.push(Arrow {
            name: a.name.clone(),
            source: index(&a.from)?,
            target: index(&a.to)?,
        });
    }
    Quiver::new(spec.vertices.clone(), arrows)
}

fn parse_relation(index: usize, terms: &[TermSpec], q: &Quiver, p: u32) -> Result<Option<Relation>> {
    let bad = |reason: String| Error::InvalidRelation { index, reason };
    if terms.is_empty() {
        return Err(bad("no terms".into()));
    }
    let mut paths: Vec<(u32, Vec<usize>)> = Vec::new();
    for t in terms {
        if t.path.is_empty() {
            return Err(bad("empty path".into()));
        }
        let mut arrows = Vec::with_capacity(t.path.len());
        for name in &t.path {
            arrows.push(
                q.arrow_index(name)
                    .ok_or_else(|| bad(format!("unknown arrow {name:?}")))?,
            );
        }
        for w in arrows.windows(2) {
            if q.arrow(w[0]).target != q.arrow(w[1]).source {
                return Err(bad(format!(
                    "{:?} then {:?} is not composable",
                    q.arrow(w[0]).name,
                    q.arrow(w[1]).name
                )));
            }
        }
        paths.push((reduce(t.coeff, p), arrows));
    }
    let mut lengths: Vec<usize> = paths.iter().map(|(_, a)| a.len()).collect();
    lengths.dedup();
    if lengths.len() > 1 {
        let mut all: Vec<usize> = paths.iter().map(|(_, a)| a.len()).collect();
        all.sort_unstable();
        all.dedup();
        return Err(Error::NonHomogeneousRelation { index, lengths: all });
    }
    let ends = |a: &Vec<usize>| (q.arrow(a[0]).source, q.arrow(*a.last().unwrap()).target);
    let e0 = ends(&paths[0].1);
    if paths.iter().any(|(_, a)| ends(a) != e0) {
        return Err(Error::NonParallelRelation { index });
    }
    if lengths[0] < 2 {
        return Err(bad("relations must have length at least 2".into()));
    }
    // merge equal paths
    let mut merged: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
    for (c, a) in paths {
        let e = merged.entry(a).or_insert(0);
        *e = linalg::add_mod(*e, c, p);
    }
    let terms: Vec<(u32, Vec<usize>)> = merged
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(a, c)| (c, a))
        .collect();
    Ok((!terms.is_empty()).then_some(Relation { terms }))
}

impl PathAlgebra {
    pub fn build(spec: &AlgebraSpec) -> Result<Arc<PathAlgebra>> {
        Self::build_with(spec, &BuildOptions::default())
    }

    pub fn build_with(spec: &AlgebraSpec, opts: &BuildOptions) -> Result<Arc<PathAlgebra>> {
        check_prime(spec.field)?;
        let p = spec.field;
        let quiver = parse_quiver(spec)?;
        let mut relations = Vec::new();
        for (i, r) in spec.relations.iter().enumerate() {
            if let Some(rel) = parse_relation(i, r, &quiver, p)? {
                relations.push(rel);
            }
        }
        let mut alg = PathAlgebra {
            spec: spec.clone(),
            quiver,
            p,
            relations,
            words: Vec::new(),
            right: Vec::new(),
            from_vertex: Vec::new(),
            position: Vec::new(),
            nil_degree: 0,
            fingerprint: 0,
            length_cap: opts.length_cap,
            opposite: OnceLock::new(),
        };
        alg.compute_basis(opts.length_cap)?;
        alg.fingerprint = alg.compute_fingerprint();
        Ok(Arc::new(alg))
    }

    fn compute_basis(&mut self, cap: usize) -> Result<()> {
        let p = self.p;
        let n = self.quiver.vertex_count();
        let narrows = self.quiver.arrow_count();
        // degree 0
        let mut by_degree: Vec<Vec<usize>> = vec![(0..n).collect()];
        self.words = (0..n)
            .map(|v| Word {
                path: vec![],
                source: v,
                target: v,
            })
            .collect();
        self.right = vec![vec![Vec::new(); narrows]; n];

        let mut degree = 1;
        loop {
            let prev = by_degree[degree - 1].clone();
            // candidate words: (previous word, arrow), grouped by endpoints
            let mut blocks: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
            for &w in &prev {
                for a in 0..narrows {
                    if self.quiver.arrow(a).source == self.words[w].target {
                        let key = (self.words[w].source, self.quiver.arrow(a).target);
                        blocks.entry(key).or_default().push((w, a));
                    }
                }
            }
            if blocks.is_empty() {
                break;
            }
            if degree > cap {
                return Err(Error::NotFiniteDimensional { cap });
            }
            for cands in blocks.values_mut() {
                // larger paths first, so pivots land on them and the basis keeps the smaller ones
                cands.sort_by(|x, y| {
                    let px = self.candidate_path(*x);
                    let py = self.candidate_path(*y);
                    py.cmp(&px)
                });
            }
            // relation rows, per block
            let mut rows: BTreeMap<(usize, usize), Vec<Vec<u32>>> = BTreeMap::new();
            for rel in &self.relations {
                let m = rel.length();
                if m > degree {
                    continue;
                }
                let (rs, rt) = (rel.source(&self.quiver), rel.target(&self.quiver));
                for &u in &by_degree[degree - m] {
                    if self.words[u].target != rs {
                        continue;
                    }
                    let key = (self.words[u].source, rt);
                    let Some(cands) = blocks.get(&key) else { continue };
                    let col_of: HashMap<(usize, usize), usize> =
                        cands.iter().enumerate().map(|(i, c)| (*c, i)).collect();
                    let mut row = vec![0u32; cands.len()];
                    for (c, path) in &rel.terms {
                        let (init, last) = path.split_at(path.len() - 1);
                        let mut elt: WordVec = vec![(u, 1 % p)];
                        for &a in init {
                            elt = self.right_mul_vec(&elt, a);
                        }
                        for (w, x) in elt {
                            let col = col_of[&(w, last[0])];
                            row[col] = linalg::add_mod(row[col], linalg::mul_mod(x, *c, p), p);
                        }
                    }
                    if row.iter().any(|&x| x != 0) {
                        rows.entry(key).or_default().push(row);
                    }
                }
            }
            let mut new_words = Vec::new();
            for (key, cands) in &blocks {
                let relrows = rows.remove(key).unwrap_or_default();
                let m = if relrows.is_empty() {
                    Matrix::zeros(0, cands.len(), p)
                } else {
                    let flat: Vec<Vec<i64>> = relrows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
                    Matrix::from_rows(p, &flat)
                };
                let ech = m.echelon();
                let mut is_pivot = vec![false; cands.len()];
                for &c in &ech.pivots {
                    is_pivot[c] = true;
                }
                let mut id_of = vec![usize::MAX; cands.len()];
                for (i, &(w, a)) in cands.iter().enumerate() {
                    if !is_pivot[i] {
                        let id = self.words.len();
                        let mut path = self.words[w].path.clone();
                        path.push(a);
                        self.words.push(Word {
                            path,
                            source: key.0,
                            target: key.1,
                        });
                        self.right.push(vec![Vec::new(); narrows]);
                        id_of[i] = id;
                        new_words.push(id);
                    }
                }
                for (i, &(w, a)) in cands.iter().enumerate() {
                    let mut v: WordVec = if is_pivot[i] {
                        let row = ech.pivots.iter().position(|&c| c == i).unwrap();
                        (0..cands.len())
                            .filter(|&j| !is_pivot[j])
                            .filter_map(|j| {
                                let x = ech.matrix.get(row, j);
                                (x != 0).then(|| (id_of[j], linalg::sub_mod(0, x, p)))
                            })
                            .collect()
                    } else {
                        vec![(id_of[i], 1 % p)]
                    };
                    v.sort_unstable();
                    self.right[w][a] = v;
                }
            }
            if new_words.is_empty() {
                break;
            }
            by_degree.push(new_words);
            degree += 1;
        }
        // nil degree: least N with rad^N = 0, i.e. one more than the top degree
        // present (degree 0 alone gives 1)
        self.nil_degree = by_degree.len();

        self.from_vertex = vec![Vec::new(); n];
        self.position = vec![0; self.words.len()];
        let mut per_target = vec![vec![0usize; n]; n];
        let mut order: Vec<usize> = (0..self.words.len()).collect();
        order.sort_by_key(|&w| (self.words[w].source, self.words[w].target, w));
        for w in order {
            let (s, t) = (self.words[w].source, self.words[w].target);
            self.position[w] = per_target[s][t];
            per_target[s][t] += 1;
            self.from_vertex[s].push(w);
        }
        Ok(())
    }

    fn candidate_path(&self, (w, a): (usize, usize)) -> Vec<usize> {
        let mut p = self.words[w].path.clone();
        p.push(a);
        p
    }

    fn compute_fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.p.hash(&mut h);
        self.quiver.hash(&mut h);
        let mut rels = self.relations.clone();
        rels.sort_by(|a, b| a.terms.cmp(&b.terms));
        rels.hash(&mut h);
        h.finish()
    }

    /// Right-multiplies a basis combination by an arrow.
    pub fn right_mul_vec(&self, v: &[(usize, u32)], a: usize) -> WordVec {
        let p = self.p;
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for &(w, x) in v {
            for &(w2, y) in &self.right[w][a] {
                let e = acc.entry(w2).or_insert(0);
                *e = linalg::add_mod(*e, linalg::mul_mod(x, y, p), p);
            }
        }
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    /// Residue of `word i` followed by `word j` (source-to-target concatenation).
    pub fn multiply_words(&self, i: usize, j: usize) -> WordVec {
        let (wi, wj) = (&self.words[i], &self.words[j]);
        if wi.target != wj.source {
            return Vec::new();
        }
        let mut v: WordVec = vec![(i, 1 % self.p)];
        for &a in &wj.path {
            v = self.right_mul_vec(&v, a);
        }
        v
    }

    /// Residue of an arbitrary path (arrow indices, source to target).
    pub fn reduce_path(&self, path: &[usize]) -> Option<WordVec> {
        let first = *path.first()?;
        let mut v: WordVec = vec![(self.quiver.arrow(first).source, 1 % self.p)];
        for &a in path {
            if self.quiver.arrow(a).source != self.words[v.first()?.0].target {
                return None;
            }
            v = self.right_mul_vec(&v, a);
            if v.is_empty() {
                return Some(v);
            }
        }
        Some(v)
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn is_hereditary_path_algebra(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Basis sizes keyed by `(source, target, length)`.
    pub fn basis_profile(&self) -> BTreeMap<(usize, usize, usize), usize> {
        let mut m = BTreeMap::new();
        for w in &self.words {
            *m.entry((w.source, w.target, w.len())).or_insert(0) += 1;
        }
        m
    }

    /// Least `N` with `rad^N = 0`.
    pub fn nil_degree(&self) -> usize {
        self.nil_degree
    }

    pub fn loewy_length(&self) -> usize {
        self.nil_degree
    }

    pub fn is_semisimple(&self) -> bool {
        self.nil_degree <= 1
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn same_algebra(&self, other: &PathAlgebra) -> bool {
        self.fingerprint == other.fingerprint
    }

    /// Word ids starting at `v`, in the basis order used by `projective(v)`.
    pub fn words_from(&self, v: usize) -> &[usize] {
        &self.from_vertex[v]
    }

    pub fn word_position(&self, w: usize) -> usize {
        self.position[w]
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.quiver
            .vertex_index(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// The opposite algebra: arrows and relation paths reversed.
    pub fn opposite(&self) -> Arc<PathAlgebra> {
        self.opposite
            .get_or_init(|| {
                let spec = AlgebraSpec {
                    field: self.spec.field,
                    vertices: self.spec.vertices.clone(),
                    arrows: self
                        .spec
                        .arrows
                        .iter()
                        .map(|a| ArrowSpec {
                            name: a.name.clone(),
                            from: a.to.clone(),
                            to: a.from.clone(),
                        })
                        .collect(),
                    relations: self
                        .spec
                        .relations
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|t| TermSpec {
                                    coeff: t.coeff,
                                    path: t.path.iter().rev().cloned().collect(),
                                })
                                .collect()
                        })
                        .collect(),
                    comment: None,
                };
                PathAlgebra::build_with(
                    &spec,
                    &BuildOptions {
                        length_cap: self.length_cap,
                    },
                )
                .expect("opposite of a valid algebra is valid")
            })
            .clone()
    }

    /// Dense structure constants: `table[i][j]` is the product of words `i`
    /// and `j` as a dense coefficient vector.
    pub fn mult_table(&self) -> Vec<Vec<Vec<u32>>> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut v = vec![0u32; d];
                        for (w, c) in self.multiply_words(i, j) {
                            v[w] = c;
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    pub fn word_label(&self, w: usize) -> String {
        let word = &self.words[w];
        if word.path.is_empty() {
            format!("e{}", self.quiver.vertices[word.source])
        } else {
            word.path
                .iter()
                .map(|&a| self.quiver.arrow(a).name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// The indecomposable projective `A e_v`: at vertex `w` the space has basis
/// the residue paths `v -> w`, and arrows act by appending.
pub fn projective(alg: &Arc<PathAlgebra>, v: usize) -> Representation {
    let n = alg.vertex_count();
    let mut dims = vec![0usize; n];
    for &w in alg.words_from(v) {
        dims[alg.words[w].target] += 1;
    }
    let p = alg.p;
    let action = alg
        .quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Matrix::zeros(dims[a.target], dims[a.source], p);
            for &w in alg.words_from(v) {
                if alg.words[w].target != a.source {
                    continue;
                }
                let col = alg.position[w];
                for &(w2, c) in &alg.right[w][ai] {
                    m.set(alg.position[w2], col, c);
                }
            }
            m
        })
        .collect();
    Representation::from_parts_unchecked(alg.clone(), dims, action)
}

/// The indecomposable injective at `v`: the dual of the projective right
/// module `e_v A`, i.e. of the projective at `v` over the opposite algebra.
pub fn injective(alg: &Arc<PathAlgebra>, v: usize) -> Representation {
    let op = alg.opposite();
    projective(&op, v).dual_over(alg.clone())
}

pub fn simple(alg: &Arc<PathAlgebra>, v: usize) -> Representation {
    let mut dims = vec![0; alg.vertex_count()];
    dims[v] = 1;
    Representation::zero_action(alg.clone(), dims)
}

pub fn loewy_length(alg: &PathAlgebra) -> usize {
    alg.loewy_length()
}
