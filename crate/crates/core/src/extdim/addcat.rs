use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::PathAlgebra;
use crate::rep::{decompose, iso_indecomposables, module_order, DimensionVector, Representation};

/// A finite set of pairwise non-isomorphic indecomposables, standing for
/// the additive closure they generate.
#[derive(Clone, Debug)]
pub struct AddCat {
    alg: Arc<PathAlgebra>,
    members: Vec<Representation>,
    by_dims: HashMap<Vec<usize>, Vec<usize>>,
}

impl AddCat {
    pub fn new(alg: Arc<PathAlgebra>) -> Self {
        AddCat {
            alg,
            members: Vec::new(),
            by_dims: HashMap::new(),
        }
    }

    /// Indecomposable summands of the given modules, deduplicated.
    pub fn generated_by<'a>(alg: &Arc<PathAlgebra>, modules: impl IntoIterator<Item = &'a Representation>) -> Self {
        let mut c = AddCat::new(alg.clone());
        for m in modules {
            c.insert_module(m);
        }
        c.sort();
        c
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        &self.alg
    }

    pub fn members(&self) -> &[Representation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Index of the member isomorphic to the indecomposable `m`.
    pub fn find(&self, m: &Representation) -> Option<usize> {
        let bucket = self.by_dims.get(m.dims())?;
        let bytes = m.canonical_bytes();
        if let Some(&i) = bucket.iter().find(|&&i| self.members[i].canonical_bytes() == bytes) {
            return Some(i);
        }
        bucket
            .iter()
            .copied()
            .find(|&i| iso_indecomposables(&self.members[i], m))
    }

    pub fn contains_indecomposable(&self, m: &Representation) -> bool {
        self.find(m).is_some()
    }

    /// Membership in the additive closure.
    pub fn contains(&self, m: &Representation) -> bool {
        decompose(m)
            .factors
            .iter()
            .all(|(f, _)| self.contains_indecomposable(f))
    }

    /// Inserts an indecomposable. An isomorphic member is replaced when `m`
    /// sorts earlier, so the stored representative does not depend on the
    /// insertion order. Returns true when the iso class is new.
    pub fn insert(&mut self, m: Representation) -> bool {
        match self.find(&m) {
            Some(i) => {
                if module_order(&m, &self.members[i]).is_lt() {
                    self.members[i] = m;
                }
                false
            }
            None => {
                self.by_dims
                    .entry(m.dims().to_vec())
                    .or_default()
                    .push(self.members.len());
                self.members.push(m);
                true
            }
        }
    }

    /// Inserts every indecomposable summand; returns how many were new.
    pub fn insert_module(&mut self, m: &Representation) -> usize {
        decompose(m)
            .factors
            .into_iter()
            .map(|(f, _)| self.insert(f) as usize)
            .sum()
    }

    pub fn extend(&mut self, other: &AddCat) {
        for m in &other.members {
            self.insert(m.clone());
        }
        self.sort();
    }

    pub fn union(&self, other: &AddCat) -> AddCat {
        let mut u = self.clone();
        u.extend(other);
        u
    }

    pub fn is_subset(&self, other: &AddCat) -> bool {
        self.members.iter().all(|m| other.contains_indecomposable(m))
    }

    /// Members with total dimension at most `d`.
    pub fn restricted(&self, d: usize) -> AddCat {
        AddCat::generated_by(&self.alg, self.members.iter().filter(|m| m.total_dim() <= d))
    }

    pub fn filter(&self, keep: impl Fn(&Representation) -> bool) -> AddCat {
        AddCat::generated_by(&self.alg, self.members.iter().filter(|m| keep(m)))
    }

    /// Orders members by total dimension, dimension vector, then canonical bytes.
    pub fn sort(&mut self) {
        self.members.sort_by(module_order);
        self.by_dims.clear();
        for (i, m) in self.members.iter().enumerate() {
            self.by_dims.entry(m.dims().to_vec()).or_default().push(i);
        }
    }

    pub fn dim_vectors(&self) -> Vec<DimensionVector> {
        self.members.iter().map(|m| m.dim_vector()).collect()
    }

    /// Largest number of members sharing one dimension vector.
    pub fn max_bucket(&self) -> (usize, Option<DimensionVector>) {
        self.by_dims
            .iter()
            .map(|(d, b)| (b.len(), Some(DimensionVector(d.clone()))))
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
            .unwrap_or((0, None))
    }
}
