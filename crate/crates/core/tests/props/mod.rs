//! Randomized checks over small corpus windows. Each check takes a seed and
//! returns `Ok(true)` when the instance was exercised, `Ok(false)` when the
//! sampled instance falls outside the window the statement needs, and
//! `Err` with a description on a violation.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use syzex_core::algebra::{projective, PathAlgebra};
use syzex_core::corpus;
use syzex_core::extdim::{
    bullet, ed_from_inputs, generate_universe, layer, layers, syzygy_category_from, AddCat, BulletOptions, EdInputs,
    ExternalFact, FactKind, FactSubject, SyzygyCategory, Universe, UniverseOptions,
};
use syzex_core::homology::{cosyzygy, ext1_space, extension_middle, is_projective, projective_cover, syzygy, Bounded};
use syzex_core::linalg::Matrix;
use syzex_core::par::Parallelism;
use syzex_core::rep::{decompose, hom_dim, iso_indecomposables, Representation};

pub type Check = fn(u64) -> Result<bool, String>;

/// Name and check for every suite, in reporting order.
pub const SUITES: [(&str, Check); 13] = [
    ("bullet split-inclusion", split_inclusion),
    ("bounded sum-lemma", sum_lemma),
    ("bounded max-lemma", max_lemma),
    ("resolution membership", resolution_membership),
    ("guarded syzygy-of-layer", syzygy_of_layer),
    ("bullet-inequality set form", bullet_inequality),
    ("layer monotonicity", layer_monotonicity),
    ("syzygy-category nesting", syzygy_nesting),
    ("duality layer image", duality_layer_image),
    ("Krull-Schmidt reassembly", krull_schmidt),
    ("Ext-class cardinality", ext_cardinality),
    ("middle-term additivity", middle_term_additivity),
    ("engine monotonicity", engine_monotonicity),
];

pub const INSTANCES: usize = 100;

/// Runs `check` on successive seeds until `INSTANCES` instances were exercised.
pub fn run_suite(check: Check) -> Result<usize, String> {
    let mut done = 0;
    for seed in 0..(INSTANCES as u64 * 50) {
        if check(seed)? {
            done += 1;
            if done == INSTANCES {
                return Ok(done);
            }
        }
    }
    Err(format!("only {done} applicable instances found"))
}

pub struct Fixture {
    pub name: &'static str,
    pub u: Universe,
    pub opts: BulletOptions,
}

const WINDOWS: [(&str, u32, usize); 4] = [
    ("kron2", 2, 3),
    ("kron2", 3, 2),
    ("fivevertex", 2, 5),
    ("euclideanB", 2, 4),
];

fn build(id: &str, p: u32) -> Arc<PathAlgebra> {
    PathAlgebra::build(&corpus::spec(id).unwrap().with_field(p)).unwrap()
}

fn universe(alg: &Arc<PathAlgebra>, d: usize) -> Universe {
    let mut o = UniverseOptions::new(d);
    o.rules.mult_bound = d;
    generate_universe(alg, &o).unwrap()
}

pub fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        WINDOWS
            .iter()
            .map(|&(name, p, d)| Fixture {
                name,
                u: universe(&build(name, p), d),
                // multiplicities up to d are unbounded inside the window
                opts: BulletOptions::with_mult_bound(d),
            })
            .collect()
    })
}

/// The same algebra in a window twice as wide. Layer memberships that need
/// re-associating extensions are checked here: re-association adds at most
/// `d` to the dimension of a middle term.
fn wide(k: usize) -> &'static (Universe, BulletOptions) {
    static F: OnceLock<Vec<(Universe, BulletOptions)>> = OnceLock::new();
    &F.get_or_init(|| {
        fixtures()
            .iter()
            .map(|f| {
                let w = 2 * f.u.dim_bound;
                (universe(&f.u.algebra, w), BulletOptions::with_mult_bound(w))
            })
            .collect()
    })[k]
}

/// Universe over the opposite algebra with the same window.
fn opposite_universe(k: usize) -> &'static Universe {
    static F: OnceLock<Vec<Universe>> = OnceLock::new();
    &F.get_or_init(|| {
        fixtures()
            .iter()
            .map(|f| universe(&f.u.algebra.opposite(), f.u.dim_bound))
            .collect()
    })[k]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pick_fixture(r: &mut ChaCha8Rng) -> (usize, &'static Fixture) {
    let k = r.gen_range(0..fixtures().len());
    (k, &fixtures()[k])
}

fn pick<'a, T>(r: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    xs.choose(r).expect("nonempty")
}

fn random_cat(r: &mut ChaCha8Rng, f: &Fixture, max: usize) -> AddCat {
    let members = f.u.members.members();
    let k = r.gen_range(1..=max.min(members.len()));
    let chosen: Vec<&Representation> = members.choose_multiple(r, k).collect();
    AddCat::generated_by(&f.u.algebra, chosen)
}

fn sub_cat(r: &mut ChaCha8Rng, alg: &Arc<PathAlgebra>, c: &AddCat, max: usize) -> AddCat {
    let k = r.gen_range(1..=max.min(c.len()));
    AddCat::generated_by(alg, c.members().choose_multiple(r, k))
}

/// Layers are deterministic functions of (fixture, generators, n); memoize them.
fn cached_layer(k: usize, t: &AddCat, n: usize) -> AddCat {
    layer_in(k, false, t, n)
}

fn wide_layer(k: usize, t: &AddCat, n: usize) -> AddCat {
    layer_in(k, true, t, n)
}

/// Fixture, widened window, generators by canonical bytes, layer index.
type LayerKey = (usize, bool, Vec<Vec<u8>>, usize);

fn layer_in(k: usize, widened: bool, t: &AddCat, n: usize) -> AddCat {
    static CACHE: OnceLock<Mutex<HashMap<LayerKey, AddCat>>> = OnceLock::new();
    let key = (
        k,
        widened,
        t.members()
            .iter()
            .map(Representation::canonical_bytes)
            .collect::<Vec<_>>(),
        n,
    );
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&key) {
        return c.clone();
    }
    let f = &fixtures()[k];
    let l = if widened {
        let (u, opts) = wide(k);
        layer(u, t, n, opts).unwrap()
    } else {
        layer(&f.u, t, n, &f.opts).unwrap()
    };
    cache.lock().unwrap().insert(key, l.clone());
    l
}

fn first_missing(sub: &AddCat, sup: &AddCat) -> Option<String> {
    sub.members()
        .iter()
        .find(|m| !sup.contains_indecomposable(m))
        .map(|m| format!("{}", m.dim_vector()))
}

fn describe(c: &AddCat) -> String {
    c.dim_vectors()
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn split_inclusion(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let (_, f) = pick_fixture(&mut r);
    let s1 = random_cat(&mut r, f, 3);
    let s2 = random_cat(&mut r, f, 3);
    let b = bullet(&f.u, &s1, &s2, &f.opts).map_err(|e| e.to_string())?;
    match first_missing(&s1.union(&s2), &b) {
        Some(m) => Err(format!("{}: {m} in S1 ∪ S2 but not in the bullet", f.name)),
        None => Ok(true),
    }
}

pub fn sum_lemma(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let (k, f) = pick_fixture(&mut r);
    let t1 = random_cat(&mut r, f, 2);
    let t2 = random_cat(&mut r, f, 2);
    let (m, n) = *pick(&mut r, &[(1, 1), (1, 2), (2, 1)]);
    let left = bullet(&f.u, &cached_layer(k, &t1, m), &cached_layer(k, &t2, n), &f.opts).map_err(|e| e.to_string())?;
    let right = wide_layer(k, &t1.union(&t2), m + n);
    match first_missing(&left, &right) {
        Some(x) => Err(format!(
            "{}: T1 = {}, T2 = {}, m = {m}, n = {n}: {x} not in [T1 ⊕ T2]_{}",
            f.name,
            describe(&t1),
            describe(&t2),
            m + n
        )),
        None => Ok(true),
    }
}

pub fn max_lemma(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let (k, f) = pick_fixture(&mut r);
    let t1 = random_cat(&mut r, f, 2);
    let t2 = random_cat(&mut r, f, 2);
    let m = r.gen_range(1..=3);
    let n = r.gen_range(1..=3);
    let left = cached_layer(k, &t1, m).union(&cached_layer(k, &t2, n));
    let right = cached_layer(k, &t1.union(&t2), m.max(n));
    match first_missing(&left, &right) {
        Some(x) => Err(format!("{}: m = {m}, n = {n}: {x} missing", f.name)),
        None => Ok(true),
    }
}

pub fn resolution_membership(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let (k, f) = pick_fixture(&mut r);
    let x = pick(&mut r, f.u.members.members()).clone();
    let omega1 = syzygy(&x, 1);
    let omega2 = syzygy(&x, 2);
    if !omega2.is_zero() && !is_projective(&omega2) {
        return Ok(false);
    }
    // 0 -> M2 -> M1 -> M0 -> X -> 0 with M2 = Ω²X projective
    let m0 = projective_cover(&x).cover;
    let m1 = projective_cover(&omega1).cover;
    let parts = [m0, cosyzygy(&m1, 1), cosyzygy(&omega2, 2)];
    // the witnessing extensions have middle terms of dimension up to the
    // sum of the three generators; the window only sees them when that fits
    if parts.iter().map(Representation::total_dim).sum::<usize>() > f.u.dim_bound {
        return Ok(false);
    }
    let gens = AddCat::generated_by(&f.u.algebra, parts.iter().filter(|m| !m.is_zero()));
    let l = cached_layer(k, &gens, 3);
    if l.contains_indecomposable(&x) {
        Ok(true)
    } else {
        Err(format!(
            "{}: {} not in the third layer of {}",
            f.name,
            x.dim_vector(),
            describe(&gens)
        ))
    }
}

fn summands_within(m: &Representation, d: usize) -> Option<Vec<Representation>> {
    let fs: Vec<Representation> = decompose(m).factors.into_iter().map(|(f, _)| f).collect();
    fs.iter().all(|f| f.total_dim() <= d).then_some(fs)
}

pub fn syzygy_of_layer(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let (k, f) = pick_fixture(&mut r);
    let alg = &f.u.algebra;
    let d = f.u.dim_bound;
    let y = pick(&mut r, f.u.members.members()).clone();
    let n = r.gen_range(1..=2);
    let m = r.gen_range(1..=2);
    let l = cached_layer(k, &AddCat::generated_by(alg, [&y]), n);
    let x = pick(&mut r, l.members()).clone();
    let Some(omega_y) = summands_within(&syzygy(&y, m), d) else {
        return Ok(false);
    };
    let Some(omega_x) = summands_within(&syzygy(&x, m), d) else {
        return Ok(false);
    };
    let mut gens = AddCat::generated_by(alg, omega_y.iter());
    for v in 0..alg.vertex_count() {
        gens.insert(projective(alg, v));
    }
    let gens = gens.restricted(d);
    let target = wide_layer(k, &gens, n);
    match omega_x.iter().find(|z| !target.contains_indecomposable(z)) {
        Some(z) => Err(format!(
            "{}: X = {} in [{}]_{n}, summand {} of Ω^{m}X outside [Ω^{m}Y ⊕ A]_{n}",
            f.name,
            x.dim_vector(),
            y.dim_vector(),
            z.dim_vector()
        )),
        None => Ok(true),
    }
}

pub fn bullet_inequality(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let (k, f) = pick_fixture(&mut r);
    let alg = &f.u.algebra;
    let tc = random_cat(&mut r, f, 2);
    let td = random_cat(&mut r, f, 2);
    let m = r.gen_range(0..=1);
    let n = r.gen_range(0..=1);
    let c = sub_cat(&mut r, alg, &cached_layer(k, &tc, m + 1), 3);
    let dd = sub_cat(&mut r, alg, &cached_layer(k, &td, n + 1), 3);
    let b = bullet(&f.u, &c, &dd, &f.opts).map_err(|e| e.to_string())?;
    let target = wide_layer(k, &tc.union(&td), m + n + 2);
    match first_missing(&b, &target) {
        Some(x) => Err(format!("{}: m = {m}, n = {n}: {x} in C • D outside the layer", f.name)),
        None => Ok(true),
    }
}

pub fn layer_monotonicity(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let (_, f) = pick_fixture(&mut r);
    let t = random_cat(&mut r, f, 2);
    let n = r.gen_range(1..=3);
    let ls = layers(&f.u, &t, n + 1, &f.opts).map_err(|e| e.to_string())?;
    for (i, w) in ls.windows(2).enumerate() {
        if let Some(x) = first_missing(&w[0], &w[1]) {
            return Err(format!("{}: {x} in layer {} but not {}", f.name, i + 1, i + 2));
        }
    }
    Ok(true)
}

fn syzcat(k: usize, i: usize) -> &'static SyzygyCategory {
    static F: OnceLock<Vec<Vec<SyzygyCategory>>> = OnceLock::new();
    &F.get_or_init(|| {
        fixtures()
            .iter()
            .map(|f| {
                (0..=3)
                    .map(|i| syzygy_category_from(&f.u, i, Parallelism::default()))
                    .collect()
            })
            .collect()
    })[k][i]
}

pub fn syzygy_nesting(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let (k, f) = pick_fixture(&mut r);
    let i = r.gen_range(0..=2);
    let z = pick(&mut r, syzcat(k, i + 1).members.members()).clone();
    if is_projective(&z) {
        return Ok(true);
    }
    let found = syzcat(k, i).members.members().iter().any(|w| {
        decompose(&syzygy(w, 1))
            .factors
            .iter()
            .any(|(s, _)| iso_indecomposables(s, &z))
    });
    if found {
        Ok(true)
    } else {
        Err(format!(
            "{}: {} in Ω^{} but not a summand of Ω of any Ω^{i} member",
            f.name,
            z.dim_vector(),
            i + 1
        ))
    }
}

pub fn duality_layer_image(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let (k, f) = pick_fixture(&mut r);
    let uop = opposite_universe(k);
    let t = random_cat(&mut r, f, 2);
    let n = r.gen_range(1..=2);
    let l = cached_layer(k, &t, n);
    let dual = |m: &Representation| m.dual_over(uop.algebra.clone());
    let dt = AddCat::generated_by(&uop.algebra, t.members().iter().map(dual).collect::<Vec<_>>().iter());
    let opts = BulletOptions::with_mult_bound(uop.dim_bound);
    let target = layer(uop, &dt, n, &opts).map_err(|e| e.to_string())?;
    match l.members().iter().find(|x| !target.contains_indecomposable(&dual(x))) {
        Some(x) => Err(format!("{}: D({}) outside [D T]_{n}", f.name, x.dim_vector())),
        None => Ok(true),
    }
}

fn random_invertible(r: &mut ChaCha8Rng, n: usize, p: u32) -> Matrix {
    loop {
        let data = (0..n * n).map(|_| r.gen_range(0..p)).collect();
        let m = Matrix::from_vec(n, n, p, data);
        if m.is_invertible() {
            return m;
        }
    }
}

/// `M` transported along a random change of basis at every vertex.
fn scramble(r: &mut ChaCha8Rng, m: &Representation) -> Representation {
    let alg = m.algebra().clone();
    let p = m.characteristic();
    let g: Vec<Matrix> = m.dims().iter().map(|&n| random_invertible(r, n, p)).collect();
    let action = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| g[a.target].mul(m.action(i)).mul(&g[a.source].inverse().unwrap()))
        .collect();
    Representation::new(alg, m.dims().to_vec(), action).expect("conjugate of a module is a module")
}

pub fn krull_schmidt(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let (_, f) = pick_fixture(&mut r);
    let members = f.u.members.members();
    let k = r.gen_range(2..=3);
    let parts: Vec<&Representation> = (0..k).map(|_| pick(&mut r, members)).collect();
    let sum = Representation::direct_sum_all(&f.u.algebra, parts.iter().copied());
    let dec = decompose(&scramble(&mut r, &sum));
    if dec.summand_count() != k {
        return Err(format!(
            "{}: {k} summands assembled, {} found",
            f.name,
            dec.summand_count()
        ));
    }
    for (factor, mult) in &dec.factors {
        let expected = parts.iter().filter(|p| iso_indecomposables(p, factor)).count();
        if expected != *mult {
            return Err(format!(
                "{}: {} found {mult} times, assembled {expected}",
                f.name,
                factor.dim_vector()
            ));
        }
    }
    Ok(true)
}

pub fn ext_cardinality(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let (_, f) = pick_fixture(&mut r);
    let x = pick(&mut r, f.u.members.members()).clone();
    let y = pick(&mut r, f.u.members.members()).clone();
    let space = ext1_space(&x, &y).map_err(|e| e.to_string())?;
    let p = x.characteristic() as u64;
    // 0 -> Hom(X,Y) -> Hom(P,Y) -> Hom(ΩX,Y) -> Ext¹(X,Y) -> 0
    let pres = projective_cover(&x);
    let h = |a: &Representation, b: &Representation| hom_dim(a, b).unwrap();
    let expected = h(&pres.kernel, &y) + h(&x, &y) - h(&pres.cover, &y);
    if space.dim() != expected {
        return Err(format!(
            "{}: dim Ext = {}, long exact sequence gives {expected}",
            f.name,
            space.dim()
        ));
    }
    let classes = space.enumerate(1 << 16).map_err(|e| e.to_string())?;
    if classes.len() as u64 != p.pow(expected as u32) {
        return Err(format!(
            "{}: {} classes for dimension {expected} over GF({p})",
            f.name,
            classes.len()
        ));
    }
    Ok(true)
}

pub fn middle_term_additivity(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let (_, f) = pick_fixture(&mut r);
    let x = pick(&mut r, f.u.members.members()).clone();
    let y = pick(&mut r, f.u.members.members()).clone();
    let space = ext1_space(&x, &y).map_err(|e| e.to_string())?;
    let p = x.characteristic();
    let coeffs: Vec<u32> = (0..space.dim()).map(|_| r.gen_range(0..p)).collect();
    let e = extension_middle(&space.class(&coeffs));
    let sum: Vec<usize> = x.dims().iter().zip(y.dims()).map(|(a, b)| a + b).collect();
    if e.middle.dims() != sum.as_slice() {
        return Err(format!(
            "{}: middle {} for ends {} and {}",
            f.name,
            e.middle.dim_vector(),
            x.dim_vector(),
            y.dim_vector()
        ));
    }
    if !e.is_short_exact(&x, &y) {
        return Err(format!("{}: sequence for {coeffs:?} is not short exact", f.name));
    }
    Ok(true)
}

const SUBJECT: &str = "random";

pub fn engine_monotonicity(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let gldim = if r.gen_bool(0.7) {
        Bounded::Value(r.gen_range(0..=4))
    } else {
        Bounded::Exceeds(8)
    };
    let inputs = EdInputs {
        loewy_length: r.gen_range(1..=5),
        gldim,
        finite_type: *pick(&mut r, &[None, Some(true), Some(false)]),
        rep_type_detail: "sampled".into(),
        syzygy_finite: r.gen_bool(0.3).then(|| (r.gen_range(1..=3), "sampled".to_string())),
    };
    let indices: Vec<usize> = (0..6).collect();
    let Ok(mut current) = ed_from_inputs(SUBJECT, &inputs, &indices, &[]) else {
        // the sampled inputs are themselves inconsistent
        return Ok(false);
    };
    check_report(&current)?;
    let mut facts = Vec::new();
    for _ in 0..r.gen_range(1..=3) {
        let i = r.gen_range(0..indices.len());
        let iv = current.interval(i).unwrap();
        let kind = *pick(&mut r, &[FactKind::Lower, FactKind::Upper, FactKind::Exact]);
        facts.push(ExternalFact {
            subject: FactSubject {
                algebra: SUBJECT.into(),
                i,
            },
            kind,
            value: r.gen_range(iv.lower..=iv.upper),
            citation: "sampled".into(),
        });
        // a value inside a propagated interval is always consistent
        let next = ed_from_inputs(SUBJECT, &inputs, &indices, &facts).map_err(|e| format!("{e}"))?;
        for (a, b) in current.intervals.iter().zip(&next.intervals) {
            if b.lower < a.lower || b.upper > a.upper {
                return Err(format!(
                    "interval at i = {} widened from [{}, {}] to [{}, {}]",
                    a.i, a.lower, a.upper, b.lower, b.upper
                ));
            }
        }
        check_report(&next)?;
        current = next;
    }
    Ok(true)
}

fn check_report(rep: &syzex_core::extdim::EdReport) -> Result<(), String> {
    for w in rep.intervals.windows(2) {
        if w[1].upper > w[0].upper {
            return Err(format!(
                "upper bound rises from {} at i = {} to {}",
                w[0].upper, w[0].i, w[1].upper
            ));
        }
    }
    for iv in &rep.intervals {
        if iv.exact && (iv.lower_provenance.is_empty() || iv.upper_provenance.is_empty()) {
            return Err(format!("exact value at i = {} lacks a provenance chain", iv.i));
        }
    }
    Ok(())
}
