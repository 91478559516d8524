use std::sync::Arc;

use syzex_core::algebra::{projective, simple, AlgebraSpec, PathAlgebra};
use syzex_core::corpus;
use syzex_core::extdim::*;
use syzex_core::homology::{cosyzygy, is_projective, syzygy};
use syzex_core::rep::{decompose, DimensionVector};

/// Vertices of the Auslander-Reiten quiver drawn for the five-vertex algebra.
const FIVE_VERTEX_AR_COUNT: usize = 14;

fn universe(alg: &Arc<PathAlgebra>, d: usize, mult: usize) -> Universe {
    let mut o = UniverseOptions::new(d);
    o.rules.mult_bound = mult;
    generate_universe(alg, &o).unwrap()
}

fn dims(c: &AddCat) -> Vec<Vec<usize>> {
    c.dim_vectors().into_iter().map(|d| d.0).collect()
}

/// Number of monic irreducible polynomials of degree `e` over GF(q), by
/// Möbius inversion of `q^e = sum_{k | e} k N(k)`.
fn irreducible_count(q: i64, e: u32) -> i64 {
    fn mobius(mut n: u32) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            -sign
        } else {
            sign
        }
    }
    (1..=e)
        .filter(|k| e.is_multiple_of(*k))
        .map(|k| mobius(e / k) * q.pow(k))
        .sum::<i64>()
        / e as i64
}

/// Indecomposable Kronecker modules over GF(q) of total dimension <= d:
/// preprojectives and preinjectives of dimension vectors (k, k+1), (k+1, k),
/// and regular modules of dimension (n, n), one per point of degree e of the
/// projective line and length l with e * l = n.
fn kronecker_count(q: i64, d: usize) -> usize {
    let preprojective = (0..).take_while(|k| 2 * k < d).count();
    let points = |e: u32| if e == 1 { q + 1 } else { irreducible_count(q, e) };
    let regular: i64 = (1..=d / 2)
        .map(|n| {
            (1..=n as u32)
                .filter(|e| (n as u32).is_multiple_of(*e))
                .map(points)
                .sum::<i64>()
        })
        .sum();
    2 * preprojective + regular as usize
}

#[test]
fn kronecker_universe_matches_classification() {
    let a = corpus::load("kron2").unwrap();
    for d in [4, 5, 6] {
        let u = universe(&a, d, d);
        assert_eq!(u.members.len(), kronecker_count(2, d), "d = {d}");
    }
    // clipping: the window always cuts off growing strings
    let u = universe(&a, 6, 2);
    assert!(u.saturated && u.clipped);
    assert!(u.members.members().iter().any(|m| m.total_dim() >= 5));
}

#[test]
fn kronecker_count_oracle_over_gf3() {
    let spec = corpus::spec("kron2").unwrap().with_field(3);
    let a = PathAlgebra::build(&spec).unwrap();
    let u = universe(&a, 4, 4);
    // (0,1) (1,0) (1,2) (2,1); 4 points of degree 1, lengths 1 and 2; 3 of degree 2
    assert_eq!(kronecker_count(3, 4), 4 + 4 + 4 + 3);
    assert_eq!(u.members.len(), kronecker_count(3, 4));
}

#[test]
fn semisimple_universe_is_the_simples() {
    let spec = AlgebraSpec::from_json(r#"{"field":2,"vertices":["a","b","c"],"arrows":[],"relations":[]}"#).unwrap();
    let a = PathAlgebra::build(&spec).unwrap();
    for d in [1, 3, 7] {
        let u = generate_universe(&a, &UniverseOptions::new(d)).unwrap();
        assert!(u.saturated);
        assert_eq!(dims(&u.members), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }
}

#[test]
fn five_vertex_universe_has_ar_quiver_size() {
    let a = corpus::load("fivevertex").unwrap();
    let u = universe(&a, 8, 2);
    assert!(u.saturated);
    assert_eq!(u.members.len(), FIVE_VERTEX_AR_COUNT);
    // the narrow window still clips nonsplit pairs; a wider one does not
    let wide = universe(&a, 10, 2);
    assert!(wide.is_certified_window());
    assert_eq!(wide.members.len(), FIVE_VERTEX_AR_COUNT);
}

#[test]
fn saturated_universe_is_closed() {
    let a = corpus::load("fivevertex").unwrap();
    let u = universe(&a, 10, 2);
    for m in u.members.members() {
        for n in [syzygy(m, 1), cosyzygy(m, 1)] {
            for (f, _) in decompose(&n).factors {
                assert!(u.members.contains_indecomposable(&f), "{} escapes", f.dim_vector());
            }
        }
    }
}

fn kron() -> (Arc<PathAlgebra>, Universe, AddCat, AddCat) {
    let a = corpus::load("kron2").unwrap();
    let u = universe(&a, 6, 2);
    let s0 = AddCat::generated_by(&a, [&simple(&a, 0)]);
    let s1 = AddCat::generated_by(&a, [&simple(&a, 1)]);
    (a, u, s0, s1)
}

#[test]
fn kronecker_bullet_orders() {
    let (_, u, s0, s1) = kron();
    let opts = BulletOptions::with_mult_bound(6);
    let b = bullet(&u, &s0, &s1, &opts).unwrap();
    assert_eq!(dims(&b), vec![vec![0, 1], vec![1, 0]]);
    let b = bullet(&u, &s1, &s0, &opts).unwrap();
    assert!(u.members.is_subset(&b));
}

#[test]
fn bullet_with_empty_side() {
    let (a, u, s0, _) = kron();
    let empty = AddCat::new(a);
    let opts = BulletOptions::default();
    assert_eq!(dims(&bullet(&u, &s0, &empty, &opts).unwrap()), dims(&s0));
    assert_eq!(dims(&bullet(&u, &empty, &s0, &opts).unwrap()), dims(&s0));
}

#[test]
fn layer_examples() {
    let (a, u, s0, s1) = kron();
    let opts = BulletOptions::with_mult_bound(6);
    let t = s0.union(&s1);
    assert_eq!(dims(&layer(&u, &t, 1, &opts).unwrap()), dims(&t));
    let l2 = layer(&u, &t, 2, &opts).unwrap();
    assert!(u.members.is_subset(&l2));
    let empty = AddCat::new(a);
    for n in 1..=3 {
        assert!(layer(&u, &empty, n, &opts).unwrap().is_empty());
    }
}

#[test]
fn bounded_containment_examples() {
    let (_, u, s0, s1) = kron();
    let opts = BulletOptions::with_mult_bound(6);
    assert!(bounded_containment(&u, &s0, &s0, 1, &opts).unwrap().holds());
    let t = s0.union(&s1);
    assert!(bounded_containment(&u, &u.members, &t, 2, &opts).unwrap().holds());
    match bounded_containment(&u, &u.members, &s0, 2, &opts).unwrap() {
        Containment::Counterexample(m) => assert_eq!(m.dim_vector(), DimensionVector(vec![0, 1])),
        Containment::Holds => panic!("S(1) is not an extension of copies of S(0)"),
    }
}

#[test]
fn syzygy_category_examples() {
    let b = corpus::load("euclideanB").unwrap();
    let u = universe(&b, 6, 2);
    let c = syzygy_category_from(&u, 1, Default::default());
    let proj = AddCat::generated_by(
        &b,
        (0..b.vertex_count())
            .map(|v| projective(&b, v))
            .collect::<Vec<_>>()
            .iter(),
    );
    assert_eq!(dims(&c.members), dims(&proj));
    let c0 = syzygy_category_from(&u, 0, Default::default());
    assert_eq!(dims(&c0.members), dims(&u.members));

    let a = corpus::load("beilinson2").unwrap();
    let u = universe(&a, 4, 2);
    let c2 = syzygy_category_from(&u, 2, Default::default());
    assert!(c2.members.members().iter().all(is_projective));
}

#[test]
fn node_syzygies_have_finite_type() {
    let a = corpus::load("nodeA").unwrap();
    let f = syzygy_finiteness(&a, 1, &UniverseOptions::new(8)).unwrap();
    assert!(f.certified, "{}", f.reason);
    let r = ed_report(&a, "nodeA", &[1, 2, 3], &[], &EdOptions::new(8)).unwrap();
    for iv in &r.intervals {
        assert_eq!((iv.lower, iv.upper), (0, 0));
        assert!(iv.upper_provenance[0].starts_with("R8"));
    }
}

#[test]
fn rep_type_examples() {
    let k = corpus::load("kron2").unwrap();
    let c = rep_type_certificate(&k, &UniverseOptions::new(6)).unwrap();
    assert!(c.is_infinite() && c.method == RepTypeMethod::TitsForm);
    let f = corpus::load("fivevertex").unwrap();
    let c = rep_type_certificate(&f, &UniverseOptions::new(10)).unwrap();
    assert!(c.is_finite() && c.is_certified());
    assert_eq!(c.member_count(), Some(FIVE_VERTEX_AR_COUNT));
    let b = corpus::load("euclideanB").unwrap();
    assert!(rep_type_certificate(&b, &UniverseOptions::new(6))
        .unwrap()
        .is_infinite());
}

#[test]
fn tits_examples() {
    let linear = AlgebraSpec::from_json(
        r#"{"field":2,"vertices":["1","2","3","4"],
            "arrows":[{"name":"a","from":"1","to":"2"},{"name":"b","from":"2","to":"3"},{"name":"c","from":"3","to":"4"}],
            "relations":[]}"#,
    )
    .unwrap();
    assert_eq!(
        tits_classification(&PathAlgebra::build(&linear).unwrap()),
        TitsClass::Dynkin
    );
    assert_eq!(
        tits_classification(&corpus::load("kron2").unwrap()),
        TitsClass::Euclidean
    );
    assert_eq!(
        tits_classification(&corpus::load("euclideanB").unwrap()),
        TitsClass::Euclidean
    );
    assert_eq!(
        tits_classification(&corpus::load("fivevertex").unwrap()),
        TitsClass::NotHereditary
    );
}

#[test]
fn ed_examples() {
    let k = corpus::load("kron2").unwrap();
    let r = ed_report(&k, "kron2", &[0, 1], &[], &EdOptions::new(6)).unwrap();
    let i0 = r.interval(0).unwrap();
    assert!(i0.exact && i0.lower == 1);
    assert!(i0.lower_provenance[0].starts_with("R1") && i0.upper_provenance[0].starts_with("R3"));
    assert!(r.interval(1).unwrap().exact && r.interval(1).unwrap().upper == 0);

    let b = corpus::load("euclideanB").unwrap();
    let r = ed_report(&b, "euclideanB", &[0, 1, 2, 3], &[], &EdOptions::new(6)).unwrap();
    assert_eq!(r.interval(0).unwrap().lower, 1);
    for i in 1..=3 {
        let iv = r.interval(i).unwrap();
        assert!(iv.exact && iv.upper == 0 && iv.upper_provenance[0].starts_with("R7"));
    }
}

#[test]
fn beilinson_needs_the_external_fact() {
    let a = corpus::load("beilinson2").unwrap();
    let opts = EdOptions::new(4);
    let fact = ExternalFact::exact("beilinson2", 0, 2, "literature value");
    let r = ed_report(&a, "beilinson2", &[0, 1, 2], &[fact], &opts).unwrap();
    for i in 0..=2 {
        let iv = r.interval(i).unwrap();
        assert!(iv.exact, "i = {i}");
        assert_eq!(iv.lower as usize, 2 - i);
    }
    let r = ed_report(&a, "beilinson2", &[0], &[], &opts).unwrap();
    let iv = r.interval(0).unwrap();
    assert_eq!((iv.lower, iv.upper), (0, 2));
    assert!(r.notes.iter().any(|n| n.contains("heuristic")));
}
