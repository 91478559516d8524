//! Packaged example algebras.
//!
//! Paths are written source to target. Where the original notation composes
//! right to left, the composable reading is stored and the original string is
//! kept in the `comment` field.

use std::sync::Arc;

use crate::algebra::{injective, projective, simple, AlgebraSpec, ArrowSpec, PathAlgebra, TermSpec};
use crate::error::{Error, Result};
use crate::rep::Representation;

pub const DEFAULT_NODE_N: usize = 6;
pub const DEFAULT_LOOP_NILPOTENCY: usize = 2;

pub const IDS: [&str; 9] = [
    "kron2",
    "beilinson2",
    "fivevertex",
    "euclideanB",
    "nodeA",
    "nodeB",
    "bm23",
    "xiA",
    "xiB",
];

/// Corpus ids in listing order.
pub fn list() -> &'static [&'static str] {
    &IDS
}

/// The spec for `id`. `nodeA` and `nodeB` accept an optional `:n` suffix.
pub fn spec(id: &str) -> Result<AlgebraSpec> {
    let (base, param) = match id.split_once(':') {
        Some((b, n)) => {
            let n: usize = n.parse().map_err(|_| Error::UnknownCorpusId(id.to_string()))?;
            (b, Some(n))
        }
        None => (id, None),
    };
    match (base, param) {
        ("kron2", None) => Ok(kronecker()),
        ("beilinson2", None) => Ok(beilinson(2)),
        ("fivevertex", None) => Ok(five_vertex()),
        ("euclideanB", None) => Ok(euclidean_b()),
        ("nodeA", n) if n.unwrap_or(DEFAULT_NODE_N) >= 4 => Ok(node_a(n.unwrap_or(DEFAULT_NODE_N))),
        ("nodeB", n) if n.unwrap_or(DEFAULT_NODE_N) >= 4 => Ok(node_b(n.unwrap_or(DEFAULT_NODE_N))),
        ("bm23", None) => Ok(bm23()),
        ("xiA", None) => Ok(xi_a(DEFAULT_LOOP_NILPOTENCY)),
        ("xiB", None) => Ok(xi_b(DEFAULT_LOOP_NILPOTENCY)),
        _ => Err(Error::UnknownCorpusId(id.to_string())),
    }
}

pub fn load(id: &str) -> Result<Arc<PathAlgebra>> {
    PathAlgebra::build(&spec(id)?)
}

/// Remarks that travel with a corpus entry but are not computed.
pub fn external_note(id: &str) -> Option<&'static str> {
    match id {
        "bm23" => Some(
            "external: the infinite syzygy category of this algebra is the category of projectives, \
             while every finite syzygy category has infinite type; not computed here",
        ),
        "nodeA" => Some("external: S(1) is the unique node; stably equivalent to nodeB"),
        _ => None,
    }
}

/// Named modules shipped with a corpus entry, as summand tokens.
pub fn named_modules(id: &str) -> &'static [(&'static str, &'static [&'static str])] {
    match id {
        "fivevertex" => &[("T", &["S2", "P2", "P3", "P4", "P5"])],
        _ => &[],
    }
}

pub fn named_module(id: &str, name: &str) -> Result<(Arc<PathAlgebra>, Representation)> {
    let tokens = named_modules(id)
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownCorpusId(format!("{id}/{name}")))?;
    let alg = load(id)?;
    let parts = tokens
        .iter()
        .map(|t| module_from_token(&alg, t))
        .collect::<Result<Vec<_>>>()?;
    let m = Representation::direct_sum_all(&alg, parts.iter());
    Ok((alg, m))
}

/// Parses `S<v>`, `P<v>` or `I<v>` with `v` a vertex label.
pub fn module_from_token(alg: &Arc<PathAlgebra>, token: &str) -> Result<Representation> {
    let mut chars = token.chars();
    let kind = chars.next().ok_or_else(|| Error::UnknownVertex(token.to_string()))?;
    let v = alg.vertex_index(chars.as_str())?;
    match kind {
        'S' => Ok(simple(alg, v)),
        'P' => Ok(projective(alg, v)),
        'I' => Ok(injective(alg, v)),
        _ => Err(Error::UnknownVertex(token.to_string())),
    }
}

fn arrow(name: &str, from: &str, to: &str) -> ArrowSpec {
    ArrowSpec {
        name: name.to_string(),
        from: from.to_string(),
        to: to.to_string(),
    }
}

fn path(arrows: &[&str]) -> Vec<String> {
    arrows.iter().map(|s| s.to_string()).collect()
}

fn monomial(arrows: &[&str]) -> Vec<TermSpec> {
    vec![TermSpec {
        coeff: 1,
        path: path(arrows),
    }]
}

fn binomial(left: &[&str], right: &[&str]) -> Vec<TermSpec> {
    vec![
        TermSpec {
            coeff: 1,
            path: path(left),
        },
        TermSpec {
            coeff: -1,
            path: path(right),
        },
    ]
}

fn labels<I: IntoIterator<Item = S>, S: ToString>(it: I) -> Vec<String> {
    it.into_iter().map(|s| s.to_string()).collect()
}

fn kronecker() -> AlgebraSpec {
    AlgebraSpec {
        field: 2,
        vertices: labels(["0", "1"]),
        arrows: vec![arrow("x0", "0", "1"), arrow("x1", "0", "1")],
        relations: vec![],
        comment: Some("Kronecker quiver with arrows x0, x1: 0 -> 1".into()),
    }
}

/// Beilinson algebra on vertices 0..=n with n+1 arrows between neighbours.
pub fn beilinson(n: usize) -> AlgebraSpec {
    let mut arrows = Vec::new();
    for l in 1..=n {
        for i in 0..=n {
            arrows.push(arrow(&format!("x{i}_{l}"), &(l - 1).to_string(), &l.to_string()));
        }
    }
    let mut relations = Vec::new();
    for l in 1..n {
        for i in 0..=n {
            for j in i + 1..=n {
                let (a, b) = (format!("x{i}_{l}"), format!("x{j}_{}", l + 1));
                let (c, d) = (format!("x{j}_{l}"), format!("x{i}_{}", l + 1));
                relations.push(binomial(&[&a, &b], &[&c, &d]));
            }
        }
    }
    AlgebraSpec {
        field: 2,
        vertices: labels(0..=n),
        arrows,
        relations,
        comment: Some("x_i^(l) x_j^(l+1) - x_j^(l) x_i^(l+1), read left to right".into()),
    }
}

fn five_vertex() -> AlgebraSpec {
    AlgebraSpec {
        field: 2,
        vertices: labels(1..=5),
        arrows: vec![
            arrow("a", "2", "1"),
            arrow("b1", "3", "2"),
            arrow("b2", "4", "2"),
            arrow("b3", "5", "2"),
        ],
        relations: (1..=3).map(|i| monomial(&[&format!("b{i}"), "a"])).collect(),
        comment: Some("alpha beta_i = 0 (1 <= i <= 3), read right to left: b_i then a".into()),
    }
}

fn euclidean_b() -> AlgebraSpec {
    AlgebraSpec {
        field: 2,
        vertices: labels(["a", "b", "c", "d", "e"]),
        arrows: vec![
            arrow("ab", "a", "b"),
            arrow("ca", "c", "a"),
            arrow("da", "d", "a"),
            arrow("ea", "e", "a"),
        ],
        relations: vec![],
        comment: Some("star with centre a: c, d, e -> a -> b".into()),
    }
}

/// Loop `g` at 1 with `g^2 = 0` and `g` then `b` zero, arm 1 -> 4 and chain 2 -> ... -> n.
pub fn node_a(n: usize) -> AlgebraSpec {
    let mut arrows = vec![arrow("g", "1", "1"), arrow("b", "1", "4")];
    for i in 2..n {
        arrows.push(arrow(&format!("a{i}"), &i.to_string(), &(i + 1).to_string()));
    }
    AlgebraSpec {
        field: 2,
        vertices: labels(1..=n),
        arrows,
        relations: vec![monomial(&["g", "g"]), monomial(&["g", "b"])],
        comment: Some("gamma^2, beta gamma; beta gamma read right to left: g then b".into()),
    }
}

/// Hereditary partner of `node_a`: the loop replaced by an arrow 1 -> 1'.
pub fn node_b(n: usize) -> AlgebraSpec {
    let mut vertices = labels(1..=n);
    vertices.insert(1, "1'".to_string());
    let mut arrows = vec![arrow("d", "1", "1'"), arrow("b", "1", "4")];
    for i in 2..n {
        arrows.push(arrow(&format!("a{i}"), &i.to_string(), &(i + 1).to_string()));
    }
    AlgebraSpec {
        field: 2,
        vertices,
        arrows,
        relations: vec![],
        comment: Some("delta: 1 -> 1', beta: 1 -> 4, alpha_i: i -> i+1".into()),
    }
}

fn bm23() -> AlgebraSpec {
    let step = |i: usize| (i % 4) + 1;
    let mut arrows = Vec::new();
    for i in 1..=4 {
        for kind in ["a", "A", "b", "B"] {
            arrows.push(arrow(&format!("{kind}{i}"), &i.to_string(), &step(i).to_string()));
        }
    }
    let mut relations = Vec::new();
    for i in 1..=4 {
        let j = step(i);
        let name = |k: &str, t: usize| format!("{k}{t}");
        relations.push(binomial(
            &[&name("a", i), &name("a", j)],
            &[&name("A", i), &name("A", j)],
        ));
        relations.push(binomial(
            &[&name("b", i), &name("b", j)],
            &[&name("B", i), &name("B", j)],
        ));
        relations.push(monomial(&[&name("a", i), &name("A", j)]));
        relations.push(monomial(&[&name("A", i), &name("a", j)]));
        relations.push(monomial(&[&name("b", i), &name("B", j)]));
        relations.push(monomial(&[&name("B", i), &name("b", j)]));
    }
    // J^3: every path of length three
    for i in 1..=4 {
        let (j, k) = (step(i), step(step(i)));
        for x in ["a", "A", "b", "B"] {
            for y in ["a", "A", "b", "B"] {
                for z in ["a", "A", "b", "B"] {
                    relations.push(monomial(&[&format!("{x}{i}"), &format!("{y}{j}"), &format!("{z}{k}")]));
                }
            }
        }
    }
    AlgebraSpec {
        field: 2,
        vertices: labels(1..=4),
        arrows,
        relations,
        comment: Some("A_i stands for alpha-bar_i, B_i for beta-bar_i; relations read left to right, plus J^3".into()),
    }
}

fn loop_power(name: &str, n: usize) -> Vec<TermSpec> {
    monomial(&vec![name; n])
}

fn xi_a(n: usize) -> AlgebraSpec {
    AlgebraSpec {
        field: 2,
        vertices: labels(1..=4),
        arrows: vec![
            arrow("g", "1", "2"),
            arrow("b", "2", "1"),
            arrow("d", "2", "3"),
            arrow("a", "3", "2"),
            arrow("e", "3", "3"),
            arrow("h", "4", "3"),
        ],
        relations: vec![
            monomial(&["a", "d", "a"]),
            monomial(&["g", "d"]),
            binomial(&["d", "a"], &["b", "g"]),
            loop_power("e", n),
            monomial(&["d", "e"]),
            monomial(&["e", "a"]),
            monomial(&["h", "a"]),
        ],
        comment: Some(
            "alpha delta alpha, delta gamma, alpha delta - gamma beta, eps^n, eps delta, alpha eps, alpha eta; \
             read right to left"
                .into(),
        ),
    }
}

fn xi_b(n: usize) -> AlgebraSpec {
    AlgebraSpec {
        field: 2,
        vertices: labels(["1'", "2'", "3'", "4'"]),
        arrows: vec![
            arrow("g", "2'", "3'"),
            arrow("a", "3'", "1'"),
            arrow("b", "1'", "2'"),
            arrow("e", "3'", "3'"),
            arrow("h", "4'", "3'"),
        ],
        relations: vec![
            monomial(&["a", "b", "g", "a"]),
            monomial(&["g", "a", "b", "g"]),
            loop_power("e", n),
            monomial(&["g", "e"]),
            monomial(&["e", "a"]),
            monomial(&["h", "a"]),
        ],
        comment: Some(
            "alpha' gamma' beta' alpha', gamma' beta' alpha' gamma', eps'^n, eps' gamma', alpha' eps', alpha' eta'; \
             read right to left"
                .into(),
        ),
    }
}
