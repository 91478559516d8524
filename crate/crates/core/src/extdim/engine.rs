//! Interval bounds on `ed Ω^i(A-mod)` by fixpoint propagation.
//!
//! Every bound is a fact with a rule tag and the facts it was derived from,
//! so each end of an interval can be traced back to computed quantities or
//! to declared external facts.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::reptype::{rep_type_certificate, RepTypeCertificate, RepTypeMethod};
use super::syzcat::{syzygy_finiteness, SyzygyFiniteness};
use super::universe::UniverseOptions;
use crate::algebra::PathAlgebra;
use crate::error::{Error, Result};
use crate::homology::{default_dimension_bound, gldim_bounded, Bounded};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactKind {
    Lower,
    Upper,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactSubject {
    pub algebra: String,
    pub i: usize,
}

/// A bound supplied from outside, e.g. a value quoted from the literature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalFact {
    pub subject: FactSubject,
    pub kind: FactKind,
    pub value: u32,
    #[serde(default)]
    pub citation: String,
}

impl ExternalFact {
    pub fn exact(algebra: &str, i: usize, value: u32, citation: &str) -> Self {
        ExternalFact {
            subject: FactSubject {
                algebra: algebra.to_string(),
                i,
            },
            kind: FactKind::Exact,
            value,
            citation: citation.to_string(),
        }
    }

    pub fn parse_list(text: &str) -> Result<Vec<ExternalFact>> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    External,
}

impl Rule {
    pub fn citation(self) -> &'static str {
        match self {
            Rule::R1 => "representation type: ed = 0 iff finite type",
            Rule::R2 => "Loewy length: ed <= LL(A) - 1",
            Rule::R3 => "global dimension: ed <= gldim A",
            Rule::R4 => "syzygies of a nonsemisimple algebra: ed Ω^i <= LL(A) - 2 for i >= 1",
            Rule::R5 => "nesting: ed Ω^(i+1) <= ed Ω^i",
            Rule::R6 => "syzygy shift: ed Ω^(m-i) <= ed Ω^m + i",
            Rule::R7 => "finite global dimension g: ed Ω^i <= max(g - i, 0)",
            Rule::R8 => "finite syzygy type: Ω^n(A-mod) of finite type gives ed Ω^i = 0 for i >= n",
            Rule::External => "external fact",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EdFact {
    pub id: usize,
    pub i: usize,
    pub side: Side,
    pub value: u32,
    pub rule: Rule,
    pub detail: String,
    pub premises: Vec<usize>,
}

impl EdFact {
    pub fn describe(&self) -> String {
        let rel = match self.side {
            Side::Lower => ">=",
            Side::Upper => "<=",
        };
        format!(
            "{:?}: ed Ω^{} {rel} {} ({})",
            self.rule, self.i, self.value, self.detail
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EdInterval {
    pub i: usize,
    pub lower: u32,
    pub upper: u32,
    pub exact: bool,
    pub lower_provenance: Vec<String>,
    pub upper_provenance: Vec<String>,
}

/// Computed quantities the rules consume.
#[derive(Clone, Debug, Serialize)]
pub struct EdInputs {
    pub loewy_length: usize,
    pub gldim: Bounded,
    /// `Some(true)` for a certified finite type, `Some(false)` for certified infinite type.
    pub finite_type: Option<bool>,
    pub rep_type_detail: String,
    /// Smallest `n` with a finite-type certificate for `Ω^n(A-mod)`.
    pub syzygy_finite: Option<(usize, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdReport {
    pub algebra: String,
    pub intervals: Vec<EdInterval>,
    pub facts: Vec<EdFact>,
    pub notes: Vec<String>,
    pub inputs: EdInputs,
}

impl EdReport {
    pub fn interval(&self, i: usize) -> Option<&EdInterval> {
        self.intervals.iter().find(|x| x.i == i)
    }
}

struct Engine {
    facts: Vec<EdFact>,
    lower: Vec<Option<usize>>,
    upper: Vec<Option<usize>>,
}

impl Engine {
    fn new(n: usize) -> Self {
        Engine {
            facts: Vec::new(),
            lower: vec![None; n],
            upper: vec![None; n],
        }
    }

    fn value(&self, id: Option<usize>) -> Option<u32> {
        id.map(|k| self.facts[k].value)
    }

    fn lower(&self, i: usize) -> u32 {
        self.value(self.lower[i]).unwrap_or(0)
    }

    fn upper(&self, i: usize) -> Option<u32> {
        self.value(self.upper[i])
    }

    /// Records the fact when it tightens the current bound.
    fn add(&mut self, i: usize, side: Side, value: u32, rule: Rule, detail: String, premises: Vec<usize>) -> bool {
        if i >= self.lower.len() {
            return false;
        }
        let tighter = match side {
            Side::Lower => self.lower[i].is_none() || value > self.lower(i),
            Side::Upper => self.upper(i).is_none_or(|u| value < u),
        };
        if !tighter {
            return false;
        }
        let id = self.facts.len();
        self.facts.push(EdFact {
            id,
            i,
            side,
            value,
            rule,
            detail,
            premises,
        });
        match side {
            Side::Lower => self.lower[i] = Some(id),
            Side::Upper => self.upper[i] = Some(id),
        }
        true
    }

    fn propagate(&mut self) {
        let n = self.lower.len();
        loop {
            let mut changed = false;
            for i in 0..n.saturating_sub(1) {
                if let Some(u) = self.upper[i] {
                    let v = self.facts[u].value;
                    changed |= self.add(i + 1, Side::Upper, v, Rule::R5, format!("from i = {i}"), vec![u]);
                }
                if let Some(l) = self.lower[i + 1] {
                    let v = self.facts[l].value;
                    changed |= self.add(i, Side::Lower, v, Rule::R5, format!("from i = {}", i + 1), vec![l]);
                }
            }
            for m in 0..n {
                for j in 1..=m {
                    if let Some(l) = self.lower[m - j] {
                        let v = self.facts[l].value;
                        if v > j as u32 {
                            changed |= self.add(
                                m,
                                Side::Lower,
                                v - j as u32,
                                Rule::R6,
                                format!("shift {j} from i = {}", m - j),
                                vec![l],
                            );
                        }
                    }
                    if let Some(u) = self.upper[m] {
                        let v = self.facts[u].value + j as u32;
                        changed |= self.add(
                            m - j,
                            Side::Upper,
                            v,
                            Rule::R6,
                            format!("shift {j} from i = {m}"),
                            vec![u],
                        );
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn chain(&self, id: Option<usize>) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.facts.len()];
        let mut stack: Vec<usize> = id.into_iter().collect();
        while let Some(k) = stack.pop() {
            if std::mem::replace(&mut seen[k], true) {
                continue;
            }
            out.push(self.facts[k].describe());
            stack.extend(self.facts[k].premises.iter().rev());
        }
        out
    }
}

/// Runs the rules on precomputed inputs. Intervals are reported for `indices`.
pub fn ed_from_inputs(
    algebra: &str,
    inputs: &EdInputs,
    indices: &[usize],
    external: &[ExternalFact],
) -> Result<EdReport> {
    let mut notes = Vec::new();
    let relevant: Vec<&ExternalFact> = external
        .iter()
        .filter(|f| {
            let ok = f.subject.algebra == algebra;
            if !ok {
                notes.push(format!("external fact for {:?} ignored", f.subject.algebra));
            }
            ok
        })
        .collect();
    let mut top = indices.iter().copied().max().unwrap_or(0);
    if let Bounded::Value(g) = inputs.gldim {
        top = top.max(g);
    }
    if let Some((n, _)) = &inputs.syzygy_finite {
        top = top.max(*n);
    }
    for f in &relevant {
        top = top.max(f.subject.i);
    }
    let size = top + 1;
    let mut e = Engine::new(size);
    let ll = inputs.loewy_length as u32;

    for i in 0..size {
        e.add(i, Side::Lower, 0, Rule::R1, "ed is nonnegative".into(), vec![]);
    }
    match inputs.finite_type {
        Some(true) => {
            e.add(
                0,
                Side::Upper,
                0,
                Rule::R1,
                format!("finite type ({})", inputs.rep_type_detail),
                vec![],
            );
        }
        Some(false) => {
            e.add(
                0,
                Side::Lower,
                1,
                Rule::R1,
                format!("infinite type ({})", inputs.rep_type_detail),
                vec![],
            );
        }
        None => {}
    }
    if let Bounded::Value(g) = inputs.gldim {
        e.add(0, Side::Upper, g as u32, Rule::R3, format!("gldim = {g}"), vec![]);
        for i in 0..size {
            e.add(
                i,
                Side::Upper,
                g.saturating_sub(i) as u32,
                Rule::R7,
                format!("gldim = {g}"),
                vec![],
            );
        }
    }
    e.add(
        0,
        Side::Upper,
        ll.saturating_sub(1),
        Rule::R2,
        format!("Loewy length {ll}"),
        vec![],
    );
    if ll >= 2 {
        for i in 1..size {
            e.add(i, Side::Upper, ll - 2, Rule::R4, format!("Loewy length {ll}"), vec![]);
        }
    }
    if let Some((n, why)) = &inputs.syzygy_finite {
        for i in *n..size {
            e.add(
                i,
                Side::Upper,
                0,
                Rule::R8,
                format!("Ω^{n}(A-mod) finite: {why}"),
                vec![],
            );
        }
    }
    for f in &relevant {
        let i = f.subject.i;
        let detail = format!("external: {}", f.citation);
        if matches!(f.kind, FactKind::Lower | FactKind::Exact) {
            e.add(i, Side::Lower, f.value, Rule::External, detail.clone(), vec![]);
        }
        if matches!(f.kind, FactKind::Upper | FactKind::Exact) {
            e.add(i, Side::Upper, f.value, Rule::External, detail, vec![]);
        }
    }
    e.propagate();

    for i in 0..size {
        let (l, u) = (e.lower(i), e.upper(i).unwrap_or(u32::MAX));
        if l > u {
            return Err(Error::ContradictoryFacts {
                subject: format!("ed Ω^{i}({algebra}-mod)"),
                lower: l,
                upper: u,
                lower_chain: e.chain(e.lower[i]).join(" <- "),
                upper_chain: e.chain(e.upper[i]).join(" <- "),
            });
        }
    }
    let mut wanted: Vec<usize> = indices.to_vec();
    wanted.sort_unstable();
    wanted.dedup();
    let intervals = wanted
        .into_iter()
        .map(|i| {
            let lower = e.lower(i);
            let upper = e.upper(i).expect("R2 and R5 bound every index");
            EdInterval {
                i,
                lower,
                upper,
                exact: lower == upper,
                lower_provenance: e.chain(e.lower[i]),
                upper_provenance: e.chain(e.upper[i]),
            }
        })
        .collect();
    Ok(EdReport {
        algebra: algebra.to_string(),
        intervals,
        facts: e.facts,
        notes,
        inputs: inputs.clone(),
    })
}

#[derive(Clone, Debug)]
pub struct EdOptions {
    pub universe: UniverseOptions,
    pub gldim_bound: Option<usize>,
    /// Look for finite-type certificates of `Ω^n(A-mod)` (rule R8) up to this `n`.
    pub syzygy_search: usize,
}

impl EdOptions {
    pub fn new(dim_bound: usize) -> Self {
        EdOptions {
            universe: UniverseOptions::new(dim_bound),
            gldim_bound: None,
            syzygy_search: 2,
        }
    }
}

/// Collects the inputs for `alg` and runs the rules.
pub fn ed_report(
    alg: &Arc<PathAlgebra>,
    algebra: &str,
    indices: &[usize],
    external: &[ExternalFact],
    opts: &EdOptions,
) -> Result<EdReport> {
    let gldim = gldim_bounded(alg, opts.gldim_bound.unwrap_or_else(|| default_dimension_bound(alg)));
    let cert = rep_type_certificate(alg, &opts.universe)?;
    let mut notes = Vec::new();
    let finite_type = if cert.is_certified() {
        if cert.is_finite() {
            Some(true)
        } else if cert.is_infinite() {
            Some(false)
        } else {
            None
        }
    } else {
        None
    };
    if cert.method == RepTypeMethod::HeuristicCount {
        notes.push("a heuristic count suggests infinite type; it is not used as a certified lower bound".to_string());
    }
    if finite_type.is_none() {
        notes.push("representation type not certified: no lower bound above 0 at i = 0 unless given externally".into());
    }
    let mut inputs = EdInputs {
        loewy_length: alg.loewy_length(),
        gldim,
        finite_type,
        rep_type_detail: describe_cert(&cert),
        syzygy_finite: None,
    };
    // R8 only where it could still tighten something
    let probe = ed_from_inputs(algebra, &inputs, indices, external)?;
    let max_i = indices.iter().copied().max().unwrap_or(0);
    for n in 1..=opts.syzygy_search.min(max_i) {
        let needed = probe.intervals.iter().any(|x| x.i >= n && x.upper > 0);
        if !needed {
            break;
        }
        let w: SyzygyFiniteness = syzygy_finiteness(alg, n, &opts.universe)?;
        if w.certified {
            inputs.syzygy_finite = Some((n, format!("{} members; {}", w.members.len(), w.reason)));
            break;
        }
        notes.push(format!("Ω^{n}(A-mod) not certified finite: {}", w.reason));
    }
    let mut report = ed_from_inputs(algebra, &inputs, indices, external)?;
    notes.append(&mut report.notes);
    report.notes = notes;
    Ok(report)
}

fn describe_cert(c: &RepTypeCertificate) -> String {
    let method = match c.method {
        RepTypeMethod::TitsForm => "Tits form",
        RepTypeMethod::Enumeration => "saturated enumeration",
        RepTypeMethod::HeuristicCount => "heuristic count",
    };
    match c.member_count() {
        Some(k) => format!("{method}, {k} indecomposables at dimension bound {}", c.dim_bound),
        None => method.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inputs(ll: usize, gldim: Bounded, finite: Option<bool>) -> EdInputs {
        EdInputs {
            loewy_length: ll,
            gldim,
            finite_type: finite,
            rep_type_detail: String::new(),
            syzygy_finite: None,
        }
    }

    #[test]
    fn kronecker_shape() {
        let r = ed_from_inputs("k", &inputs(2, Bounded::Value(1), Some(false)), &[0, 1, 2], &[]).unwrap();
        let i0 = r.interval(0).unwrap();
        assert_eq!((i0.lower, i0.upper), (1, 1));
        assert!(i0.lower_provenance[0].starts_with("R1"));
        assert!(r.interval(1).unwrap().exact && r.interval(1).unwrap().upper == 0);
        assert!(r.interval(2).unwrap().exact);
    }

    #[test]
    fn external_fact_closes_intervals() {
        let base = inputs(3, Bounded::Value(2), None);
        let r = ed_from_inputs("b", &base, &[0, 1, 2], &[]).unwrap();
        assert_eq!((r.interval(0).unwrap().lower, r.interval(0).unwrap().upper), (0, 2));
        let fact = ExternalFact::exact("b", 0, 2, "given");
        let r = ed_from_inputs("b", &base, &[0, 1, 2], &[fact]).unwrap();
        for i in 0..3u32 {
            let x = r.interval(i as usize).unwrap();
            assert_eq!((x.lower, x.upper), (2 - i, 2 - i));
            assert!(x.exact);
        }
        assert!(r
            .interval(1)
            .unwrap()
            .lower_provenance
            .iter()
            .any(|s| s.starts_with("R6")));
        assert!(r
            .interval(1)
            .unwrap()
            .upper_provenance
            .iter()
            .any(|s| s.starts_with("R7")));
    }

    #[test]
    fn contradiction_reports_both_chains() {
        let base = inputs(2, Bounded::Value(1), None);
        let fact = ExternalFact::exact("b", 0, 3, "wrong");
        match ed_from_inputs("b", &base, &[0], &[fact]) {
            Err(Error::ContradictoryFacts {
                lower,
                upper,
                lower_chain,
                upper_chain,
                ..
            }) => {
                assert_eq!((lower, upper), (3, 1));
                assert!(lower_chain.contains("External"));
                assert!(upper_chain.contains("R2") || upper_chain.contains("R3"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn facts_for_other_algebras_are_ignored() {
        let base = inputs(2, Bounded::Value(1), None);
        let r = ed_from_inputs("b", &base, &[0], &[ExternalFact::exact("other", 0, 5, "x")]).unwrap();
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn semisimple_is_zero_everywhere() {
        let r = ed_from_inputs("s", &inputs(1, Bounded::Value(0), Some(true)), &[0, 1, 3], &[]).unwrap();
        assert!(r.intervals.iter().all(|x| x.exact && x.upper == 0));
    }
}
