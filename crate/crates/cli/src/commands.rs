use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use syzex_core::algebra::{injective, projective, AlgebraSpec, PathAlgebra};
use syzex_core::extdim::{
    bullet_with_stats, ed_report, generate_universe, layers, rep_type_certificate, syzygy_finiteness,
    tits_with_witness, AddCat, BulletOptions, EdOptions, ExternalFact, RepTypeMethod, RepTypeVerdict, Universe,
    UniverseOptions,
};
use syzex_core::homology::{
    cosyzygy, default_dimension_bound, ext1_space, extension_middle, gldim_bounded, syzygy, tilting_check,
    DEFAULT_APPROXIMATION_BUDGET, DEFAULT_ENUMERATION_BUDGET,
};
use syzex_core::rep::{decompose_with, validate, DecomposeOptions, ModuleSpec, Representation};
use syzex_core::{corpus, extdim, Error};

use crate::args::{AlgebraAction, Cli, Command, CorpusAction, ModAction, Window};
use crate::report::Report;
use crate::{BUDGET_ENV, EXIT_BUDGET, EXIT_INVALID};

enum Failure {
    Invalid(Vec<String>),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Invalid(vec![other.to_string()]),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

struct Loaded {
    /// Name used for external facts and module files.
    name: String,
    /// Corpus id without parameters, when the spec came from the corpus.
    corpus: Option<String>,
    alg: Arc<PathAlgebra>,
}

struct Ctx<'a> {
    cli: &'a Cli,
    report: Report,
    hasher: Sha256,
    hashed: bool,
    timings: BTreeMap<String, u128>,
}

pub(crate) fn execute(cli: &Cli, echo: String) -> (i32, Report) {
    let mut ctx = Ctx {
        cli,
        report: Report {
            command: echo,
            ..Default::default()
        },
        hasher: Sha256::new(),
        hashed: false,
        timings: BTreeMap::new(),
    };
    ctx.report.inputs.seed = cli.seed;
    let start = Instant::now();
    let code = match ctx.dispatch(&cli.command) {
        Ok(()) => 0,
        Err(Failure::Invalid(msgs)) => {
            ctx.report.errors.extend(msgs);
            EXIT_INVALID
        }
        Err(Failure::Budget(msg)) => {
            ctx.report.errors.push(msg);
            EXIT_BUDGET
        }
    };
    if ctx.hashed {
        ctx.report.inputs.digest = format!("{:x}", ctx.hasher.clone().finalize());
    }
    if cli.timings {
        ctx.timings.insert("total".into(), start.elapsed().as_millis());
        ctx.report.timings_ms = Some(ctx.timings);
    }
    (code, ctx.report)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn dims_of(cat: &AddCat) -> Value {
    to_value(&cat.dim_vectors())
}

impl Ctx<'_> {
    fn dispatch(&mut self, command: &Command) -> Outcome<()> {
        match command {
            Command::Algebra {
                action: AlgebraAction::Info { spec },
            } => self.algebra_info(spec),
            Command::Mod { action } => self.module_command(action),
            Command::Ext { spec, x, y, enumerate } => self.ext(spec, x, y, *enumerate),
            Command::Bullet {
                spec,
                left,
                right,
                window,
            } => self.bullet(spec, left, right, *window),
            Command::Layer {
                spec,
                generators,
                n,
                window,
            } => self.layer(spec, generators, *n, *window),
            Command::Syzcat { spec, n, window } => self.syzcat(spec, *n, *window),
            Command::Ed {
                spec,
                indices,
                facts,
                syzygy_search,
                window,
            } => self.ed(spec, indices, facts.as_deref(), *syzygy_search, *window),
            Command::Tilting { spec, module, pd_bound } => self.tilting(spec, module, *pd_bound),
            Command::Reptype { spec, window } => self.reptype(spec, *window),
            Command::Corpus { action } => self.corpus(action),
        }
    }

    fn budget(&self) -> Outcome<u128> {
        if let Some(b) = self.cli.budget {
            return Ok(b);
        }
        match std::env::var(BUDGET_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Failure::Invalid(vec![format!("{BUDGET_ENV}={s:?} is not a nonnegative integer")])),
            Err(_) => Ok(DEFAULT_ENUMERATION_BUDGET as u128),
        }
    }

    fn digest(&mut self, bytes: &[u8]) {
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
        self.hashed = true;
    }

    fn time<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        *self.timings.entry(label.to_string()).or_default() += t.elapsed().as_millis();
        out
    }

    fn bound(&mut self, key: &str, v: impl Serialize) {
        self.report.bounds.insert(key.to_string(), to_value(&v));
    }

    fn load(&mut self, arg: &str) -> Outcome<Loaded> {
        let (spec, name, corpus_id) = match corpus::spec(arg) {
            Ok(s) => (
                s,
                arg.to_string(),
                Some(arg.split(':').next().unwrap_or(arg).to_string()),
            ),
            Err(Error::UnknownCorpusId(_)) if Path::new(arg).is_file() => {
                let text = std::fs::read_to_string(arg)
                    .map_err(|e| Failure::Invalid(vec![format!("cannot read {arg}: {e}")]))?;
                let s = AlgebraSpec::from_json(&text).map_err(|e| Failure::Invalid(vec![format!("{arg}: {e}")]))?;
                let stem = Path::new(arg)
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| arg.to_string());
                (s, stem, None)
            }
            Err(Error::UnknownCorpusId(_)) => {
                return Err(Failure::Invalid(vec![format!(
                    "{arg:?} is neither a corpus id nor a readable algebra file"
                )]))
            }
            Err(e) => return Err(e.into()),
        };
        let spec = match self.cli.field {
            Some(p) => spec.with_field(p),
            None => spec,
        };
        self.digest(spec.to_json().as_bytes());
        let alg = PathAlgebra::build(&spec)?;
        self.report.inputs.algebra = Some(arg.to_string());
        self.report.inputs.field = Some(alg.characteristic());
        Ok(Loaded {
            name,
            corpus: corpus_id,
            alg,
        })
    }

    /// A file path, a named corpus module, or `+`-joined `S<v>`/`P<v>`/`I<v>` tokens.
    fn module(&mut self, l: &Loaded, arg: &str) -> Outcome<Representation> {
        if Path::new(arg).is_file() {
            let text =
                std::fs::read_to_string(arg).map_err(|e| Failure::Invalid(vec![format!("cannot read {arg}: {e}")]))?;
            self.digest(text.as_bytes());
            let spec = ModuleSpec::from_json(&text).map_err(|e| Failure::Invalid(vec![format!("{arg}: {e}")]))?;
            return validate(&l.alg, &spec)
                .map_err(|vs| Failure::Invalid(vs.iter().map(|v| format!("{arg}: {v}")).collect()));
        }
        self.digest(arg.as_bytes());
        let mut parts = Vec::new();
        for token in arg.split('+').map(str::trim) {
            let named = l
                .corpus
                .as_deref()
                .and_then(|id| corpus::named_modules(id).iter().find(|(n, _)| *n == token));
            match named {
                Some((_, tokens)) => {
                    for t in tokens.iter() {
                        parts.push(corpus::module_from_token(&l.alg, t)?);
                    }
                }
                None => parts.push(corpus::module_from_token(&l.alg, token).map_err(|_| {
                    Failure::Invalid(vec![format!(
                        "{token:?} is not a module token (S<v>, P<v>, I<v>), a named module or a file"
                    )])
                })?),
            }
        }
        Ok(Representation::direct_sum_all(&l.alg, parts.iter()))
    }

    fn add_cat(&mut self, l: &Loaded, args: &[String]) -> Outcome<AddCat> {
        let mut cat = AddCat::new(l.alg.clone());
        for a in args {
            let m = self.module(l, a)?;
            cat.insert_module(&m);
        }
        cat.sort();
        Ok(cat)
    }

    fn decompose_options(&self) -> DecomposeOptions {
        DecomposeOptions {
            seed: self.cli.seed,
            ..Default::default()
        }
    }

    fn summary(&mut self, m: &Representation) -> Value {
        let dec = decompose_with(m, &self.decompose_options());
        if !dec.certified {
            self.report.warnings.push(format!(
                "unknown iso: a summand of {} was accepted as indecomposable after sampling (seed {})",
                m.dim_vector(),
                self.cli.seed
            ));
        }
        json!(dec
            .factors
            .iter()
            .map(|(f, k)| json!({"dims": f.dim_vector(), "multiplicity": k}))
            .collect::<Vec<_>>())
    }

    fn universe(&mut self, l: &Loaded, w: Window) -> Outcome<(Universe, UniverseOptions)> {
        let mut uo = UniverseOptions::new(w.dim_bound);
        uo.rules.mult_bound = w.mult_bound;
        uo.ext_budget = self.budget()?;
        self.bound("dim_bound", w.dim_bound);
        self.bound("mult_bound", w.mult_bound);
        self.bound("budget", uo.ext_budget.to_string());
        self.bound("member_cap", uo.member_cap);
        let u = self.time("universe", || generate_universe(&l.alg, &uo))?;
        self.universe_notes(&u);
        Ok((u, uo))
    }

    fn universe_notes(&mut self, u: &Universe) {
        self.report.provenance.push(format!(
            "universe: closure of simples, projectives and injectives under syzygy, cosyzygy and extensions, \
             {} members after {} rounds",
            u.members.len(),
            u.rounds
        ));
        if u.clipped {
            let sample: Vec<String> = u.clipped_dims.iter().take(4).map(|d| d.to_string()).collect();
            self.report.warnings.push(format!(
                "clipped universe: candidates beyond dimension {} were dropped (e.g. {})",
                u.dim_bound,
                sample.join(" ")
            ));
        }
        if !u.saturated {
            self.report
                .warnings
                .push("universe did not saturate within the round limit".into());
        }
        if let Some((k, dv)) = u.heuristic_infinite() {
            self.report.warnings.push(format!(
                "heuristic: {k} non-isomorphic members with dimension vector {dv}"
            ));
        }
    }

    fn universe_value(u: &Universe) -> Value {
        json!({
            "members": u.members.len(),
            "saturated": u.saturated,
            "clipped": u.clipped,
            "rounds": u.rounds,
        })
    }

    fn algebra_info(&mut self, arg: &str) -> Outcome<()> {
        let l = self.load(arg)?;
        let a = &l.alg;
        let q = a.quiver();
        let bound = default_dimension_bound(a);
        let gldim = self.time("gldim", || gldim_bounded(a, bound));
        let (class, witness) = tits_with_witness(a);
        let arrows: Vec<Value> = q
            .arrows()
            .iter()
            .map(|x| json!({"name": x.name, "from": a.vertex_label(x.source), "to": a.vertex_label(x.target)}))
            .collect();
        let indec = |f: fn(&Arc<PathAlgebra>, usize) -> Representation| {
            (0..a.vertex_count())
                .map(|v| json!({"vertex": a.vertex_label(v), "dims": f(a, v).dim_vector()}))
                .collect::<Vec<_>>()
        };
        let named: Vec<&str> = l
            .corpus
            .as_deref()
            .map(|id| corpus::named_modules(id).iter().map(|(n, _)| *n).collect())
            .unwrap_or_default();
        self.report.results = json!({
            "vertices": q.vertices(),
            "arrows": arrows,
            "relations": a.relations().len(),
            "dim": a.dim(),
            "loewy_length": a.loewy_length(),
            "semisimple": a.is_semisimple(),
            "hereditary": a.is_hereditary_path_algebra(),
            "gldim": gldim,
            "tits_class": class.to_string(),
            "tits_witness": witness,
            "projectives": indec(projective),
            "injectives": indec(injective),
            "named_modules": named,
            "note": l.corpus.as_deref().and_then(corpus::external_note),
        });
        self.bound("gldim_search", bound);
        self.report
            .provenance
            .push("gldim: largest projective dimension of a simple, by minimal resolutions".into());
        self.report
            .provenance
            .push("tits class: leading principal minors of the symmetrized Euler form".into());
        Ok(())
    }

    fn module_command(&mut self, action: &ModAction) -> Outcome<()> {
        match action {
            ModAction::Validate { spec, module } => {
                let l = self.load(spec)?;
                let m = self.module(&l, module)?;
                let summands = self.summary(&m);
                self.report.results = json!({
                    "valid": true,
                    "dims": m.dim_vector(),
                    "total_dim": m.total_dim(),
                    "summands": summands,
                });
            }
            ModAction::Decompose { spec, module } => {
                let l = self.load(spec)?;
                let m = self.module(&l, module)?;
                let dec = decompose_with(&m, &self.decompose_options());
                if !dec.certified {
                    self.report.warnings.push(format!(
                        "unknown iso: some summand was accepted as indecomposable after sampling (seed {})",
                        self.cli.seed
                    ));
                }
                let factors: Vec<Value> = dec
                    .factors
                    .iter()
                    .map(|(f, k)| {
                        json!({"dims": f.dim_vector(), "multiplicity": k, "module": to_value(&f.to_module_spec(&l.name))})
                    })
                    .collect();
                self.report.results = json!({
                    "dims": m.dim_vector(),
                    "summand_count": dec.summand_count(),
                    "certified": dec.certified,
                    "factors": factors,
                });
                self.report
                    .provenance
                    .push("summands split off by idempotents of the endomorphism ring; multiplicities by isomorphism of indecomposables".into());
            }
            ModAction::Syzygy { n, spec, module, out } | ModAction::Cosyzygy { n, spec, module, out } => {
                let co = matches!(action, ModAction::Cosyzygy { .. });
                let l = self.load(spec)?;
                let m = self.module(&l, module)?;
                let r = self.time("syzygy", || if co { cosyzygy(&m, *n) } else { syzygy(&m, *n) });
                let file = r.to_module_spec(&l.name);
                if let Some(path) = out {
                    std::fs::write(path, file.to_json() + "\n")
                        .map_err(|e| Failure::Invalid(vec![format!("cannot write {}: {e}", path.display())]))?;
                }
                let summands = self.summary(&r);
                self.report.results = json!({
                    "n": n,
                    "input_dims": m.dim_vector(),
                    "dims": r.dim_vector(),
                    "summands": summands,
                    "module": to_value(&file),
                });
                self.report.provenance.push(if co {
                    "cosyzygy: dual of the syzygy of the dual module over the opposite algebra".into()
                } else {
                    "syzygy: kernel of a minimal projective cover, iterated".into()
                });
            }
        }
        Ok(())
    }

    fn ext(&mut self, spec: &str, x: &str, y: &str, enumerate: bool) -> Outcome<()> {
        let l = self.load(spec)?;
        let xm = self.module(&l, x)?;
        let ym = self.module(&l, y)?;
        let space = self.time("ext", || ext1_space(&xm, &ym))?;
        let mut results = json!({
            "x": xm.dim_vector(),
            "y": ym.dim_vector(),
            "dim": space.dim(),
            "class_count": space.class_count(),
        });
        self.report
            .provenance
            .push("Ext^1(X,Y): Hom(ΩX, Y) modulo restrictions of maps from the projective cover".into());
        if enumerate {
            let budget = self.budget()?;
            self.bound("budget", budget.to_string());
            let b = u64::try_from(budget).unwrap_or(u64::MAX);
            let coeffs = space.coefficient_vectors(b)?;
            let classes = space.enumerate(b)?;
            let mut list = Vec::with_capacity(classes.len());
            for (c, class) in coeffs.iter().zip(&classes) {
                let e = extension_middle(class);
                let summands = self.summary(&e.middle);
                list.push(json!({
                    "coefficients": c,
                    "split": c.iter().all(|&v| v == 0),
                    "middle": e.middle.dim_vector(),
                    "summands": summands,
                }));
            }
            results["classes"] = json!(list);
            self.report
                .provenance
                .push("middle terms: pushout of the cover sequence along each cocycle".into());
        }
        self.report.results = results;
        Ok(())
    }

    fn bullet_options(&self, w: Window) -> Outcome<BulletOptions> {
        Ok(BulletOptions {
            mult_bound: w.mult_bound,
            budget: self.budget()?,
            ..Default::default()
        })
    }

    fn bullet(&mut self, spec: &str, left: &[String], right: &[String], w: Window) -> Outcome<()> {
        let l = self.load(spec)?;
        let s1 = self.add_cat(&l, left)?;
        let s2 = self.add_cat(&l, right)?;
        let (u, _) = self.universe(&l, w)?;
        let opts = self.bullet_options(w)?;
        let (b, stats) = self.time("bullet", || bullet_with_stats(&u, &s1, &s2, &opts))?;
        let sweep = self.sweep(&b, &opts, |o| extdim::bullet(&u, &s1, &s2, o))?;
        let missing: Vec<_> = u
            .members
            .members()
            .iter()
            .filter(|m| !b.contains_indecomposable(m))
            .map(|m| m.dim_vector())
            .collect();
        self.report.results = json!({
            "left": dims_of(&s1),
            "right": dims_of(&s2),
            "members": dims_of(&b),
            "count": b.len(),
            "universe": Self::universe_value(&u),
            "contains_universe": missing.is_empty(),
            "universe_missing": missing,
            "pairs": stats.pairs,
            "orbits": stats.orbits.to_string(),
            "sweep": sweep,
        });
        self.report.provenance.push(
            "bullet: summands of middle terms of every extension class, up to automorphisms of the end terms, \
             with dim(sub) + dim(quotient) within the bound"
                .into(),
        );
        Ok(())
    }

    /// Recomputes `result` with the multiplicity bound raised by one and
    /// warns when that adds members.
    fn sweep(
        &mut self,
        result: &AddCat,
        opts: &BulletOptions,
        rerun: impl FnOnce(&BulletOptions) -> syzex_core::Result<AddCat>,
    ) -> Outcome<Value> {
        let mut wider = opts.clone();
        wider.mult_bound += 1;
        self.bound("sweep_mult_bound", wider.mult_bound);
        let again = match self.time("sweep", || rerun(&wider)) {
            Ok(c) => c,
            Err(Error::BudgetExceeded { .. }) => {
                self.report.warnings.push(format!(
                    "saturation sweep at mult_bound {} ran out of budget",
                    wider.mult_bound
                ));
                return Ok(Value::Null);
            }
            Err(e) => return Err(e.into()),
        };
        let new: Vec<_> = again
            .members()
            .iter()
            .filter(|m| !result.contains_indecomposable(m))
            .map(|m| m.dim_vector())
            .collect();
        if !new.is_empty() {
            self.report.warnings.push(format!(
                "not saturated in the multiplicity bound: mult_bound {} adds members ({} new)",
                wider.mult_bound,
                new.len()
            ));
        }
        Ok(json!({"mult_bound": wider.mult_bound, "stable": new.is_empty(), "new_members": new}))
    }

    fn layer(&mut self, spec: &str, generators: &[String], n: usize, w: Window) -> Outcome<()> {
        let l = self.load(spec)?;
        let t = self.add_cat(&l, generators)?;
        let (u, _) = self.universe(&l, w)?;
        let opts = self.bullet_options(w)?;
        let all = self.time("layers", || layers(&u, &t, n, &opts))?;
        let sizes: Vec<usize> = all.iter().map(AddCat::len).collect();
        let last = all.last().map(dims_of).unwrap_or_else(|| json!([]));
        let covers = all.last().is_some_and(|c| u.members.is_subset(c));
        let sweep = match all.last() {
            Some(top) => self.sweep(top, &opts, |o| extdim::layer(&u, &t, n, o))?,
            None => Value::Null,
        };
        self.report.results = json!({
            "generators": dims_of(&t),
            "n": n,
            "layer_sizes": sizes,
            "members": last,
            "contains_universe": covers,
            "universe": Self::universe_value(&u),
            "sweep": sweep,
        });
        self.report
            .provenance
            .push("layers: L_1 = add T, L_k = T • L_(k-1), each restricted to the dimension bound".into());
        Ok(())
    }

    fn syzcat(&mut self, spec: &str, n: usize, w: Window) -> Outcome<()> {
        let l = self.load(spec)?;
        let mut uo = UniverseOptions::new(w.dim_bound);
        uo.rules.mult_bound = w.mult_bound;
        uo.ext_budget = self.budget()?;
        self.bound("dim_bound", w.dim_bound);
        self.bound("mult_bound", w.mult_bound);
        self.bound("budget", uo.ext_budget.to_string());
        let f = self.time("syzcat", || syzygy_finiteness(&l.alg, n, &uo))?;
        if !f.certified {
            self.report.warnings.push(format!(
                "member list is what the window holds, not a certificate: {}",
                f.reason
            ));
        }
        self.report.results = json!({
            "n": n,
            "count": f.members.len(),
            "members": f.members,
            "stable": f.stable,
            "certified": f.certified,
            "reason": f.reason,
        });
        self.report.provenance.push(
            "syzygy category: summands of n-th syzygies of universe members, plus projectives; \
             finiteness compares bounds d and d + 1"
                .into(),
        );
        Ok(())
    }

    fn ed(&mut self, spec: &str, indices: &[usize], facts: Option<&Path>, search: usize, w: Window) -> Outcome<()> {
        let l = self.load(spec)?;
        let external = match facts {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Invalid(vec![format!("cannot read {}: {e}", path.display())]))?;
                self.digest(text.as_bytes());
                ExternalFact::parse_list(&text)
                    .map_err(|e| Failure::Invalid(vec![format!("{}: {e}", path.display())]))?
            }
            None => Vec::new(),
        };
        let mut opts = EdOptions::new(w.dim_bound);
        opts.universe.rules.mult_bound = w.mult_bound;
        opts.universe.ext_budget = self.budget()?;
        opts.syzygy_search = search;
        self.bound("dim_bound", w.dim_bound);
        self.bound("mult_bound", w.mult_bound);
        self.bound("budget", opts.universe.ext_budget.to_string());
        self.bound("syzygy_search", search);
        self.bound("gldim_search", default_dimension_bound(&l.alg));
        let name = l.name.clone();
        let r = self.time("ed", || ed_report(&l.alg, &name, indices, &external, &opts))?;
        for iv in &r.intervals {
            let what = if iv.exact {
                format!("ed Ω^{} = {}", iv.i, iv.lower)
            } else {
                format!("ed Ω^{} in [{}, {}]", iv.i, iv.lower, iv.upper)
            };
            self.report.provenance.push(format!(
                "{what}: lower by {}; upper by {}",
                iv.lower_provenance.join(" <- "),
                iv.upper_provenance.join(" <- ")
            ));
        }
        for note in &r.notes {
            if note.contains("heuristic") || note.contains("not certified") {
                self.report.warnings.push(note.clone());
            }
        }
        self.report.results = to_value(&r);
        Ok(())
    }

    fn tilting(&mut self, spec: &str, module: &str, pd_bound: Option<usize>) -> Outcome<()> {
        let l = self.load(spec)?;
        let t = self.module(&l, module)?;
        let bound = pd_bound.unwrap_or_else(|| default_dimension_bound(&l.alg));
        let approx = match self.cli.budget.is_some() || std::env::var(BUDGET_ENV).is_ok() {
            true => usize::try_from(self.budget()?).unwrap_or(usize::MAX),
            false => DEFAULT_APPROXIMATION_BUDGET,
        };
        self.bound("pd_bound", bound);
        self.bound("approximation_budget", approx);
        let v = self.time("tilting", || tilting_check(&t, bound, approx))?;
        let mut results = to_value(&v);
        results["dims"] = json!(t.dim_vector());
        results["summands"] = self.summary(&t);
        self.report.results = results;
        self.report.provenance.push(
            "tilting: pd by minimal resolution; Ext^i(T,T) via syzygies; coresolution of A by left add(T)-approximations"
                .into(),
        );
        Ok(())
    }

    fn reptype(&mut self, spec: &str, w: Window) -> Outcome<()> {
        let l = self.load(spec)?;
        let mut uo = UniverseOptions::new(w.dim_bound);
        uo.rules.mult_bound = w.mult_bound;
        uo.ext_budget = self.budget()?;
        self.bound("dim_bound", w.dim_bound);
        self.bound("mult_bound", w.mult_bound);
        self.bound("budget", uo.ext_budget.to_string());
        let c = self.time("reptype", || rep_type_certificate(&l.alg, &uo))?;
        match (&c.verdict, c.method) {
            (_, RepTypeMethod::HeuristicCount) => self
                .report
                .warnings
                .push("heuristic: the verdict rests on a member count, not a certificate".into()),
            (RepTypeVerdict::Unknown { reason }, _) => self.report.warnings.push(format!("undecided: {reason}")),
            _ => {}
        }
        if c.clipped == Some(true) {
            self.report
                .warnings
                .push(format!("clipped universe at dimension bound {}", c.dim_bound));
        }
        self.report.provenance.push(match c.method {
            RepTypeMethod::TitsForm => "Tits form of the quiver (hereditary algebra)".into(),
            RepTypeMethod::Enumeration => {
                "saturated closure with no candidate beyond the bound and every member below it".into()
            }
            RepTypeMethod::HeuristicCount => "count of members sharing a dimension vector".into(),
        });
        let mut results = to_value(&c);
        results["certified"] = json!(c.is_certified());
        results["member_count"] = json!(c.member_count());
        self.report.results = results;
        Ok(())
    }

    fn corpus(&mut self, action: &CorpusAction) -> Outcome<()> {
        match action {
            CorpusAction::List => {
                let mut entries = Vec::new();
                for id in corpus::list() {
                    let s = corpus::spec(id)?;
                    entries.push(json!({
                        "id": id,
                        "vertices": s.vertices.len(),
                        "arrows": s.arrows.len(),
                        "relations": s.relations.len(),
                        "field": s.field,
                        "comment": s.comment,
                    }));
                }
                self.report.results = json!({ "algebras": entries });
            }
            CorpusAction::Show { id } => {
                let s = corpus::spec(id).map_err(|e| Failure::Invalid(vec![e.to_string()]))?;
                self.digest(s.to_json().as_bytes());
                let base = id.split(':').next().unwrap_or(id);
                let named: BTreeMap<&str, &[&str]> = corpus::named_modules(base).iter().copied().collect();
                self.report.results = json!({
                    "id": id,
                    "spec": to_value(&s),
                    "named_modules": named,
                    "note": corpus::external_note(base),
                });
            }
        }
        Ok(())
    }
}
