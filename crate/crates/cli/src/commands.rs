//! Verb dispatch from documents onto the library.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;
use std::time::Instant;

use essx_core::cohomology::{cohomology_at, e_cohomology, gamma, gamma_map, long_sequence_verify, Ideal};
use essx_core::eexact::{check_e_split, is_e_exact_at, is_short_e_exact, is_short_exact, verify_nine_lemma, CochainComplex, NineGrid, NineMode, ShortSequence};
use essx_core::einjective::{baer_extend, canonical_baer_witness, comparison_lift, essential_extend, homotopy_witness, horseshoe, probe_e_injective, LiftOptions, Resolution};
use essx_core::essential::{essential_oracle, essential_verdict, socle};
use essx_core::{is_isomorphic, smith_normal_form, Error, FgModule, IntMatrix, ModElement, ModMorphism, Submodule};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::document::{Arg, DocError, Document, ModuleSpec};
use crate::report::{self, Report, Status};

pub const VERBS: &[&str] = &[
    "snf",
    "canon",
    "check-morphism",
    "essential",
    "e-exact",
    "e-split",
    "baer",
    "extend",
    "probe-einjective",
    "lift",
    "homotopy",
    "horseshoe",
    "gamma",
    "cohomology",
    "e-cohomology",
    "nine-lemma",
    "long-sequence",
];

/// Oracle cross-checks in `essential` reports run only on groups this small.
const ORACLE_ORDER: u64 = 4096;

/// Flags that override the task's own options.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub range: Option<(i64, i64)>,
    pub ideal: Option<BigInt>,
    pub r_cap: Option<BigInt>,
    pub seed: Option<u64>,
    pub verbose: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("unknown verb {0:?}")]
    UnknownVerb(String),
    #[error(transparent)]
    Document(#[from] DocError),
    #[error("{0}")]
    Input(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

enum Fail {
    Input(String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

type R<T> = Result<T, Fail>;

fn input<T>(msg: impl Into<String>) -> R<T> {
    Err(Fail::Input(msg.into()))
}

/// Parses `LO..HI` (inclusive).
pub fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("range {s:?} is not of the form LO..HI"))?;
    let lo = lo.trim().parse().map_err(|_| format!("bad range start {lo:?}"))?;
    let hi = hi.trim().trim_start_matches('=').parse().map_err(|_| format!("bad range end {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

pub fn run_command(verb: &str, doc: &Document, opts: &RunOptions) -> Result<Report, CommandError> {
    if !VERBS.contains(&verb) {
        return Err(CommandError::UnknownVerb(verb.to_string()));
    }
    let start = Instant::now();
    let ctx = Ctx::new(doc, opts);
    let mut report = match dispatch(verb, &ctx) {
        Ok(r) => r,
        Err(Fail::Lib(e)) => match exhausted(&e) {
            Some(status) => Report::new(verb, status, e.to_string()).with("error", json!(e.to_string())),
            None => return Err(CommandError::Input(e.to_string())),
        },
        Err(Fail::Input(m)) => return Err(CommandError::Input(m)),
    };
    report.task = doc.task.as_ref().map(|t| serde_json::to_value(t).expect("tasks serialize")).unwrap_or(Value::Null);
    report.seed = ctx.seed();
    if let Some(task) = &doc.task {
        if task.op != verb {
            report.warnings.push(format!("task names {:?} but {verb:?} was run", task.op));
        }
    }
    for (k, w) in report.witnesses.iter().enumerate() {
        if report::replay_witness(w) != Ok(true) {
            report.warnings.push(format!("witness {k} did not replay"));
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Errors that are answers (exit 1) rather than bad input (exit 2).
fn exhausted(e: &Error) -> Option<Status> {
    match e {
        Error::NotESplit { .. } => Some(Status::False),
        Error::WitnessNotFound { .. } | Error::ProbeFailure { .. } | Error::ZigZagObstruction { .. } => Some(Status::WitnessNotFound),
        _ => None,
    }
}

fn dispatch(verb: &str, c: &Ctx) -> R<Report> {
    match verb {
        "snf" => snf(c),
        "canon" => canon(c),
        "check-morphism" => check_morphism(c),
        "essential" => essential(c),
        "e-exact" => e_exact(c),
        "e-split" => e_split(c),
        "baer" => baer(c),
        "extend" => extend(c),
        "probe-einjective" => probe(c),
        "lift" => lift(c),
        "homotopy" => homotopy(c),
        "horseshoe" => horseshoe_verb(c),
        "gamma" => gamma_verb(c),
        "cohomology" => cohomology(c),
        "e-cohomology" => e_cohomology_verb(c),
        "nine-lemma" => nine_lemma(c),
        "long-sequence" => long_sequence(c),
        _ => unreachable!("verbs are checked before dispatch"),
    }
}

struct Ctx<'a> {
    doc: &'a Document,
    opts: &'a RunOptions,
    args: BTreeMap<String, Arg>,
    modules: RefCell<HashMap<String, FgModule>>,
}

fn to_big(n: &serde_json::Number) -> R<BigInt> {
    BigInt::from_str(&n.to_string()).or_else(|_| input(format!("{n} is not an integer")))
}

pub(crate) fn build_module(spec: &ModuleSpec) -> essx_core::Result<FgModule> {
    let cols: Vec<Vec<BigInt>> = spec.relations.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
    FgModule::present(spec.generators, IntMatrix::from_columns(spec.generators, &cols))
}

impl<'a> Ctx<'a> {
    fn new(doc: &'a Document, opts: &'a RunOptions) -> Self {
        let args = doc.task.as_ref().map(|t| t.args.clone()).unwrap_or_default();
        Ctx { doc, opts, args, modules: RefCell::new(HashMap::new()) }
    }

    fn verbose(&self) -> bool {
        self.opts.verbose
    }

    fn seed(&self) -> u64 {
        self.opts.seed.or_else(|| self.doc.task.as_ref().and_then(|t| t.options.seed)).unwrap_or(0)
    }

    fn cap(&self) -> Option<BigInt> {
        self.opts.r_cap.clone().or_else(|| self.doc.task.as_ref().and_then(|t| t.options.r_cap.as_ref()).map(|i| i.0.clone()))
    }

    fn range(&self, default: (i64, i64)) -> (i64, i64) {
        self.opts
            .range
            .or_else(|| self.doc.task.as_ref().and_then(|t| t.options.range).map(|[a, b]| (a, b)))
            .unwrap_or(default)
    }

    fn has(&self, key: &str) -> bool {
        self.args.contains_key(key)
    }

    fn name(&self, key: &str) -> R<String> {
        match self.args.get(key) {
            Some(Arg::Ref(s)) => Ok(s.clone()),
            Some(_) => input(format!("argument {key:?} must name an object")),
            None => input(format!("missing argument {key:?}")),
        }
    }

    fn names(&self, key: &str) -> R<Vec<String>> {
        match self.args.get(key) {
            Some(Arg::List(items)) => items
                .iter()
                .map(|a| match a {
                    Arg::Ref(s) => Ok(s.clone()),
                    _ => input(format!("argument {key:?} must list object names")),
                })
                .collect(),
            Some(_) => input(format!("argument {key:?} must be a list")),
            None => input(format!("missing argument {key:?}")),
        }
    }

    /// An integer argument, given inline or as the name of an ideal.
    fn int(&self, key: &str) -> R<Option<BigInt>> {
        match self.args.get(key) {
            None => Ok(None),
            Some(Arg::Int(n)) => to_big(n).map(Some),
            Some(Arg::Ref(s)) => match self.doc.ideals.get(s) {
                Some(i) => Ok(Some(i.0.clone())),
                None => input(format!("argument {key:?} must be an integer or an ideal name")),
            },
            Some(Arg::List(_)) => input(format!("argument {key:?} must be an integer")),
        }
    }

    fn require_int(&self, key: &str) -> R<BigInt> {
        self.int(key)?.map_or_else(|| input(format!("missing argument {key:?}")), Ok)
    }

    fn small(&self, key: &str, default: u64) -> R<u64> {
        match self.int(key)? {
            None => Ok(default),
            Some(n) => u64::try_from(n).or_else(|_| input(format!("argument {key:?} must be a small nonnegative integer"))),
        }
    }

    fn ideal(&self) -> R<Ideal> {
        if let Some(n) = &self.opts.ideal {
            return Ok(Ideal::new(n.clone()));
        }
        match self.int("ideal")? {
            Some(n) => Ok(Ideal::new(n)),
            None if self.doc.ideals.len() == 1 => Ok(Ideal::new(self.doc.ideals.values().next().expect("one").0.clone())),
            None => input("no ideal given (use --ideal or an \"ideal\" argument)"),
        }
    }

    fn module(&self, name: &str) -> R<FgModule> {
        if let Some(m) = self.modules.borrow().get(name) {
            return Ok(m.clone());
        }
        let spec = self.doc.modules.get(name).map_or_else(|| input(format!("{name:?} is not a module")), Ok)?;
        let m = build_module(spec)?;
        self.modules.borrow_mut().insert(name.to_string(), m.clone());
        Ok(m)
    }

    fn morphism_parts(&self, name: &str) -> R<(IntMatrix, FgModule, FgModule)> {
        let spec = self.doc.morphisms.get(name).map_or_else(|| input(format!("{name:?} is not a morphism")), Ok)?;
        let dom = self.module(&spec.domain)?;
        let cod = self.module(&spec.codomain)?;
        let rows: Vec<Vec<BigInt>> = spec.matrix.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
        Ok((IntMatrix::from_rows(&rows, dom.num_generators()), dom, cod))
    }

    fn morphism(&self, name: &str) -> R<ModMorphism> {
        let (m, dom, cod) = self.morphism_parts(name)?;
        ModMorphism::new(m, &dom, &cod).map_err(|e| Fail::Input(format!("morphism {name:?}: {e}")))
    }

    fn complex(&self, name: &str) -> R<CochainComplex> {
        let spec = self.doc.complexes.get(name).map_or_else(|| input(format!("{name:?} is not a complex")), Ok)?;
        let objects = spec.objects.iter().map(|o| self.module(o)).collect::<R<Vec<_>>>()?;
        let maps = spec.maps.iter().map(|m| self.morphism(m)).collect::<R<Vec<_>>>()?;
        Ok(CochainComplex::new(spec.lo, objects, maps)?)
    }

    fn sequence(&self, name: &str) -> R<ShortSequence> {
        let spec = self.doc.sequences.get(name).map_or_else(|| input(format!("{name:?} is not a sequence")), Ok)?;
        Ok(ShortSequence::new(self.morphism(&spec.f)?, self.morphism(&spec.g)?)?)
    }

    fn resolution(&self, name: &str) -> R<Resolution> {
        let spec = self.doc.resolutions.get(name).map_or_else(|| input(format!("{name:?} is not a resolution")), Ok)?;
        let target = self.module(&spec.target)?;
        Ok(Resolution::new(&target, self.morphism(&spec.augmentation)?, self.complex(&spec.complex)?)?)
    }

    fn submodule(&self, name: &str) -> R<Submodule> {
        let spec = self.doc.submodules.get(name).map_or_else(|| input(format!("{name:?} is not a submodule")), Ok)?;
        let m = self.module(&spec.ambient)?;
        let cols: Vec<Vec<BigInt>> = spec.generators.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
        Ok(Submodule::generated_by(&m, &IntMatrix::from_columns(m.num_generators(), &cols)))
    }

    fn element(&self, name: &str) -> R<ModElement> {
        let spec = self.doc.elements.get(name).map_or_else(|| input(format!("{name:?} is not an element")), Ok)?;
        let m = self.module(&spec.module)?;
        Ok(m.element(spec.coords.iter().map(|x| x.0.clone()).collect())?)
    }

    fn module_json(&self, m: &FgModule) -> Value {
        report::module(m, self.verbose())
    }

    fn morphism_json(&self, f: &ModMorphism) -> Value {
        report::morphism(f, self.verbose())
    }
}

fn inline_matrix(arg: &Arg) -> R<IntMatrix> {
    let Arg::List(rows) = arg else { return input("\"matrix\" must be an array of rows") };
    let mut out = Vec::new();
    for row in rows {
        let Arg::List(xs) = row else { return input("\"matrix\" must be an array of rows") };
        out.push(
            xs.iter()
                .map(|x| match x {
                    Arg::Int(n) => to_big(n),
                    Arg::Ref(s) => BigInt::from_str(s).or_else(|_| input(format!("{s:?} is not an integer"))),
                    Arg::List(_) => input("matrix entries must be integers"),
                })
                .collect::<R<Vec<_>>>()?,
        );
    }
    let cols = out.first().map_or(0, Vec::len);
    if out.iter().any(|r| r.len() != cols) {
        return input("\"matrix\" rows have different lengths");
    }
    Ok(IntMatrix::from_rows(&out, cols))
}

fn snf(c: &Ctx) -> R<Report> {
    let a = if let Some(arg) = c.args.get("matrix") {
        inline_matrix(arg)?
    } else if c.has("morphism") {
        c.morphism_parts(&c.name("morphism")?)?.0
    } else if c.has("module") {
        c.module(&c.name("module")?)?.relations().clone()
    } else {
        return input("snf needs a \"matrix\", \"morphism\" or \"module\" argument");
    };
    let s = smith_normal_form(&a);
    let diag = s.diagonal();
    let shown: Vec<String> = diag.iter().map(ToString::to_string).collect();
    let mut r = Report::new("snf", Status::Success, format!("diagonal [{}], rank {}", shown.join(", "), s.rank))
        .with("diagonal", report::ints(&diag))
        .with("rank", json!(s.rank))
        .with("u", report::matrix(&s.u))
        .with("s", report::matrix(&s.s))
        .with("v", report::matrix(&s.v));
    r.witnesses.push(report::smith_witness(&a, &s.u, &s.s, &s.v));
    Ok(r)
}

fn canon(c: &Ctx) -> R<Report> {
    let m = c.module(&c.name("module")?)?;
    let order = m.order().map_or(Value::Null, |n| report::int(&n));
    Ok(Report::new("canon", Status::Success, report::display_module(&m))
        .with("module", c.module_json(&m))
        .with("order", order)
        .with("to_canonical", report::matrix(m.to_canon()))
        .with("from_canonical", report::matrix(m.from_canon())))
}

fn check_morphism(c: &Ctx) -> R<Report> {
    let name = c.name("morphism")?;
    let (m, dom, cod) = c.morphism_parts(&name)?;
    match ModMorphism::new(m, &dom, &cod) {
        Ok(f) => Ok(Report::new("check-morphism", Status::True, "well defined").with("morphism", c.morphism_json(&f))),
        Err(Error::NotAMorphism { relator }) => Ok(Report::new("check-morphism", Status::False, format!("relator {relator} of the domain is not sent into the relations"))
            .with("failed_relator", json!(relator))),
        Err(e) => Err(e.into()),
    }
}

fn essential(c: &Ctx) -> R<Report> {
    let s = c.submodule(&c.name("submodule")?)?;
    let m = s.ambient().clone();
    let v = essential_verdict(&s, &m);
    let mut r = Report::new("essential", Status::from_verdict(v.holds()), if v.holds() { "essential" } else { "not essential" })
        .with("submodule", c.module_json(s.source()))
        .with("ambient", c.module_json(&m))
        .with("finite_index", json!(v.finite_index))
        .with("contains_socle", json!(v.contains_socle))
        .with("socle", c.module_json(socle(&m).source()));
    if m.order().is_some_and(|n| n <= BigInt::from(ORACLE_ORDER)) {
        let oracle = essential_oracle(&s, &m)?;
        r.set("oracle_agrees", json!(oracle == v.holds()));
    }
    Ok(r)
}

fn e_exact(c: &Ctx) -> R<Report> {
    if c.has("sequence") {
        let s = c.sequence(&c.name("sequence")?)?;
        let v = is_short_e_exact(&s);
        let failures = v.failures();
        let headline = if v.holds() { "short e-exact".to_string() } else { format!("fails: {}", failures.join(", ")) };
        return Ok(Report::new("e-exact", Status::from_verdict(v.holds()), headline)
            .with("terms", json!([c.module_json(s.a()), c.module_json(s.b()), c.module_json(s.c())]))
            .with("monic", json!(v.monic))
            .with("image_in_kernel", json!(v.middle.image_in_kernel))
            .with("middle_essential", json!(v.middle.essential))
            .with("image_essential", json!(v.image_essential))
            .with("exact", json!(is_short_exact(&s)))
            .with("failures", json!(failures)));
    }
    let x = c.complex(&c.name("complex")?)?;
    let (lo, hi) = c.range((x.lo(), x.hi()));
    let mut positions = Vec::new();
    let mut all = true;
    for i in lo..=hi {
        let v = is_e_exact_at(&x, i)?;
        all &= v.holds();
        positions.push(json!({"degree": i, "image_in_kernel": v.image_in_kernel, "essential": v.essential, "holds": v.holds()}));
    }
    Ok(Report::new("e-exact", Status::from_verdict(all), if all { "e-exact at every position" } else { "not e-exact" })
        .with("positions", Value::Array(positions)))
}

fn e_split(c: &Ctx) -> R<Report> {
    let s = c.sequence(&c.name("sequence")?)?;
    let j = c.morphism(&c.name("section")?)?;
    let scalar = c.require_int("scalar")?;
    let rep = check_e_split(&s, &j, &scalar, c.cap().as_ref())?;
    let mut r = Report::new("e-split", Status::True, format!("r = {}: rB ≅ A ⊕ C", rep.r))
        .with("r", report::int(&rep.r))
        .with("rB", c.module_json(&rep.rb))
        .with("target", c.module_json(&rep.target))
        .with("tried", json!(rep.tried));
    r.witnesses.push(report::from_core_witness(&rep.split));
    if let (Some(f), Some(g)) = (&rep.iso.witness, &is_isomorphic(&rep.target, &rep.rb).witness) {
        r.witnesses.push(report::iso_witness("rB ≅ A ⊕ C", f, g));
    }
    Ok(r)
}

fn baer(c: &Ctx) -> R<Report> {
    let v = c.element(&c.name("value")?)?;
    let n = c.require_int("n")?;
    let x = baer_extend(&n, &v)?;
    let canonical = canonical_baer_witness(&n, &v)?;
    let e = v.module();
    let mut r = Report::new("baer", Status::Success, format!("r = {}", x.r()))
        .with("module", c.module_json(e))
        .with("r", report::int(x.r()))
        .with("g(1)", report::ints(&e.canonical_coords(&x.value())))
        .with("canonical_r", report::int(canonical.r()));
    r.witnesses.push(report::from_core_witness(&x.witness));
    r.witnesses.push(report::from_core_witness(&canonical.witness));
    Ok(r)
}

fn extend(c: &Ctx) -> R<Report> {
    let f1 = c.morphism(&c.name("f1")?)?;
    let f2 = c.morphism(&c.name("f2")?)?;
    let x = essential_extend(&f1, &f2, c.cap().as_ref())?;
    let mut r = Report::new("extend", Status::Success, format!("r = {} (admissible: multiples of {})", x.witness.r, x.minimal))
        .with("r", report::int(&x.witness.r))
        .with("minimal", report::int(&x.minimal))
        .with("f3", c.morphism_json(&x.f3));
    r.witnesses.push(report::from_core_witness(&x.witness));
    Ok(r)
}

fn probe(c: &Ctx) -> R<Report> {
    let e = c.module(&c.name("module")?)?;
    let bound = c.small("ideal_bound", 16)?;
    let samples = c.small("samples", 4)? as usize;
    let p = probe_e_injective(&e, bound, samples, c.seed());
    let passed = p.all_passed();
    let max_r = p.baer.iter().map(|b| b.r.clone()).max().unwrap_or_default();
    let extensions: Vec<Value> = p
        .extensions
        .iter()
        .map(|x| {
            json!({
                "domain": report::display_module(&x.domain),
                "codomain": report::display_module(&x.codomain),
                "r": x.outcome.as_ref().map(report::int).unwrap_or(Value::Null),
                "error": x.outcome.as_ref().err().map(ToString::to_string),
                "replayed": x.replayed,
            })
        })
        .collect();
    let mut r = Report::new("probe-einjective", Status::from_verdict(passed), format!("{} probes, {} failures", p.baer.len() + p.extensions.len(), p.failures()))
        .with("module", c.module_json(&e))
        .with("ideal_bound", json!(bound))
        .with("baer_probes", json!(p.baer.len()))
        .with("largest_baer_r", report::int(&max_r))
        .with("extensions", Value::Array(extensions))
        .with("failures", json!(p.failures()));
    r.warnings.push(p.note.to_string());
    Ok(r)
}

fn lift_inputs(c: &Ctx) -> R<(ModMorphism, Resolution, Resolution)> {
    Ok((c.morphism(&c.name("map")?)?, c.resolution(&c.name("bottom")?)?, c.resolution(&c.name("top")?)?))
}

fn lift(c: &Ctx) -> R<Report> {
    let (f, bottom, top) = lift_inputs(c)?;
    let l = comparison_lift(&f, &bottom, &top, &LiftOptions { cap: c.cap(), perturb_seed: None })?;
    let scalars = l.scalars();
    let shown: Vec<String> = scalars.iter().map(ToString::to_string).collect();
    let mut r = Report::new("lift", Status::Success, format!("stage scalars [{}]", shown.join(", ")))
        .with("scalars", report::ints(&scalars))
        .with("total_scalar", report::int(&l.total_scalar()))
        .with("maps", Value::Array(l.maps.iter().map(|m| c.morphism_json(m)).collect()));
    r.witnesses.extend(l.squares.iter().map(report::from_core_witness));
    Ok(r)
}

fn homotopy(c: &Ctx) -> R<Report> {
    let (f, bottom, top) = lift_inputs(c)?;
    let a = comparison_lift(&f, &bottom, &top, &LiftOptions { cap: c.cap(), perturb_seed: None })?;
    let b = comparison_lift(&f, &bottom, &top, &LiftOptions { cap: c.cap(), perturb_seed: Some(c.seed()) })?;
    let w = homotopy_witness(&a, &b, &bottom, &top, c.cap().as_ref())?;
    let mut r = Report::new("homotopy", Status::from_verdict(w.replay()), format!("e-homotopic with r = {}, s = {}", w.r, w.s))
        .with("r", report::int(&w.r))
        .with("s", report::int(&w.s))
        .with("first_lift_scalars", report::ints(&a.scalars()))
        .with("second_lift_scalars", report::ints(&b.scalars()))
        .with("homotopy", Value::Array(w.maps.iter().map(|m| c.morphism_json(m)).collect()));
    let relation = "r·(h^n − f^n) = s^{n+1}∘d^n + s·(d^{n−1}∘s^n)";
    r.witnesses.extend(w.identities().iter().map(|(l, rhs)| report::equation_witness(relation, l, rhs)));
    r.witnesses.extend(a.squares.iter().chain(&b.squares).map(report::from_core_witness));
    Ok(r)
}

/// `δ^{n+1}∘δ^n = 0` and `δ^0∘ε = 0` as equations.
fn complex_witnesses(res: &Resolution) -> Vec<Value> {
    let x = res.complex();
    let mut out = Vec::new();
    let first = x.map(0).compose(res.augmentation()).expect("composable");
    out.push(report::equation_witness("δ^0∘ε = 0", &first, &ModMorphism::zero(first.domain(), first.codomain())));
    for n in 0..x.hi() - 1 {
        let dd = x.map(n + 1).compose(&x.map(n)).expect("composable");
        out.push(report::equation_witness(&format!("δ^{}∘δ^{n} = 0", n + 1), &dd, &ModMorphism::zero(dd.domain(), dd.codomain())));
    }
    out
}

fn resolution_json(c: &Ctx, res: &Resolution) -> Value {
    Value::Array(res.complex().objects().iter().map(|m| c.module_json(m)).collect())
}

fn horseshoe_verb(c: &Ctx) -> R<Report> {
    let s = c.sequence(&c.name("sequence")?)?;
    let (left, right) = (c.resolution(&c.name("left")?)?, c.resolution(&c.name("right")?)?);
    let h = horseshoe(&s, &left, &right, c.cap().as_ref())?;
    let columns: Vec<bool> = (0..h.inclusions.len()).map(|n| is_short_exact(&h.column(n))).collect();
    let failure = h.resolution.first_failure();
    let ok = failure.is_none() && columns.iter().all(|&x| x);
    let mut r = Report::new("horseshoe", Status::from_verdict(ok), if ok { "e-exact resolution, columns split" } else { "construction failed a check" })
        .with("resolution", resolution_json(c, &h.resolution))
        .with("signs", report::ints(&h.signs))
        .with("lift_scalars", report::ints(&h.lift.scalars()))
        .with("first_failure", json!(failure))
        .with("columns_split", json!(columns));
    r.witnesses.extend(h.lift.squares.iter().map(report::from_core_witness));
    r.witnesses.extend(complex_witnesses(&h.resolution));
    Ok(r)
}

fn gamma_verb(c: &Ctx) -> R<Report> {
    let a = c.ideal()?;
    let mut r = if c.has("morphism") {
        let f = c.morphism(&c.name("morphism")?)?;
        let g = gamma_map(&a, &f)?;
        Report::new("gamma", Status::Success, format!("Γ{a}: {} → {}", report::display_module(g.domain()), report::display_module(g.codomain())))
            .with("map", c.morphism_json(&g))
    } else {
        let m = c.module(&c.name("module")?)?;
        let g = gamma(&a, &m)?;
        let gens = g.generators();
        let coords: Vec<Value> = (0..gens.cols()).map(|j| report::ints(&m.canonical_coords(&gens.column(j)))).collect();
        Report::new("gamma", Status::Success, format!("Γ{a}({}) = {}", report::display_module(&m), report::display_module(g.source())))
            .with("module", c.module_json(g.source()))
            .with("generators", Value::Array(coords))
    };
    r.set("ideal", report::int(a.generator()));
    r.warnings.extend(a.warning().map(str::to_string));
    Ok(r)
}

fn degrees_headline(items: &[(i64, FgModule)]) -> String {
    items.iter().map(|(i, m)| format!("H^{i} = {}", report::display_module(m))).collect::<Vec<_>>().join(", ")
}

fn degrees_json(c: &Ctx, items: &[(i64, FgModule)]) -> Value {
    Value::Array(items.iter().map(|(i, m)| json!({"degree": i, "module": c.module_json(m)})).collect())
}

fn cohomology(c: &Ctx) -> R<Report> {
    let x = c.complex(&c.name("complex")?)?;
    let (lo, hi) = c.range((x.lo(), x.hi()));
    let items = (lo..=hi).map(|i| Ok((i, cohomology_at(&x, i)?.module))).collect::<R<Vec<_>>>()?;
    Ok(Report::new("cohomology", Status::Success, degrees_headline(&items)).with("degrees", degrees_json(c, &items)))
}

fn e_cohomology_verb(c: &Ctx) -> R<Report> {
    let res = c.resolution(&c.name("resolution")?)?;
    let m = if c.has("module") { c.module(&c.name("module")?)? } else { res.target().clone() };
    let a = c.ideal()?;
    let (lo, hi) = c.range((0, res.top()));
    let rep = e_cohomology(&a, &m, &res, lo..=hi)?;
    let items: Vec<(i64, FgModule)> = rep.degrees.iter().map(|d| (d.degree, d.module.clone())).collect();
    let mut r = Report::new("e-cohomology", Status::Success, degrees_headline(&items))
        .with("module", c.module_json(&m))
        .with("ideal", report::int(a.generator()))
        .with("degrees", degrees_json(c, &items))
        .with("resolution", resolution_json(c, &res))
        .with("gamma_complex", Value::Array(rep.gamma_complex.objects().iter().map(|x| c.module_json(x)).collect()))
        .with("note", json!("computed over the supplied resolution; other resolutions of the same module may give other values"));
    r.warnings.extend(rep.warnings);
    r.witnesses.extend(complex_witnesses(&res));
    Ok(r)
}

fn nine_lemma(c: &Ctx) -> R<Report> {
    let rows = c.names("rows")?;
    let cols = c.names("columns")?;
    if rows.len() != 3 || cols.len() != 3 {
        return input("nine-lemma needs three rows and three columns");
    }
    let mode = match &c.args.get("mode") {
        None => NineMode::Middle,
        Some(Arg::Ref(s)) if s == "middle" => NineMode::Middle,
        Some(Arg::Ref(s)) if s == "bottom" => NineMode::Bottom,
        Some(_) => return input("mode must be \"middle\" or \"bottom\""),
    };
    let seq = |names: &[String]| -> R<[ShortSequence; 3]> {
        Ok([c.sequence(&names[0])?, c.sequence(&names[1])?, c.sequence(&names[2])?])
    };
    let grid = NineGrid::new(seq(&rows)?, seq(&cols)?)?;
    let rep = verify_nine_lemma(&grid, mode)?;
    let row = mode.concluded_row();
    let squares: Vec<Value> = rep
        .squares
        .iter()
        .map(|s| json!({"row": s.row, "column": s.column, "admissible": s.commute.admissible.to_string()}))
        .collect();
    let hypotheses: Vec<Value> = rep.hypotheses.iter().map(|(h, v)| json!({"hypothesis": h, "holds": v})).collect();
    let mut r = Report::new("nine-lemma", Status::from_verdict(rep.holds()), format!("row {row} {}", if rep.holds() { "is e-exact" } else { "is not e-exact" }))
        .with("mode", json!(if mode == NineMode::Middle { "middle" } else { "bottom" }))
        .with("hypotheses", Value::Array(hypotheses))
        .with("squares", Value::Array(squares))
        .with("concluded_row", json!(row))
        .with("failures", json!(rep.concluded.failures()));
    r.witnesses.extend(rep.squares.iter().filter_map(|s| s.commute.witness.as_ref()).map(report::from_core_witness));
    Ok(r)
}

fn long_sequence(c: &Ctx) -> R<Report> {
    let s = c.sequence(&c.name("sequence")?)?;
    let (left, right) = (c.resolution(&c.name("left")?)?, c.resolution(&c.name("right")?)?);
    let a = c.ideal()?;
    let (lo, hi) = c.range((0, 1));
    let rep = long_sequence_verify(&a, &s, &left, &right, lo..=hi, c.cap().as_ref())?;
    let terms: Vec<Value> = rep
        .labels
        .iter()
        .zip(rep.sequence.objects())
        .map(|(l, m)| json!({"term": l, "module": c.module_json(m)}))
        .collect();
    let positions: Vec<Value> = rep.positions.iter().map(|(l, v)| json!({"term": l, "holds": v.holds()})).collect();
    let connecting: Vec<Value> = rep.connecting.iter().map(|k| json!({"degree": k.degree, "scalar": report::int(&k.scalar), "map": c.morphism_json(&k.map)})).collect();
    let failures = rep.failures();
    let headline = if rep.holds() { "e-exact at every checked term".to_string() } else { format!("fails at {}", failures.join(", ")) };
    let mut r = Report::new("long-sequence", Status::from_verdict(rep.holds()), headline)
        .with("ideal", report::int(a.generator()))
        .with("terms", Value::Array(terms))
        .with("positions", Value::Array(positions))
        .with("connecting", Value::Array(connecting))
        .with("columns_e_exact", json!(rep.columns.iter().map(|x| x.holds()).collect::<Vec<_>>()));
    r.warnings.extend(a.warning().map(str::to_string));
    r.witnesses.extend(rep.horseshoe.lift.squares.iter().map(report::from_core_witness));
    r.witnesses.extend(complex_witnesses(&rep.horseshoe.resolution));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse_document;

    fn run(text: &str, verb: &str) -> Result<Report, CommandError> {
        run_command(verb, &parse_document(text).unwrap(), &RunOptions::default())
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..2"), Ok((0, 2)));
        assert_eq!(parse_range("-3..=1"), Ok((-3, 1)));
        assert!(parse_range("2..0").is_err());
        assert!(parse_range("5").is_err());
    }

    #[test]
    fn worked_cohomology() {
        let r = run(include_str!("../corpus/worked_example.json"), "e-cohomology").unwrap();
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.headline, "H^0 = Z/4, H^1 = Z/8, H^2 = 0");
        assert!(r.warnings.is_empty(), "{:?}", r.warnings);
    }

    #[test]
    fn unknown_verb() {
        let doc = Document::new();
        assert!(matches!(run_command("frobnicate", &doc, &RunOptions::default()), Err(CommandError::UnknownVerb(_))));
    }

    #[test]
    fn ideal_flag_overrides() {
        let doc = parse_document(include_str!("../corpus/gamma_z12.json")).unwrap();
        let opts = RunOptions { ideal: Some(BigInt::from(3)), ..Default::default() };
        let r = run_command("gamma", &doc, &opts).unwrap();
        assert_eq!(r.result["module"]["invariants"], json!([3]));
    }

    #[test]
    fn missing_argument_is_input_error() {
        let text = r#"{"version": 1, "modules": {"M": {"generators": 1}}, "task": {"op": "essential", "args": {}}}"#;
        assert!(matches!(run(text, "essential"), Err(CommandError::Input(_))));
    }
}
