//! The bundled corpus and the acceptance runner.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use essx_core::cohomology::{e_cohomology, gamma_e_exactness_check, Ideal};
use essx_core::eexact::{check_e_split, is_short_exact, verify_nine_lemma, CochainComplex, NineMode, ShortSequence};
use essx_core::einjective::{comparison_lift, homotopy_witness, horseshoe, probe_e_injective, LiftOptions, Resolution};
use essx_core::essential::{cyclic_subgroups, essential_oracle, is_essential, subgroup_lattice};
use essx_core::{gen, smith_normal_form, FgModule, IntMatrix, ModMorphism, Submodule};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::commands::{run_command, RunOptions};
use crate::document::{parse_document, serialize_document, Arg, ComplexSpec, Document, Int, ModuleSpec, MorphismSpec, ResolutionSpec, SequenceSpec, Task};
use crate::report;

/// Time allowed for reproducing the worked example.
pub const REFERENCE_RUNTIME: Duration = Duration::from_secs(1);
/// Time allowed for the essentiality oracle sweep.
pub const ORACLE_RUNTIME: Duration = Duration::from_secs(20);
/// Full subgroup lattices are enumerated up to this order.
pub const LATTICE_ORDER: u64 = 64;
pub const MAX_ORDER: u64 = 128;
/// Random generating sets tried per group above [`LATTICE_ORDER`].
pub const RANDOM_SUBGROUPS: usize = 20;

/// A bundled document with the verb to run and the exit status it must give.
#[derive(Clone, Copy, Debug)]
pub struct Case {
    pub name: &'static str,
    pub text: &'static str,
    pub verb: &'static str,
    pub expected_exit: i32,
}

macro_rules! case {
    ($file:literal, $verb:literal, $exit:literal) => {
        Case { name: $file, text: include_str!(concat!("../corpus/", $file, ".json")), verb: $verb, expected_exit: $exit }
    };
}

pub const CASES: &[Case] = &[
    case!("worked_example", "e-cohomology", 0),
    case!("worked_sequence", "e-exact", 0),
    case!("essential_2z", "essential", 0),
    case!("socle_missed", "essential", 1),
    case!("snf_identity", "snf", 0),
    case!("snf_big", "canon", 0),
    case!("snf_big", "snf", 0),
    case!("not_morphism", "check-morphism", 1),
    case!("e_split_direct", "e-split", 0),
    case!("e_split_doubling", "e-split", 1),
    case!("bad_shape", "check-morphism", 2),
    case!("dangling_ref", "canon", 2),
    case!("syntax_error", "canon", 2),
    case!("horseshoe_split", "horseshoe", 0),
    case!("horseshoe_split", "long-sequence", 0),
    case!("horseshoe_trivial", "horseshoe", 2),
    case!("long_torsion_quotient", "long-sequence", 2),
    case!("gamma_z12", "gamma", 0),
    case!("unit_ideal", "gamma", 0),
    case!("zero_ideal", "gamma", 2),
    case!("starved_extend", "extend", 1),
    case!("extend_z2_z8", "extend", 0),
    case!("not_complex", "cohomology", 2),
    case!("baer_z", "baer", 0),
    case!("probe_z", "probe-einjective", 0),
];

pub fn case(name: &str) -> Option<&'static Case> {
    CASES.iter().find(|c| c.name == name)
}

/// Builds documents from library objects, naming each object once.
#[derive(Default)]
pub struct DocBuilder {
    doc: Document,
    modules: Vec<(FgModule, String)>,
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

impl DocBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn module(&mut self, m: &FgModule) -> String {
        if let Some((_, n)) = self.modules.iter().find(|(x, _)| x == m) {
            return n.clone();
        }
        let name = format!("M{}", self.modules.len());
        let rel = m.relations();
        let relations = (0..rel.cols()).map(|j| ints(&rel.column(j))).collect();
        self.doc.modules.insert(name.clone(), ModuleSpec { generators: m.num_generators(), relations });
        self.modules.push((m.clone(), name.clone()));
        name
    }

    pub fn morphism(&mut self, f: &ModMorphism) -> String {
        let (domain, codomain) = (self.module(f.domain()), self.module(f.codomain()));
        let name = format!("f{}", self.doc.morphisms.len());
        let matrix = f.matrix().to_rows().iter().map(|r| ints(r)).collect();
        self.doc.morphisms.insert(name.clone(), MorphismSpec { domain, codomain, matrix });
        name
    }

    pub fn sequence(&mut self, s: &ShortSequence) -> String {
        let (f, g) = (self.morphism(s.f()), self.morphism(s.g()));
        let name = format!("s{}", self.doc.sequences.len());
        self.doc.sequences.insert(name.clone(), SequenceSpec { f, g });
        name
    }

    pub fn complex(&mut self, x: &CochainComplex) -> String {
        let objects = x.objects().iter().map(|m| self.module(m)).collect();
        let maps = x.maps().iter().map(|f| self.morphism(f)).collect();
        let name = format!("X{}", self.doc.complexes.len());
        self.doc.complexes.insert(name.clone(), ComplexSpec { lo: x.lo(), objects, maps });
        name
    }

    pub fn resolution(&mut self, r: &Resolution) -> String {
        let target = self.module(r.target());
        let augmentation = self.morphism(r.augmentation());
        let complex = self.complex(r.complex());
        let name = format!("R{}", self.doc.resolutions.len());
        self.doc.resolutions.insert(name.clone(), ResolutionSpec { target, augmentation, complex });
        name
    }

    pub fn ideal(&mut self, n: &BigInt) -> String {
        let name = format!("a{}", self.doc.ideals.len());
        self.doc.ideals.insert(name.clone(), Int(n.clone()));
        name
    }

    pub fn task(mut self, op: &str, args: &[(&str, Arg)]) -> Document {
        let args: BTreeMap<String, Arg> = args.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        self.doc.task = Some(Task { op: op.to_string(), args, options: Default::default() });
        self.doc
    }
}

fn r(name: String) -> Arg {
    Arg::Ref(name)
}

fn num(n: i64) -> Arg {
    Arg::Int(n.into())
}

/// Documents built from generated instances, covering the verbs that
/// need larger inputs than the bundled files.
pub fn generated_cases(seed: u64) -> Vec<(String, Document, &'static str, i32)> {
    let mut rng = gen::rng(seed);
    let mut out = Vec::new();

    let grid = gen::nine_grid(&mut rng, NineMode::Bottom);
    let mut b = DocBuilder::new();
    let rows: Vec<Arg> = grid.rows().iter().map(|s| r(b.sequence(s))).collect();
    let cols: Vec<Arg> = grid.columns().iter().map(|s| r(b.sequence(s))).collect();
    let doc = b.task("nine-lemma", &[("rows", Arg::List(rows)), ("columns", Arg::List(cols)), ("mode", Arg::Ref("bottom".into()))]);
    out.push(("generated nine grid".into(), doc, "nine-lemma", 0));

    let (bottom, top) = (gen::resolution(&mut rng), gen::resolution(&mut rng));
    let f = gen::morphism(&mut rng, bottom.target(), top.target(), 4);
    for verb in ["lift", "homotopy"] {
        let mut b = DocBuilder::new();
        let args = [("map", r(b.morphism(&f))), ("bottom", r(b.resolution(&bottom))), ("top", r(b.resolution(&top)))];
        out.push((format!("generated {verb}"), b.task(verb, &args), verb, 0));
    }

    let mut b = DocBuilder::new();
    let res = gen::resolution(&mut rng);
    let args = [("complex", r(b.complex(res.complex())))];
    out.push(("generated complex".into(), b.task("cohomology", &args), "cohomology", 0));

    let (z2, z4) = (FgModule::cyclic(2), FgModule::cyclic(4));
    let s = ShortSequence::new(ModMorphism::zero(&z2, &z4), ModMorphism::identity(&z4)).expect("composable");
    let mut b = DocBuilder::new();
    let args = [("sequence", r(b.sequence(&s)))];
    out.push(("zero first map".into(), b.task("e-exact", &args), "e-exact", 1));

    let mut b = DocBuilder::new();
    let z = FgModule::free(1);
    let m = b.module(&z);
    b.doc.elements.insert("v".into(), crate::document::ElementSpec { module: m, coords: vec![Int::from(3)] });
    out.push(("zero ideal generator".into(), b.task("baer", &[("value", Arg::Ref("v".into())), ("n", num(0))]), "baer", 2));
    out
}

/// Exit status of running `verb` on document text, as the binary would report it.
pub fn exit_status(text: &str, verb: &str) -> i32 {
    match parse_document(text) {
        Ok(doc) => exit_status_doc(&doc, verb),
        Err(_) => 2,
    }
}

fn exit_status_doc(doc: &Document, verb: &str) -> i32 {
    match run_command(verb, doc, &RunOptions::default()) {
        Ok(r) => r.exit_code(),
        Err(e) => e.exit_code(),
    }
}

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct ContractCheck {
    pub name: String,
    pub verb: String,
    pub expected: i32,
    pub actual: i32,
    pub round_trip: bool,
    pub witnesses_replay: bool,
}

impl ContractCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.actual && self.round_trip && self.witnesses_replay
    }
}

#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub seed: u64,
    pub r_cap: Option<BigInt>,
    pub criteria: Vec<Criterion>,
    pub contract: Vec<ContractCheck>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed) && self.contract_passed()
    }

    pub fn contract_passed(&self) -> bool {
        self.contract.iter().all(ContractCheck::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// One line per criterion, then one for the exit-status contract.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .criteria
            .iter()
            .map(|c| format!("[{}] {:>2} {:<34} {:>8.3}s  {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name, c.elapsed.as_secs_f64(), c.detail))
            .collect();
        let bad: Vec<&str> = self.contract.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
        out.push(format!(
            "[{}]    {:<34}            {} cases{}",
            if bad.is_empty() { "PASS" } else { "FAIL" },
            "exit-status contract",
            self.contract.len(),
            if bad.is_empty() { String::new() } else { format!(", failing: {}", bad.join(", ")) }
        ));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "r_cap": self.r_cap.as_ref().map(report::int),
            "passed": self.passed(),
            "criteria": self.criteria.iter().map(|c| json!({"id": c.id, "name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
            "contract": self.contract.iter().map(|c| json!({
                "case": c.name, "verb": c.verb, "expected": c.expected, "actual": c.actual,
                "round_trip": c.round_trip, "witnesses_replay": c.witnesses_replay,
            })).collect::<Vec<_>>(),
        })
    }
}

type Check = fn(u64, Option<&BigInt>) -> (bool, String);

const CRITERIA: &[(u32, &str, Check)] = &[
    (1, "worked example H^1 = Z/8", reference_h1),
    (2, "worked example H^0 = Z/4", reference_h0),
    (3, "resolution validity", resolution_validity),
    (4, "vanishing", vanishing),
    (5, "essentiality oracle equivalence", oracle_equivalence),
    (6, "smith normal form", smith_suite),
    (7, "e-split", e_split_suite),
    (8, "3x3 lemma", nine_suite),
    (9, "comparison and homotopy", homotopy_suite),
    (10, "torsion functor", gamma_suite),
    (11, "horseshoe", horseshoe_suite),
];

/// Runs every criterion (in parallel, reported in order) and the exit-status
/// contract over the bundled and generated documents.
pub fn verify_corpus(seed: u64, r_cap: Option<&BigInt>) -> CorpusReport {
    let criteria = std::thread::scope(|scope| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|&(id, name, check)| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let (passed, detail) = check(seed.wrapping_add(1000 * id as u64), r_cap);
                    Criterion { id, name, passed, detail, elapsed: start.elapsed() }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    CorpusReport { seed, r_cap: r_cap.cloned(), criteria, contract: contract(seed) }
}

fn contract_doc(name: String, doc: &Document, verb: &str, expected: i32) -> ContractCheck {
    let round_trip = parse_document(&serialize_document(doc)).as_ref() == Ok(doc);
    let (actual, witnesses_replay) = match run_command(verb, doc, &RunOptions::default()) {
        Ok(r) => (r.exit_code(), r.witnesses.iter().all(|w| report::replay_witness(w) == Ok(true))),
        Err(e) => (e.exit_code(), true),
    };
    ContractCheck { name, verb: verb.to_string(), expected, actual, round_trip, witnesses_replay }
}

pub fn contract(seed: u64) -> Vec<ContractCheck> {
    let mut out = Vec::new();
    for c in CASES {
        match parse_document(c.text) {
            Ok(doc) => out.push(contract_doc(format!("{}/{}", c.name, c.verb), &doc, c.verb, c.expected_exit)),
            Err(_) => out.push(ContractCheck {
                name: format!("{}/{}", c.name, c.verb),
                verb: c.verb.to_string(),
                expected: c.expected_exit,
                actual: 2,
                round_trip: true,
                witnesses_replay: true,
            }),
        }
    }
    for (name, doc, verb, expected) in generated_cases(seed) {
        out.push(contract_doc(name, &doc, verb, expected));
    }
    out
}

fn worked_report() -> Result<crate::Report, String> {
    let c = case("worked_example").ok_or("worked example document missing")?;
    let doc = parse_document(c.text).map_err(|e| e.to_string())?;
    let opts = RunOptions { range: Some((0, 2)), ..Default::default() };
    run_command("e-cohomology", &doc, &opts).map_err(|e| e.to_string())
}

fn degree_invariants(r: &crate::Report, i: i64) -> Option<(Value, Value)> {
    let d = r.result["degrees"].as_array()?.iter().find(|d| d["degree"] == json!(i))?;
    Some((d["module"]["invariants"].clone(), d["module"]["rank"].clone()))
}

fn reference_h1(_: u64, _: Option<&BigInt>) -> (bool, String) {
    let start = Instant::now();
    let r = match worked_report() {
        Ok(r) => r,
        Err(e) => return (false, e),
    };
    let elapsed = start.elapsed();
    let h1 = degree_invariants(&r, 1);
    let h2 = degree_invariants(&r, 2);
    let ok = h1 == Some((json!([8]), json!(0))) && h2 == Some((json!([]), json!(0))) && elapsed < REFERENCE_RUNTIME;
    let mut detail = r.headline.clone();
    if elapsed >= REFERENCE_RUNTIME {
        detail.push_str(", over the time budget");
    }
    (ok, detail)
}

/// The kernel of `n ↦ 8n` from Z/8 to Z/16, enumerated directly.
fn kernel_by_hand() -> Vec<i64> {
    (0..8).filter(|x| (8 * x) % 16 == 0).collect()
}

fn reference_h0(_: u64, _: Option<&BigInt>) -> (bool, String) {
    let r = match worked_report() {
        Ok(r) => r,
        Err(e) => return (false, e),
    };
    let kernel = kernel_by_hand();
    // a subgroup of a cyclic group is cyclic of its own order
    let expected = json!([kernel.len()]);
    let h0 = degree_invariants(&r, 0);
    let shown = h0.as_ref().map_or("missing".to_string(), |(inv, _)| inv.to_string());
    (h0 == Some((expected, json!(0))) && kernel == [0, 2, 4, 6], format!("kernel by enumeration {kernel:?}, H^0 invariants {shown}"))
}

fn resolution_validity(seed: u64, _: Option<&BigInt>) -> (bool, String) {
    let Some(c) = case("worked_sequence") else { return (false, "sequence document missing".into()) };
    let exact = exit_status(c.text, "e-exact") == 0;
    let terms = [FgModule::cyclic(8), FgModule::cyclic(16)];
    let probes: Vec<bool> = terms.iter().map(|e| probe_e_injective(e, 16, 4, seed).all_passed()).collect();
    (exact && probes.iter().all(|&p| p), format!("short e-exact: {exact}, probes passed: {probes:?}"))
}

fn vanishing(seed: u64, _: Option<&BigInt>) -> (bool, String) {
    let mut rng = gen::rng(seed);
    let ideals = [2, 3, 6, 10];
    let mut bad = Vec::new();
    for t in 0..50 {
        let res = gen::resolution(&mut rng);
        let a = Ideal::new(ideals[rng.gen_range(0..ideals.len())]);
        match e_cohomology(&a, res.target(), &res, -3..=-1) {
            Ok(rep) if rep.degrees.iter().all(|d| d.module.is_zero()) => {}
            other => bad.push(format!("negative #{t}: {:?}", other.err())),
        }
    }
    for t in 0..50 {
        let e = gen::module(&mut rng, 3, 40, 0.3);
        let a = Ideal::new(ideals[rng.gen_range(0..ideals.len())]);
        match e_cohomology(&a, &e, &Resolution::trivial(&e), 1..=3) {
            Ok(rep) if rep.degrees.iter().all(|d| d.module.is_zero()) => {}
            other => bad.push(format!("trivial #{t}: {:?}", other.err())),
        }
    }
    (bad.is_empty(), if bad.is_empty() { "100 inputs, all zero".into() } else { bad.join("; ") })
}

fn oracle_equivalence(seed: u64, _: Option<&BigInt>) -> (bool, String) {
    let start = Instant::now();
    let mut rng = gen::rng(seed);
    let (mut groups, mut checked, mut disagreements) = (0usize, 0usize, Vec::new());
    for n in 1..=MAX_ORDER {
        for m in gen::abelian_groups_of_order(n) {
            groups += 1;
            let subs = if n <= LATTICE_ORDER {
                subgroup_lattice(&m, usize::MAX)
            } else {
                cyclic_subgroups(&m).map(|mut v| {
                    v.extend((0..RANDOM_SUBGROUPS).map(|_| random_subgroup(&mut rng, &m)));
                    v
                })
            };
            let subs = match subs {
                Ok(s) => s,
                Err(e) => return (false, format!("order {n}: {e}")),
            };
            for s in subs {
                checked += 1;
                if essential_oracle(&s, &m).ok() != Some(is_essential(&s, &m)) {
                    disagreements.push(format!("{} in {}", report::display_module(s.source()), report::display_module(&m)));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = disagreements.is_empty() && elapsed < ORACLE_RUNTIME;
    let mut detail = format!("{groups} groups, {checked} subgroups, {} disagreements", disagreements.len());
    if let Some(d) = disagreements.first() {
        detail.push_str(&format!(" (first: {d})"));
    }
    (ok, detail)
}

fn random_subgroup(rng: &mut gen::SeededRng, m: &FgModule) -> Submodule {
    let k = rng.gen_range(1..=3);
    let elements: Vec<_> = (0..k).map(|_| gen::element(rng, m, 64)).collect();
    Submodule::generated_by_elements(m, &elements)
}

fn smith_ok(a: &IntMatrix) -> bool {
    let s = smith_normal_form(a);
    let unit = |m: &IntMatrix| m.determinant().abs().is_one();
    let d = s.diagonal();
    let diagonal = (0..s.s.rows()).all(|i| (0..s.s.cols()).all(|j| i == j || s.s[(i, j)].is_zero()));
    let chain = d.windows(2).all(|p| if p[0].is_zero() { p[1].is_zero() } else { (&p[1] % &p[0]).is_zero() });
    let nonneg = d.iter().all(|x| !x.is_negative());
    let rank = d.iter().filter(|x| !x.is_zero()).count() == s.rank;
    let inverses = s.u.mul(&s.u_inv) == IntMatrix::identity(a.rows()) && s.v.mul(&s.v_inv) == IntMatrix::identity(a.cols());
    s.u.mul(a).mul(&s.v) == s.s && unit(&s.u) && unit(&s.v) && diagonal && chain && nonneg && rank && inverses
}

fn smith_suite(seed: u64, _: Option<&BigInt>) -> (bool, String) {
    let mut rng = gen::rng(seed);
    let mut bad = 0;
    for _ in 0..1000 {
        let (rows, cols) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-50..=50)).collect();
        if !smith_ok(&IntMatrix::from_i64(rows, cols, &entries)) {
            bad += 1;
        }
    }
    (bad == 0, format!("1000 matrices, {bad} failures"))
}

fn e_split_suite(seed: u64, cap: Option<&BigInt>) -> (bool, String) {
    let mut rng = gen::rng(seed);
    let (mut not_found, mut other) = (0, Vec::new());
    let mut largest = BigInt::one();
    for t in 0..100 {
        let inst = gen::e_exact_instance(&mut rng, t % 2 == 0, false);
        match check_e_split(&inst.sequence, &inst.section, &inst.scalar, cap) {
            Ok(rep) if rep.iso.isomorphic && rep.split.replay() => largest = largest.max(rep.r),
            Ok(_) => other.push(format!("#{t}: unverified report")),
            Err(essx_core::Error::WitnessNotFound { .. }) => not_found += 1,
            Err(e) => other.push(format!("#{t}: {e}")),
        }
    }
    let ok = not_found == 0 && other.is_empty();
    let mut detail = format!("100 sequences, largest r = {largest}, witness-not-found {not_found}");
    if !other.is_empty() {
        detail.push_str(&format!(", errors: {}", other.join("; ")));
    }
    (ok, detail)
}

fn nine_suite(seed: u64, _: Option<&BigInt>) -> (bool, String) {
    let mut rng = gen::rng(seed);
    let mut falsified = Vec::new();
    for mode in [NineMode::Middle, NineMode::Bottom] {
        for t in 0..200 {
            let grid = gen::nine_grid(&mut rng, mode);
            match verify_nine_lemma(&grid, mode) {
                Ok(rep) if rep.holds() => {}
                Ok(rep) => falsified.push(format!("{mode:?} #{t}: {:?}", rep.concluded.failures())),
                Err(e) => falsified.push(format!("{mode:?} #{t}: {e}")),
            }
        }
    }
    (falsified.is_empty(), format!("400 grids, {} falsifications {}", falsified.len(), falsified.first().cloned().unwrap_or_default()).trim_end().to_string())
}

fn homotopy_suite(seed: u64, cap: Option<&BigInt>) -> (bool, String) {
    let mut rng = gen::rng(seed);
    let mut bad = Vec::new();
    for t in 0..50u64 {
        let bottom = gen::resolution(&mut rng);
        let top = gen::resolution(&mut rng);
        let f = gen::morphism(&mut rng, bottom.target(), top.target(), 4);
        let opts = |p| LiftOptions { cap: cap.cloned(), perturb_seed: p };
        let outcome = comparison_lift(&f, &bottom, &top, &opts(None))
            .and_then(|a| comparison_lift(&f, &bottom, &top, &opts(Some(seed ^ t))).map(|b| (a, b)))
            .and_then(|(a, b)| {
                let w = homotopy_witness(&a, &b, &bottom, &top, cap)?;
                Ok(a.replay() && b.replay() && w.replay())
            });
        match outcome {
            Ok(true) => {}
            Ok(false) => bad.push(format!("#{t}: replay failed")),
            Err(e) => bad.push(format!("#{t}: {e}")),
        }
    }
    (bad.is_empty(), format!("50 instances, {} failures {}", bad.len(), bad.first().cloned().unwrap_or_default()).trim_end().to_string())
}

fn gamma_suite(seed: u64, _: Option<&BigInt>) -> (bool, String) {
    let mut rng = gen::rng(seed);
    let ideals = [2, 3, 5, 6, 12];
    let (mut left, mut full, mut torsion_free, mut bad) = (0, 0, 0, Vec::new());
    for t in 0..100 {
        let inst = gen::e_exact_instance(&mut rng, t % 2 == 0, t % 3 != 0);
        let a = Ideal::new(ideals[rng.gen_range(0..ideals.len())]);
        match gamma_e_exactness_check(&a, &inst.sequence) {
            Ok(g) => {
                if g.left_holds() {
                    left += 1;
                } else {
                    bad.push(format!("#{t}: left"));
                }
                match g.full_holds() {
                    Some(true) => {
                        full += 1;
                        torsion_free += 1;
                    }
                    Some(false) => {
                        torsion_free += 1;
                        bad.push(format!("#{t}: full"));
                    }
                    None => {}
                }
            }
            Err(e) => bad.push(format!("#{t}: {e}")),
        }
    }
    (bad.is_empty(), format!("left e-exact {left}/100, full e-exact {full}/{torsion_free} with torsion-free quotient {}", bad.join("; ")).trim_end().to_string())
}

fn horseshoe_suite(seed: u64, cap: Option<&BigInt>) -> (bool, String) {
    let mut rng = gen::rng(seed);
    let mut bad = Vec::new();
    for t in 0..50 {
        let inst = gen::e_exact_instance(&mut rng, t % 2 == 0, true);
        match horseshoe(&inst.sequence, &inst.left, &inst.right, cap) {
            Ok(h) => {
                let split = (0..h.inclusions.len()).all(|n| is_short_exact(&h.column(n)));
                if h.resolution.first_failure().is_some() || !split || !h.lift.replay() {
                    bad.push(format!("#{t}"));
                }
            }
            Err(e) => bad.push(format!("#{t}: {e}")),
        }
    }
    (bad.is_empty(), format!("50 instances, {} failures {}", bad.len(), bad.first().cloned().unwrap_or_default()).trim_end().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_round_trips() {
        for c in CASES {
            if let Ok(doc) = parse_document(c.text) {
                assert_eq!(parse_document(&serialize_document(&doc)).unwrap(), doc, "{}", c.name);
            }
        }
    }

    #[test]
    fn builder_documents_parse() {
        for (name, doc, _, _) in generated_cases(7) {
            let text = serialize_document(&doc);
            assert_eq!(parse_document(&text).unwrap(), doc, "{name}");
        }
    }

    #[test]
    fn hand_kernel() {
        assert_eq!(kernel_by_hand(), vec![0, 2, 4, 6]);
    }
}
