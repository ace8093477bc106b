//! Reports: verdicts, computed modules in canonical form, and witnesses
//! that can be replayed through the library.

use std::time::Duration;

use essx_core::{FgModule, IntMatrix, ModMorphism};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::document::Int;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// A computation finished.
    Success,
    /// A decision returned true.
    True,
    /// A decision returned false.
    False,
    /// A bounded search ran out of candidates.
    WitnessNotFound,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success | Status::True => 0,
            Status::False | Status::WitnessNotFound => 1,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Success => "success",
            Status::True => "true",
            Status::False => "false",
            Status::WitnessNotFound => "witness-not-found",
        }
    }

    pub fn from_verdict(v: bool) -> Self {
        if v {
            Status::True
        } else {
            Status::False
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub verb: String,
    pub task: Value,
    pub status: Status,
    pub headline: String,
    pub result: Map<String, Value>,
    pub witnesses: Vec<Value>,
    pub seed: u64,
    pub warnings: Vec<String>,
    /// Shown in human output only, so that JSON reports are reproducible.
    pub elapsed: Duration,
}

impl Report {
    pub fn new(verb: &str, status: Status, headline: impl Into<String>) -> Self {
        Report {
            verb: verb.to_string(),
            task: Value::Null,
            status,
            headline: headline.into(),
            result: Map::new(),
            witnesses: Vec::new(),
            seed: 0,
            warnings: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.result.insert(key.to_string(), value);
        self
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.result.insert(key.to_string(), value);
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verb": self.verb,
            "task": self.task,
            "status": self.status.as_str(),
            "summary": self.headline,
            "result": Value::Object(self.result.clone()),
            "witnesses": self.witnesses,
            "seed": self.seed,
            "warnings": self.warnings,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("reports serialize")
    }

    pub fn render_human(&self) -> String {
        let mut out = format!("{}: {} [{}]\n", self.verb, self.headline, self.status.as_str());
        for (k, v) in &self.result {
            out.push_str(&format!("  {k}: {}\n", human_value(v)));
        }
        if !self.witnesses.is_empty() {
            let replayed = self.witnesses.iter().filter(|w| replay_witness(w) == Ok(true)).count();
            out.push_str(&format!("  witnesses: {} ({replayed} replayed)\n", self.witnesses.len()));
        }
        out.push_str(&format!("  seed: {}  time: {:.3}s\n", self.seed, self.elapsed.as_secs_f64()));
        out
    }
}

/// Renders canonical modules as `Z/4 ⊕ Z`, other values as compact JSON.
fn human_value(v: &Value) -> String {
    match v {
        Value::Object(m) if m.contains_key("invariants") && m.contains_key("rank") => {
            m.get("display").and_then(Value::as_str).unwrap_or_default().to_string()
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            let parts: Vec<String> = items.iter().map(human_value).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(m) => {
            let parts: Vec<String> = m.iter().map(|(k, x)| format!("{k}: {}", human_value(x))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn int(x: &BigInt) -> Value {
    serde_json::to_value(Int(x.clone())).expect("integers serialize")
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| ints(r)).collect())
}

pub fn display_module(m: &FgModule) -> String {
    let mut parts: Vec<String> = m.invariant_factors().iter().map(|d| format!("Z/{d}")).collect();
    match m.free_rank() {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

pub fn module(m: &FgModule, verbose: bool) -> Value {
    let mut v = json!({
        "invariants": ints(m.invariant_factors()),
        "rank": m.free_rank(),
        "display": display_module(m),
    });
    if verbose {
        v["presentation"] = json!({"generators": m.num_generators(), "relations": matrix(&m.relations().transpose())});
    }
    v
}

/// Matrix of `f` in canonical coordinates, torsion rows reduced.
pub fn canonical_matrix(f: &ModMorphism) -> IntMatrix {
    let mut m = f.canonical_matrix();
    for i in 0..m.rows() {
        let d = f.codomain().canonical_modulus(i);
        if !d.is_zero() {
            for j in 0..m.cols() {
                let x = &m[(i, j)] % &d;
                m[(i, j)] = if x.is_negative() { x + &d } else { x };
            }
        }
    }
    m
}

pub fn morphism(f: &ModMorphism, verbose: bool) -> Value {
    let mut v = json!({
        "domain": module(f.domain(), false),
        "codomain": module(f.codomain(), false),
        "matrix": matrix(&canonical_matrix(f)),
    });
    if verbose {
        v["presentation_matrix"] = matrix(f.matrix());
    }
    v
}

/// `lhs = r·rhs`.
pub fn scalar_witness(relation: &str, r: &BigInt, lhs: &ModMorphism, rhs: &ModMorphism) -> Value {
    json!({"kind": "scalar", "relation": relation, "r": int(r), "lhs": morphism(lhs, false), "rhs": morphism(rhs, false)})
}

pub fn from_core_witness(w: &essx_core::eexact::ScalarWitness) -> Value {
    scalar_witness(&w.relation, &w.r, &w.lhs, &w.rhs)
}

/// `lhs = rhs`.
pub fn equation_witness(relation: &str, lhs: &ModMorphism, rhs: &ModMorphism) -> Value {
    json!({"kind": "equation", "relation": relation, "lhs": morphism(lhs, false), "rhs": morphism(rhs, false)})
}

/// `u·a·v = s` with `u`, `v` unimodular and `s` diagonal.
pub fn smith_witness(a: &IntMatrix, u: &IntMatrix, s: &IntMatrix, v: &IntMatrix) -> Value {
    json!({"kind": "smith", "a": matrix(a), "u": matrix(u), "s": matrix(s), "v": matrix(v)})
}

/// An explicit isomorphism.
pub fn iso_witness(relation: &str, f: &ModMorphism, inverse: &ModMorphism) -> Value {
    json!({"kind": "isomorphism", "relation": relation, "map": morphism(f, false), "inverse": morphism(inverse, false)})
}

fn parse_int(v: &Value) -> Result<BigInt, String> {
    serde_json::from_value::<Int>(v.clone()).map(|i| i.0).map_err(|e| e.to_string())
}

fn parse_matrix(v: &Value) -> Result<IntMatrix, String> {
    let rows = v.as_array().ok_or("matrix must be an array")?;
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.as_array().ok_or("row must be an array".to_string())?.iter().map(parse_int).collect())
        .collect::<Result<_, _>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err("ragged matrix".into());
    }
    Ok(IntMatrix::from_rows(&rows, cols))
}

fn parse_module(v: &Value) -> Result<FgModule, String> {
    let factors: Vec<BigInt> = v["invariants"].as_array().ok_or("missing invariants")?.iter().map(parse_int).collect::<Result<_, _>>()?;
    let rank = v["rank"].as_u64().ok_or("missing rank")? as usize;
    Ok(FgModule::from_invariants(&factors, rank))
}

/// Rebuilds a morphism between canonical modules from its report form.
pub fn parse_morphism(v: &Value) -> Result<ModMorphism, String> {
    let dom = parse_module(&v["domain"])?;
    let cod = parse_module(&v["codomain"])?;
    let mut m = parse_matrix(&v["matrix"])?;
    if m.rows() == 0 && m.cols() == 0 {
        m = IntMatrix::zeros(cod.num_generators(), dom.num_generators());
    }
    if m.rows() != cod.num_generators() || m.cols() != dom.num_generators() {
        return Err("matrix shape does not match the modules".into());
    }
    ModMorphism::new(m, &dom, &cod).map_err(|e| e.to_string())
}

/// Re-verifies a witness from its serialized form alone.
pub fn replay_witness(w: &Value) -> Result<bool, String> {
    match w["kind"].as_str().ok_or("witness without kind")? {
        "scalar" => {
            let r = parse_int(&w["r"])?;
            let (lhs, rhs) = (parse_morphism(&w["lhs"])?, parse_morphism(&w["rhs"])?);
            Ok(!r.is_zero() && lhs.domain() == rhs.domain() && lhs.codomain() == rhs.codomain() && lhs.equals(&rhs.scale(&r)))
        }
        "equation" => {
            let (lhs, rhs) = (parse_morphism(&w["lhs"])?, parse_morphism(&w["rhs"])?);
            Ok(lhs.domain() == rhs.domain() && lhs.codomain() == rhs.codomain() && lhs.equals(&rhs))
        }
        "smith" => {
            let (a, u, s, v) = (parse_matrix(&w["a"])?, parse_matrix(&w["u"])?, parse_matrix(&w["s"])?, parse_matrix(&w["v"])?);
            if u.rows() != a.rows() || v.cols() != a.cols() || s.rows() != a.rows() || s.cols() != a.cols() {
                return Err("shapes disagree".into());
            }
            let unimodular = |m: &IntMatrix| m.rows() == 0 || m.determinant().abs() == BigInt::from(1);
            let diagonal = (0..s.rows()).all(|i| (0..s.cols()).all(|j| i == j || s[(i, j)].is_zero()));
            let d: Vec<BigInt> = (0..s.rows().min(s.cols())).map(|i| s[(i, i)].clone()).collect();
            let chain = d.windows(2).all(|p| if p[0].is_zero() { p[1].is_zero() } else { (&p[1] % &p[0]).is_zero() });
            Ok(u.mul(&a).mul(&v) == s && unimodular(&u) && unimodular(&v) && diagonal && chain && d.iter().all(|x| !x.is_negative()))
        }
        "isomorphism" => {
            let (f, g) = (parse_morphism(&w["map"])?, parse_morphism(&w["inverse"])?);
            let (gf, fg) = (f.compose(&g).map_err(|e| e.to_string())?, g.compose(&f).map_err(|e| e.to_string())?);
            Ok(gf.equals(&ModMorphism::identity(f.codomain())) && fg.equals(&ModMorphism::identity(f.domain())))
        }
        k => Err(format!("unknown witness kind {k:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn display_forms() {
        assert_eq!(display_module(&FgModule::zero()), "0");
        let m = FgModule::direct_sum(&[FgModule::cyclic(4), FgModule::free(2), FgModule::cyclic(2)]);
        assert_eq!(display_module(&m), "Z/2 ⊕ Z/4 ⊕ Z^2");
    }

    #[test]
    fn scalar_witness_round_trip() {
        let z8 = FgModule::cyclic(8);
        let two = ModMorphism::multiplication(&z8, &b(2));
        let six = ModMorphism::multiplication(&z8, &b(6));
        let w = scalar_witness("6 = 3·2", &b(3), &six, &two);
        assert_eq!(replay_witness(&w), Ok(true));
        let bad = scalar_witness("6 = 2·2", &b(2), &six, &two);
        assert_eq!(replay_witness(&bad), Ok(false));
    }

    #[test]
    fn noncanonical_presentations_replay() {
        // Z/6 presented on two generators
        let m = FgModule::present(2, IntMatrix::from_i64(2, 2, &[2, 0, 0, 3])).unwrap();
        let f = ModMorphism::multiplication(&m, &b(5));
        let w = scalar_witness("5·id", &b(5), &f, &ModMorphism::identity(&m));
        assert_eq!(replay_witness(&w), Ok(true));
        assert_eq!(w["lhs"]["domain"]["invariants"], json!([6]));
    }
}
