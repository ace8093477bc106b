//! The input document: a versioned JSON object graph of named modules,
//! morphisms, complexes, sequences, resolutions, ideals, submodules,
//! elements and a task.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

pub const VERSION: u32 = 1;

/// Task arguments whose string values are keywords rather than references.
pub const LITERAL_ARGS: &[&str] = &["mode"];

/// An integer of any size; written as a JSON number, or as a string when
/// it has more than 15 digits.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Int(pub BigInt);

impl From<i64> for Int {
    fn from(x: i64) -> Self {
        Int(BigInt::from(x))
    }
}

impl From<BigInt> for Int {
    fn from(x: BigInt) -> Self {
        Int(x)
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let text = self.0.to_string();
        if text.trim_start_matches('-').len() > 15 {
            s.serialize_str(&text)
        } else {
            let n = serde_json::Number::from_str(&text).map_err(serde::ser::Error::custom)?;
            n.serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(serde_json::Number),
            Str(String),
        }
        let text = match Raw::deserialize(d)? {
            Raw::Num(n) => n.to_string(),
            Raw::Str(s) => s,
        };
        BigInt::from_str(text.trim()).map(Int).map_err(|_| de::Error::custom(format!("expected an integer, found {text:?}")))
    }
}

pub type IntRows = Vec<Vec<Int>>;

/// `Z^generators` modulo the span of the relators, each a vector of length
/// `generators`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub generators: usize,
    #[serde(default)]
    pub relations: IntRows,
}

/// `matrix` has one row per codomain generator and one column per domain
/// generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub domain: String,
    pub codomain: String,
    pub matrix: IntRows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    #[serde(default)]
    pub lo: i64,
    pub objects: Vec<String>,
    #[serde(default)]
    pub maps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceSpec {
    pub f: String,
    pub g: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionSpec {
    pub target: String,
    pub augmentation: String,
    pub complex: String,
}

/// Generators are element vectors in the ambient's generator coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmoduleSpec {
    pub ambient: String,
    #[serde(default)]
    pub generators: IntRows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSpec {
    pub module: String,
    pub coords: Vec<Int>,
}

/// A task argument: a reference to a named object, an integer, or a list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Arg {
    Int(serde_json::Number),
    Ref(String),
    List(Vec<Arg>),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_cap: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<[i64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Task {
    pub op: String,
    #[serde(default)]
    pub args: BTreeMap<String, Arg>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub options: TaskOptions,
}

fn is_default(o: &TaskOptions) -> bool {
    o == &TaskOptions::default()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub version: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, ComplexSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sequences: BTreeMap<String, SequenceSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub resolutions: BTreeMap<String, ResolutionSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ideals: BTreeMap<String, Int>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub submodules: BTreeMap<String, SubmoduleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub elements: BTreeMap<String, ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<Task>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DocError {
    Parse { line: usize, column: usize, message: String },
    Validation { path: String, line: usize, column: usize, message: String },
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Parse { line, column, message } => write!(f, "parse error at {line}:{column}: {message}"),
            DocError::Validation { path, line, column, message } => {
                write!(f, "validation error at {line}:{column} ({path}): {message}")
            }
        }
    }
}

impl std::error::Error for DocError {}

impl Document {
    pub fn new() -> Self {
        Document {
            version: VERSION,
            modules: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            complexes: BTreeMap::new(),
            sequences: BTreeMap::new(),
            resolutions: BTreeMap::new(),
            ideals: BTreeMap::new(),
            submodules: BTreeMap::new(),
            elements: BTreeMap::new(),
            task: None,
        }
    }

    /// Whether some object of any kind is called `name`.
    pub fn defines(&self, name: &str) -> bool {
        self.modules.contains_key(name)
            || self.morphisms.contains_key(name)
            || self.complexes.contains_key(name)
            || self.sequences.contains_key(name)
            || self.resolutions.contains_key(name)
            || self.ideals.contains_key(name)
            || self.submodules.contains_key(name)
            || self.elements.contains_key(name)
    }
}

impl Default for Document {
    fn default() -> Self {
        Self::new()
    }
}

pub fn serialize_document(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

/// Parses and validates a document, reporting positions on failure.
pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| DocError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    validate(&doc, text)?;
    Ok(doc)
}

struct Checker<'a> {
    text: &'a str,
}

impl Checker<'_> {
    /// Position of `"key"` inside the `"section"` object, or of the section.
    fn locate(&self, section: &str, key: &str) -> (usize, usize) {
        let start = self.text.find(&format!("\"{section}\"")).unwrap_or(0);
        let offset = self.text[start..].find(&format!("\"{key}\"")).map(|k| start + k).unwrap_or(start);
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map(|n| offset - n).unwrap_or(offset + 1);
        (line, column)
    }

    fn fail(&self, section: &str, key: &str, message: String) -> DocError {
        let (line, column) = self.locate(section, key);
        DocError::Validation { path: format!("{section}.{key}"), line, column, message }
    }
}

fn validate(doc: &Document, text: &str) -> Result<(), DocError> {
    let c = Checker { text };
    if doc.version != VERSION {
        return Err(c.fail("version", "version", format!("unsupported version {} (expected {VERSION})", doc.version)));
    }
    let gens = |section: &str, key: &str, name: &str| -> Result<usize, DocError> {
        doc.modules
            .get(name)
            .map(|m| m.generators)
            .ok_or_else(|| c.fail(section, key, format!("unknown module {name:?}")))
    };
    for (name, m) in &doc.modules {
        if let Some(r) = m.relations.iter().position(|r| r.len() != m.generators) {
            return Err(c.fail("modules", name, format!("relator {r} has {} entries, expected {}", m.relations[r].len(), m.generators)));
        }
    }
    for (name, f) in &doc.morphisms {
        let dg = gens("morphisms", name, &f.domain)?;
        let cg = gens("morphisms", name, &f.codomain)?;
        if f.matrix.len() != cg || f.matrix.iter().any(|row| row.len() != dg) {
            return Err(c.fail("morphisms", name, format!("matrix must be {cg}×{dg} (codomain generators × domain generators)")));
        }
    }
    let morphism = |section: &str, key: &str, name: &str| -> Result<&MorphismSpec, DocError> {
        doc.morphisms.get(name).ok_or_else(|| c.fail(section, key, format!("unknown morphism {name:?}")))
    };
    for (name, x) in &doc.complexes {
        if x.objects.is_empty() {
            return Err(c.fail("complexes", name, "a complex needs at least one object".into()));
        }
        for o in &x.objects {
            gens("complexes", name, o)?;
        }
        if x.maps.len() + 1 != x.objects.len() {
            return Err(c.fail("complexes", name, format!("{} objects need {} maps", x.objects.len(), x.objects.len() - 1)));
        }
        for (k, m) in x.maps.iter().enumerate() {
            let f = morphism("complexes", name, m)?;
            if f.domain != x.objects[k] || f.codomain != x.objects[k + 1] {
                return Err(c.fail("complexes", name, format!("map {m:?} must go from {:?} to {:?}", x.objects[k], x.objects[k + 1])));
            }
        }
    }
    for (name, s) in &doc.sequences {
        let (f, g) = (morphism("sequences", name, &s.f)?, morphism("sequences", name, &s.g)?);
        if f.codomain != g.domain {
            return Err(c.fail("sequences", name, format!("codomain of {:?} is not the domain of {:?}", s.f, s.g)));
        }
    }
    for (name, r) in &doc.resolutions {
        gens("resolutions", name, &r.target)?;
        let aug = morphism("resolutions", name, &r.augmentation)?;
        let x = doc
            .complexes
            .get(&r.complex)
            .ok_or_else(|| c.fail("resolutions", name, format!("unknown complex {:?}", r.complex)))?;
        if aug.domain != r.target || aug.codomain != x.objects[0] {
            return Err(c.fail("resolutions", name, "augmentation must map the target to the first object".into()));
        }
        if x.lo != 0 {
            return Err(c.fail("resolutions", name, "the complex of a resolution starts in degree 0".into()));
        }
    }
    for (name, s) in &doc.submodules {
        let g = gens("submodules", name, &s.ambient)?;
        if s.generators.iter().any(|v| v.len() != g) {
            return Err(c.fail("submodules", name, format!("generators must have {g} coordinates")));
        }
    }
    for (name, e) in &doc.elements {
        let g = gens("elements", name, &e.module)?;
        if e.coords.len() != g {
            return Err(c.fail("elements", name, format!("element needs {g} coordinates")));
        }
    }
    if let Some(task) = &doc.task {
        for (key, arg) in task.args.iter().filter(|(k, _)| !LITERAL_ARGS.contains(&k.as_str())) {
            check_refs(doc, &c, key, arg)?;
        }
    }
    Ok(())
}

fn check_refs(doc: &Document, c: &Checker, key: &str, arg: &Arg) -> Result<(), DocError> {
    match arg {
        Arg::Ref(name) if !doc.defines(name) => Err(c.fail("task", key, format!("argument {key:?} refers to undefined object {name:?}"))),
        Arg::List(items) => items.iter().try_for_each(|a| check_refs(doc, c, key, a)),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED: &str = include_str!("../corpus/worked_example.json");

    #[test]
    fn worked_document_parses_and_round_trips() {
        let doc = parse_document(WORKED).unwrap();
        assert_eq!(doc.modules.len(), 3);
        let again = parse_document(&serialize_document(&doc)).unwrap();
        assert_eq!(doc, again);
    }

    #[test]
    fn wrong_matrix_shape() {
        let text = r#"{"version": 1,
  "modules": {"A": {"generators": 1, "relations": [[2]]}, "B": {"generators": 2}},
  "morphisms": {"f": {"domain": "A", "codomain": "B", "matrix": [[1]]}}}"#;
        match parse_document(text).unwrap_err() {
            DocError::Validation { path, line, .. } => {
                assert_eq!(path, "morphisms.f");
                assert_eq!(line, 3);
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn dangling_task_reference() {
        let text = r#"{"version": 1, "task": {"op": "canon", "args": {"module": "M"}}}"#;
        assert!(matches!(parse_document(text), Err(DocError::Validation { .. })));
    }

    #[test]
    fn syntax_error_position() {
        let text = "{\n  \"version\": 1,\n  \"modules\": {,}\n}";
        match parse_document(text).unwrap_err() {
            DocError::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn large_integers_survive() {
        let text = r#"{"version": 1, "modules": {"M": {"generators": 1, "relations": [["123456789012345678901234567890"]]}}}"#;
        let doc = parse_document(text).unwrap();
        let out = serialize_document(&doc);
        assert!(out.contains("\"123456789012345678901234567890\""));
        assert_eq!(parse_document(&out).unwrap(), doc);
        let text = r#"{"version": 1, "modules": {"M": {"generators": 1, "relations": [[123456789012345678901234567890]]}}}"#;
        assert_eq!(parse_document(text).unwrap(), doc);
    }
}
