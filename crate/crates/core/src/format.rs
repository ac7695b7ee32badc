//! JSON structure files.
//!
//! Four kinds share one envelope, `{"kind": ..., "version": 1, ...}`:
//!
//! * `semigroupoid`: `objects`, `arrows` (`name`, `dom`, `cod`) and `mul`
//!   as `[s, t, st]` triples;
//! * `poset`: `elements` and `leq` as `[x, y]` pairs meaning `x <= y`; with
//!   `close` (default `true`) the transitive closure is taken, otherwise the
//!   list must already be transitive;
//! * `action`: an inline `actor` semigroupoid, `carrier`, optional `order`,
//!   `domains` and `maps` keyed by arrow name, and `global`;
//! * `triple`: a global ordered `action` of a groupoid and an `ideal`.
//!
//! Any reference to an object, arrow or point may be an index or a name.
//! Output is canonical: indices everywhere, keys sorted, products listed
//! for every composable pair in index order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{ActionError, PartialAction, Point};
use crate::inverse::{InverseError, InverseSemigroupoid};
use crate::poset::{FinitePoset, PosetError};
use crate::ptheorem::{McAlisterTriple, PTheoremError};
use crate::semigroupoid::{ArrowSpec, FiniteSemigroupoid, RawSemigroupoid, SemigroupoidError};

pub const VERSION: u32 = 1;

fn default_version() -> u32 {
    VERSION
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u32),
    #[error("expected a {expected} file, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error("unknown {what} {name:?}")]
    UnknownName { what: &'static str, name: String },
    #[error("{what} index {index} is out of range")]
    IndexOutOfRange { what: &'static str, index: usize },
    #[error("duplicate {what} name {name:?}")]
    DuplicateName { what: &'static str, name: String },
    #[error(transparent)]
    Semigroupoid(#[from] SemigroupoidError),
    #[error(transparent)]
    Inverse(#[from] InverseError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Triple(#[from] PTheoremError),
}

impl FormatError {
    /// True for syntax and reference errors, false for structures that parse
    /// but violate their axioms.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            FormatError::Json(_)
                | FormatError::UnsupportedVersion(_)
                | FormatError::WrongKind { .. }
                | FormatError::UnknownName { .. }
                | FormatError::IndexOutOfRange { .. }
                | FormatError::DuplicateName { .. }
        )
    }
}

/// An index or a name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub dom: Ref,
    pub cod: Ref,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupoidDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    pub mul: Vec<(Ref, Ref, Ref)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub elements: Vec<String>,
    pub leq: Vec<(Ref, Ref)>,
    #[serde(default = "default_close")]
    pub close: bool,
}

fn default_close() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub actor: SemigroupoidDoc,
    pub carrier: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<(Ref, Ref)>>,
    pub domains: BTreeMap<String, Vec<Ref>>,
    pub maps: BTreeMap<String, Vec<(Ref, Ref)>>,
    #[serde(default)]
    pub global: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub action: ActionDoc,
    pub ideal: Vec<Ref>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StructureFile {
    Semigroupoid(SemigroupoidDoc),
    Poset(PosetDoc),
    Action(ActionDoc),
    Triple(TripleDoc),
}

/// A poset with element names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPoset {
    pub names: Vec<String>,
    pub poset: FinitePoset,
}

/// A validated structure read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Semigroupoid(FiniteSemigroupoid),
    Poset(NamedPoset),
    Action(PartialAction),
    Triple(McAlisterTriple),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Semigroupoid(_) => "semigroupoid",
            Structure::Poset(_) => "poset",
            Structure::Action(_) => "action",
            Structure::Triple(_) => "triple",
        }
    }
}

struct Names<'a> {
    what: &'static str,
    index: HashMap<&'a str, usize>,
    len: usize,
}

impl<'a> Names<'a> {
    fn new(what: &'static str, names: &'a [String]) -> Result<Self, FormatError> {
        let mut index = HashMap::new();
        for (k, name) in names.iter().enumerate() {
            if index.insert(name.as_str(), k).is_some() {
                return Err(FormatError::DuplicateName { what, name: name.clone() });
            }
        }
        Ok(Names { what, index, len: names.len() })
    }

    fn resolve(&self, r: &Ref) -> Result<usize, FormatError> {
        match r {
            Ref::Index(i) if *i < self.len => Ok(*i),
            Ref::Index(i) => Err(FormatError::IndexOutOfRange { what: self.what, index: *i }),
            Ref::Name(name) => self.lookup(name),
        }
    }

    /// Map keys: a name, or failing that a decimal index.
    fn lookup(&self, name: &str) -> Result<usize, FormatError> {
        if let Some(&k) = self.index.get(name) {
            return Ok(k);
        }
        match name.parse::<usize>() {
            Ok(i) if i < self.len => Ok(i),
            _ => Err(FormatError::UnknownName { what: self.what, name: name.to_string() }),
        }
    }
}

fn check_version(v: u32) -> Result<(), FormatError> {
    if v == VERSION {
        Ok(())
    } else {
        Err(FormatError::UnsupportedVersion(v))
    }
}

fn decode_semigroupoid(doc: &SemigroupoidDoc) -> Result<FiniteSemigroupoid, FormatError> {
    check_version(doc.version)?;
    let objects = Names::new("object", &doc.objects)?;
    let arrow_names: Vec<String> = doc.arrows.iter().map(|a| a.name.clone()).collect();
    let arrows = Names::new("arrow", &arrow_names)?;
    let specs = doc
        .arrows
        .iter()
        .map(|a| Ok(ArrowSpec::new(a.name.clone(), objects.resolve(&a.dom)?, objects.resolve(&a.cod)?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    let products = doc
        .mul
        .iter()
        .map(|(s, t, st)| Ok((arrows.resolve(s)?, arrows.resolve(t)?, arrows.resolve(st)?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(FiniteSemigroupoid::validate(RawSemigroupoid { objects: doc.objects.clone(), arrows: specs, products })?)
}

fn decode_order(names: &Names<'_>, pairs: &[(Ref, Ref)], close: bool) -> Result<FinitePoset, FormatError> {
    let pairs = pairs
        .iter()
        .map(|(x, y)| Ok((names.resolve(x)?, names.resolve(y)?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(FinitePoset::validate(names.len, &pairs, close)?)
}

fn decode_poset(doc: &PosetDoc) -> Result<NamedPoset, FormatError> {
    check_version(doc.version)?;
    let names = Names::new("element", &doc.elements)?;
    let poset = decode_order(&names, &doc.leq, doc.close)?;
    Ok(NamedPoset { names: doc.elements.clone(), poset })
}

/// Decodes an action document into an unvalidated family.
fn decode_action_family(doc: &ActionDoc) -> Result<PartialAction, FormatError> {
    check_version(doc.version)?;
    let actor = InverseSemigroupoid::new(decode_semigroupoid(&doc.actor)?)?;
    let arrows = Names::new("arrow", actor.base().arrow_names())?;
    let points = Names::new("point", &doc.carrier)?;
    let order = doc.order.as_ref().map(|pairs| decode_order(&points, pairs, true)).transpose()?;
    let mut domains = vec![BTreeSet::new(); actor.len()];
    for (key, xs) in &doc.domains {
        let s = arrows.lookup(key)?;
        for x in xs {
            domains[s].insert(points.resolve(x)?);
        }
    }
    let mut maps = vec![BTreeMap::new(); actor.len()];
    for (key, pairs) in &doc.maps {
        let s = arrows.lookup(key)?;
        for (x, y) in pairs {
            let (x, y) = (points.resolve(x)?, points.resolve(y)?);
            if maps[s].insert(x, y).is_some_and(|old| old != y) {
                return Err(ActionError::NotBijective(s).into());
            }
        }
    }
    Ok(PartialAction { actor, labels: doc.carrier.clone(), order, domains, maps, global: doc.global })
}

fn decode_action(doc: &ActionDoc) -> Result<PartialAction, FormatError> {
    let action = decode_action_family(doc)?;
    action.validate_e()?;
    Ok(action)
}

fn decode_triple(doc: &TripleDoc) -> Result<McAlisterTriple, FormatError> {
    check_version(doc.version)?;
    let action = decode_action_family(&doc.action)?;
    let points = Names::new("point", &action.labels)?;
    let ideal = doc.ideal.iter().map(|x| points.resolve(x)).collect::<Result<BTreeSet<Point>, _>>()?;
    let triple = McAlisterTriple { action, ideal };
    triple.validate()?;
    Ok(triple)
}

/// Parses and fully validates a structure file.
pub fn parse(text: &str) -> Result<Structure, FormatError> {
    parse_document(text).and_then(|doc| decode(&doc))
}

/// Parses the JSON envelope without validating the structure.
pub fn parse_document(text: &str) -> Result<StructureFile, FormatError> {
    Ok(serde_json::from_str(text)?)
}

/// Parses a family `(X_s, θ_s)` from an action file without checking the
/// action axioms, so it can be handed to the validators.
pub fn parse_action_family(text: &str) -> Result<PartialAction, FormatError> {
    match parse_document(text)? {
        StructureFile::Action(doc) => decode_action_family(&doc),
        other => Err(FormatError::WrongKind { expected: "action", found: other.kind() }),
    }
}

impl StructureFile {
    pub fn kind(&self) -> &'static str {
        match self {
            StructureFile::Semigroupoid(_) => "semigroupoid",
            StructureFile::Poset(_) => "poset",
            StructureFile::Action(_) => "action",
            StructureFile::Triple(_) => "triple",
        }
    }
}

pub fn decode(doc: &StructureFile) -> Result<Structure, FormatError> {
    Ok(match doc {
        StructureFile::Semigroupoid(d) => Structure::Semigroupoid(decode_semigroupoid(d)?),
        StructureFile::Poset(d) => Structure::Poset(decode_poset(d)?),
        StructureFile::Action(d) => Structure::Action(decode_action(d)?),
        StructureFile::Triple(d) => Structure::Triple(decode_triple(d)?),
    })
}

pub fn semigroupoid_doc(s: &FiniteSemigroupoid) -> SemigroupoidDoc {
    SemigroupoidDoc {
        version: VERSION,
        objects: s.object_names().to_vec(),
        arrows: s
            .arrows()
            .map(|a| ArrowDoc {
                name: s.arrow_name(a).to_string(),
                dom: Ref::Index(s.dom(a)),
                cod: Ref::Index(s.cod(a)),
            })
            .collect(),
        mul: s
            .composable_pairs()
            .into_iter()
            .map(|(a, b)| (Ref::Index(a), Ref::Index(b), Ref::Index(s.product(a, b))))
            .collect(),
    }
}

fn order_pairs(p: &FinitePoset) -> Vec<(Ref, Ref)> {
    p.strict_pairs().into_iter().map(|(x, y)| (Ref::Index(x), Ref::Index(y))).collect()
}

pub fn action_doc(a: &PartialAction) -> ActionDoc {
    let name = |s: usize| a.actor.base().arrow_name(s).to_string();
    ActionDoc {
        version: VERSION,
        actor: semigroupoid_doc(a.actor.base()),
        carrier: a.labels.clone(),
        order: a.order.as_ref().map(order_pairs),
        domains: a.actor.arrows().map(|s| (name(s), a.domains[s].iter().map(|&x| Ref::Index(x)).collect())).collect(),
        maps: a
            .actor
            .arrows()
            .map(|s| (name(s), a.maps[s].iter().map(|(&x, &y)| (Ref::Index(x), Ref::Index(y))).collect()))
            .collect(),
        global: a.global,
    }
}

pub fn encode(s: &Structure) -> StructureFile {
    match s {
        Structure::Semigroupoid(g) => StructureFile::Semigroupoid(semigroupoid_doc(g)),
        Structure::Poset(p) => StructureFile::Poset(PosetDoc {
            version: VERSION,
            elements: p.names.clone(),
            leq: order_pairs(&p.poset),
            close: true,
        }),
        Structure::Action(a) => StructureFile::Action(action_doc(a)),
        Structure::Triple(t) => StructureFile::Triple(TripleDoc {
            version: VERSION,
            action: action_doc(&t.action),
            ideal: t.ideal.iter().map(|&x| Ref::Index(x)).collect(),
        }),
    }
}

/// Canonical pretty-printed JSON: keys sorted, references as indices.
pub fn to_json(s: &Structure) -> String {
    // Going through `Value` sorts object keys.
    let value = serde_json::to_value(encode(s)).expect("structure files always serialize");
    serde_json::to_string_pretty(&value).expect("values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ptheorem::munn_action;

    #[test]
    fn semigroupoid_round_trip_on_fixtures() {
        for s in fixtures::all_inverse_fixtures() {
            let st = Structure::Semigroupoid(s.base().clone());
            assert_eq!(parse(&to_json(&st)).unwrap(), st);
        }
    }

    #[test]
    fn names_and_indices_both_resolve() {
        let text = r#"{"kind":"semigroupoid","objects":["u"],
            "arrows":[{"name":"e","dom":"u","cod":0},{"name":"f","dom":0,"cod":"u"}],
            "mul":[["e","e","e"],["e","f","f"],[1,0,1],["f","f",1]]}"#;
        let Structure::Semigroupoid(s) = parse(text).unwrap() else { panic!() };
        let chain = fixtures::chain2();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(s.mul(a, b), chain.mul(a, b));
            }
        }
    }

    #[test]
    fn action_round_trip() {
        let m = munn_action(&fixtures::brandt_b2());
        let st = Structure::Action(m);
        let text = to_json(&st);
        assert_eq!(parse(&text).unwrap(), st);
        assert_eq!(to_json(&parse(&text).unwrap()), text);
    }

    #[test]
    fn error_classes() {
        assert!(parse("{").unwrap_err().is_parse_error());
        assert!(parse(r#"{"kind":"nope"}"#).unwrap_err().is_parse_error());
        let unknown = r#"{"kind":"poset","elements":["a"],"leq":[["a","b"]]}"#;
        assert!(matches!(parse(unknown), Err(FormatError::UnknownName { what: "element", .. })));
        let cycle = r#"{"kind":"poset","elements":["a","b"],"leq":[["a","b"],["b","a"]]}"#;
        let err = parse(cycle).unwrap_err();
        assert!(!err.is_parse_error());
        let version = r#"{"kind":"poset","version":2,"elements":[],"leq":[]}"#;
        assert!(matches!(parse(version), Err(FormatError::UnsupportedVersion(2))));
        let open = r#"{"kind":"poset","elements":["a","b","c"],"leq":[["a","b"],["b","c"]],"close":false}"#;
        assert!(matches!(parse(open), Err(FormatError::Poset(_))));
        let dup = r#"{"kind":"poset","elements":["a","a"],"leq":[]}"#;
        assert!(matches!(parse(dup), Err(FormatError::DuplicateName { .. })));
    }

    #[test]
    fn invalid_action_is_a_validation_error() {
        let mut m = munn_action(&fixtures::chain2());
        m.domains[0].clear();
        m.maps[0].clear();
        let text = serde_json::to_string(&StructureFile::Action(action_doc(&m))).unwrap();
        let err = parse(&text).unwrap_err();
        assert!(matches!(err, FormatError::Action(_)));
        assert!(!err.is_parse_error());
        assert_eq!(parse_action_family(&text).unwrap(), m);
    }
}
