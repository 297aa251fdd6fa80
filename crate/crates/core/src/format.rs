//! JSON input documents. Every document carries a top-level `"kind"` of
//! `ring`, `group-generators`, `cayley` or `type`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::CategoryType;
use crate::group::{cayley_from_generators, CayleyTable, Permutation, DEFAULT_CLOSURE_CAP};
use crate::ring::BasedRing;
use crate::{Error, Result};

/// Metadata shared by every document kind.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default)]
    pub name: Option<String>,
    /// The ring is known to admit a modular structure.
    #[serde(default)]
    pub modular: bool,
    /// Checks on this input are expected to fail.
    #[serde(default, alias = "expect_fail")]
    pub negative_control: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingDoc {
    #[allow(dead_code)]
    kind: String,
    rank: usize,
    #[serde(default)]
    labels: Vec<String>,
    #[serde(default)]
    unit: usize,
    dual: Vec<usize>,
    #[serde(default, rename = "N")]
    dense: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, rename = "N_sparse")]
    sparse: Option<Vec<[u32; 4]>>,
    #[serde(flatten)]
    meta: Meta,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PermText {
    Cycles(String),
    Images(Vec<usize>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorsDoc {
    #[allow(dead_code)]
    kind: String,
    generators: Vec<PermText>,
    #[serde(default)]
    degree: Option<usize>,
    #[serde(flatten)]
    meta: Meta,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CayleyDoc {
    #[allow(dead_code)]
    kind: String,
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(flatten)]
    meta: Meta,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TypeDoc {
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    entries: Option<Vec<(u64, u64)>>,
    #[serde(default)]
    entries_sq: Option<Vec<(u64, u64)>>,
    #[serde(default)]
    integral: Option<bool>,
    #[serde(flatten)]
    meta: Meta,
}

/// A parsed input document.
#[derive(Debug, Clone)]
pub enum Input {
    Ring {
        ring: BasedRing,
        meta: Meta,
    },
    Group {
        table: CayleyTable,
        meta: Meta,
    },
    Type {
        ty: CategoryType,
        integral: bool,
        meta: Meta,
    },
}

impl Input {
    pub fn meta(&self) -> &Meta {
        match self {
            Input::Ring { meta, .. } | Input::Group { meta, .. } | Input::Type { meta, .. } => meta,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Input::Ring { .. } => "ring",
            Input::Group { .. } => "group",
            Input::Type { .. } => "type",
        }
    }
}

/// Parses a document of any kind.
pub fn parse_input(text: &str) -> Result<Input> {
    let value: Value = serde_json::from_str(text)?;
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing string field \"kind\"".into()))?
        .to_string();
    match kind.as_str() {
        "ring" => {
            let (ring, meta) = ring_from_value(value)?;
            Ok(Input::Ring { ring, meta })
        }
        "group-generators" => {
            let doc: GeneratorsDoc = serde_json::from_value(value)?;
            let table = group_from_generators(&doc)?;
            Ok(Input::Group { table, meta: doc.meta })
        }
        "cayley" => {
            let doc: CayleyDoc = serde_json::from_value(value)?;
            if doc.table.len() != doc.order {
                return Err(Error::Parse(format!(
                    "cayley table has {} rows for order {}",
                    doc.table.len(),
                    doc.order
                )));
            }
            let table = CayleyTable::from_rows(&doc.table).map_err(as_parse)?;
            Ok(Input::Group { table, meta: doc.meta })
        }
        "type" => {
            let doc: TypeDoc = serde_json::from_value(value)?;
            let ty = match (&doc.entries, &doc.entries_sq) {
                (Some(e), None) => CategoryType::from_dims(e),
                (None, Some(e)) => CategoryType::from_squares(e),
                _ => return Err(Error::Parse("a type needs exactly one of entries, entries_sq".into())),
            }
            .map_err(as_parse)?;
            let integral = doc.integral.unwrap_or(ty.is_integral());
            Ok(Input::Type {
                ty,
                integral,
                meta: doc.meta,
            })
        }
        other => Err(Error::Parse(format!("unknown kind {other:?}"))),
    }
}

/// Parses a ring document.
pub fn parse_ring(text: &str) -> Result<(BasedRing, Meta)> {
    let value: Value = serde_json::from_str(text)?;
    match value.get("kind").and_then(Value::as_str) {
        Some("ring") => ring_from_value(value),
        Some(other) => Err(Error::Parse(format!("expected a ring document, found kind {other:?}"))),
        None => Err(Error::Parse("missing string field \"kind\"".into())),
    }
}

fn as_parse(e: Error) -> Error {
    match e {
        Error::Structure(m) | Error::Domain(m) | Error::Size(m) => Error::Parse(m),
        other => other,
    }
}

fn ring_from_value(value: Value) -> Result<(BasedRing, Meta)> {
    let doc: RingDoc = serde_json::from_value(value)?;
    if doc.dual.len() != doc.rank {
        return Err(Error::Parse(format!(
            "dual has {} entries for rank {}",
            doc.dual.len(),
            doc.rank
        )));
    }
    let ring = match (doc.dense, doc.sparse) {
        (Some(d), None) => BasedRing::from_dense(doc.labels, &d, doc.unit, doc.dual),
        (None, Some(s)) => BasedRing::from_sparse(doc.labels, &s, doc.unit, doc.dual),
        _ => return Err(Error::Parse("a ring needs exactly one of N, N_sparse".into())),
    }
    .map_err(as_parse)?;
    Ok((ring, doc.meta))
}

fn group_from_generators(doc: &GeneratorsDoc) -> Result<CayleyTable> {
    let inferred = doc
        .generators
        .iter()
        .map(|g| match g {
            PermText::Cycles(s) => Permutation::cycle_degree(s),
            PermText::Images(v) => v.len(),
        })
        .max()
        .unwrap_or(1);
    let degree = doc.degree.unwrap_or(inferred).max(1);
    let mut perms = Vec::with_capacity(doc.generators.len());
    for g in &doc.generators {
        let p = match g {
            PermText::Cycles(s) => Permutation::parse_cycles(s, degree),
            PermText::Images(v) => {
                let mut images = v.clone();
                if images.len() > degree {
                    return Err(Error::Parse(format!(
                        "generator of degree {} exceeds {degree}",
                        images.len()
                    )));
                }
                images.extend(v.len()..degree);
                Permutation::from_images(images)
            }
        }
        .map_err(as_parse)?;
        perms.push(p);
    }
    cayley_from_generators(&perms, DEFAULT_CLOSURE_CAP)
}

/// Serializes a ring as a dense ring document.
pub fn ring_to_json(ring: &BasedRing, meta: &Meta) -> Value {
    let r = ring.rank();
    let dense: Vec<Vec<Vec<u32>>> = (0..r)
        .map(|i| (0..r).map(|j| (0..r).map(|k| ring.n(i, j, k)).collect()).collect())
        .collect();
    let mut doc = serde_json::json!({
        "kind": "ring",
        "rank": r,
        "labels": ring.labels(),
        "unit": ring.unit(),
        "dual": ring.duals(),
        "N": dense,
    });
    if let Some(name) = &meta.name {
        doc["name"] = Value::from(name.clone());
    }
    if meta.modular {
        doc["modular"] = Value::from(true);
    }
    if meta.negative_control {
        doc["negative_control"] = Value::from(true);
    }
    doc
}
