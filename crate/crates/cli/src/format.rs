//! The JSON description format.
//!
//! A workspace fragment is one JSON object with optional sections
//! `categories`, `functors`, `presheaves`, `profunctors`, `classes` and
//! `commutations`, each mapping names to definitions.
//!
//! Presheaves are contravariant by default: with `"variance": "contra"`
//! the action of `f: a -> b` maps `sets[b]` to `sets[a]`. With
//! `"variance": "co"` the entity is a functor into sets and `f` maps
//! `sets[a]` to `sets[b]`. Identity actions and identity composites may be
//! omitted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub categories: BTreeMap<String, CategoryDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functors: BTreeMap<String, FunctorDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub presheaves: BTreeMap<String, PresheafDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub profunctors: BTreeMap<String, ProfunctorDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub classes: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub commutations: BTreeMap<String, CommutationDoc>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    pub identities: BTreeMap<String, String>,
    /// Entries `[g, f, h]` meaning `g . f = h`.
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub source: String,
    pub target: String,
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    #[default]
    Contra,
    Co,
}

/// Elements are written as strings or numbers; numbers are read by their
/// decimal spelling.
pub type Elem = Value;

pub fn elem_name(v: &Elem) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PresheafDoc {
    pub on: String,
    #[serde(default)]
    pub variance: Variance,
    pub sets: BTreeMap<String, Vec<Elem>>,
    #[serde(default)]
    pub actions: BTreeMap<String, BTreeMap<String, Elem>>,
}

/// A module `source ⇸ target`: `sets[b][a]` is `p(b, a)`; `left[v][a]`
/// for `v: b -> b'` maps `p(b', a) -> p(b, a)`; `right[u][b]` for
/// `u: a -> a'` maps `p(b, a) -> p(b, a')`.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProfunctorDoc {
    pub source: String,
    pub target: String,
    pub sets: BTreeMap<String, BTreeMap<String, Vec<Elem>>>,
    #[serde(default)]
    pub left: BTreeMap<String, BTreeMap<String, BTreeMap<String, Elem>>>,
    #[serde(default)]
    pub right: BTreeMap<String, BTreeMap<String, BTreeMap<String, Elem>>>,
}

/// Data for a limit/colimit commutation check: a colimit weight on `L`, a
/// limit weight on `K`, and a module `L ⇸ K`, read as `K^op x L -> Set`.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CommutationDoc {
    pub colimit_weight: String,
    pub limit_weight: String,
    pub bifunctor: String,
}

/// Parses one fragment, reporting the position of syntax and shape errors.
pub fn parse_document(text: &str) -> fincat::Result<Document> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let message = match full.rsplit_once(" at line ") {
            Some((head, _)) => head.to_string(),
            None => full,
        };
        fincat::Error::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    })
}
