use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FoError;
use crate::syntax::Signature;
use crate::truth::TruthValue;

/// An element of a model's domain, by position.
pub type Element = usize;

/// A three-valued relation stored as a dense table over `domain^arity`,
/// first argument most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    arity: usize,
    table: Vec<TruthValue>,
}

impl Relation {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.table
    }
}

/// A finite model: a nonempty domain with interpretations of constants and
/// relation symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModelFile", into = "ModelFile")]
pub struct Model {
    domain: Vec<String>,
    constants: BTreeMap<String, Element>,
    relations: BTreeMap<String, Relation>,
}

impl Model {
    pub fn new<S: Into<String>>(domain: impl IntoIterator<Item = S>) -> Result<Model, FoError> {
        let domain: Vec<String> = domain.into_iter().map(Into::into).collect();
        if domain.is_empty() {
            return Err(FoError::EmptyDomain);
        }
        let mut seen = BTreeSet::new();
        for e in &domain {
            if !seen.insert(e) {
                return Err(FoError::DuplicateElement(e.clone()));
            }
        }
        Ok(Model {
            domain,
            constants: BTreeMap::new(),
            relations: BTreeMap::new(),
        })
    }

    /// Domain `e1..ek`.
    pub fn with_size(k: usize) -> Result<Model, FoError> {
        Model::new((1..=k).map(|i| format!("e{i}")))
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn element(&self, name: &str) -> Result<Element, FoError> {
        self.domain
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| FoError::UnknownElement(name.into()))
    }

    pub fn element_name(&self, e: Element) -> &str {
        &self.domain[e]
    }

    pub fn set_constant(&mut self, name: &str, element: &str) -> Result<(), FoError> {
        let e = self.element(element)?;
        if self.relations.contains_key(name) {
            return Err(FoError::Signature(format!(
                "`{name}` is already a relation"
            )));
        }
        self.constants.insert(name.into(), e);
        Ok(())
    }

    /// Declares a relation with every tuple set to `default`.
    pub fn add_relation(
        &mut self,
        name: &str,
        arity: usize,
        default: TruthValue,
    ) -> Result<(), FoError> {
        if self.constants.contains_key(name) {
            return Err(FoError::Signature(format!(
                "`{name}` is already a constant"
            )));
        }
        let cells = self.size().pow(arity as u32);
        self.relations.insert(
            name.into(),
            Relation {
                arity,
                table: vec![default; cells],
            },
        );
        Ok(())
    }

    pub fn set(&mut self, relation: &str, args: &[&str], value: TruthValue) -> Result<(), FoError> {
        let elements = args
            .iter()
            .map(|a| self.element(a))
            .collect::<Result<Vec<_>, _>>()?;
        let index = self.cell_index(relation, &elements)?;
        self.relations.get_mut(relation).expect("checked").table[index] = value;
        Ok(())
    }

    pub fn constant(&self, name: &str) -> Option<Element> {
        self.constants.get(name).copied()
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    fn cell_index(&self, relation: &str, args: &[Element]) -> Result<usize, FoError> {
        let rel = self
            .relations
            .get(relation)
            .ok_or_else(|| FoError::UnknownRelation(relation.into()))?;
        if rel.arity != args.len() {
            return Err(FoError::ArityMismatch {
                relation: relation.into(),
                expected: rel.arity,
                found: args.len(),
            });
        }
        Ok(args.iter().fold(0, |acc, &e| acc * self.size() + e))
    }

    /// `I(R, args)`.
    pub fn lookup(&self, relation: &str, args: &[Element]) -> Result<TruthValue, FoError> {
        let index = self.cell_index(relation, args)?;
        Ok(self.relations[relation].table[index])
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for c in self.constants.keys() {
            sig.add_constant(c).expect("names are disjoint");
        }
        for (r, rel) in &self.relations {
            sig.add_relation(r, rel.arity).expect("names are disjoint");
        }
        sig
    }

    /// True when no relation takes the value `P` anywhere.
    pub fn is_consistent(&self) -> bool {
        self.relations
            .values()
            .all(|r| r.table.iter().all(|v| v.is_classical()))
    }

    /// All `arity`-tuples of elements, in table order.
    pub fn tuples(&self, arity: usize) -> impl Iterator<Item = Vec<Element>> + '_ {
        let k = self.size();
        (0..k.pow(arity as u32)).map(move |mut index| {
            let mut args = vec![0; arity];
            for slot in args.iter_mut().rev() {
                *slot = index % k;
                index /= k;
            }
            args
        })
    }

    pub fn from_json(text: &str) -> Result<Model, FoError> {
        serde_json::from_str(text).map_err(|e| FoError::ModelFile(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub(crate) fn relations_mut(&mut self) -> impl Iterator<Item = &mut Relation> {
        self.relations.values_mut()
    }

    pub(crate) fn set_constant_element(&mut self, name: &str, e: Element) {
        self.constants.insert(name.into(), e);
    }
}

impl Relation {
    pub(crate) fn cells_mut(&mut self) -> &mut [TruthValue] {
        &mut self.table
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// On-disk model format.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    domain: Vec<String>,
    #[serde(default)]
    constants: BTreeMap<String, String>,
    #[serde(default)]
    relations: BTreeMap<String, RelationFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationFile {
    arity: usize,
    #[serde(default = "default_value")]
    default: TruthValue,
    #[serde(default)]
    entries: Vec<EntryFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    args: Vec<String>,
    value: TruthValue,
}

fn default_value() -> TruthValue {
    TruthValue::Bot
}

impl TryFrom<ModelFile> for Model {
    type Error = FoError;

    fn try_from(file: ModelFile) -> Result<Model, FoError> {
        let mut m = Model::new(file.domain)?;
        for (c, e) in &file.constants {
            m.set_constant(c, e)?;
        }
        for (r, rel) in &file.relations {
            m.add_relation(r, rel.arity, rel.default)?;
            let mut seen = BTreeSet::new();
            for entry in &rel.entries {
                if !seen.insert(&entry.args) {
                    return Err(FoError::ModelFile(format!(
                        "duplicate entry {}({})",
                        r,
                        entry.args.join(", ")
                    )));
                }
                let args: Vec<&str> = entry.args.iter().map(String::as_str).collect();
                m.set(r, &args, entry.value)?;
            }
        }
        Ok(m)
    }
}

impl From<Model> for ModelFile {
    fn from(m: Model) -> ModelFile {
        let constants = m
            .constants
            .iter()
            .map(|(c, &e)| (c.clone(), m.domain[e].clone()))
            .collect();
        let relations = m
            .relations
            .iter()
            .map(|(r, rel)| {
                let entries = m
                    .tuples(rel.arity)
                    .zip(&rel.table)
                    .filter(|(_, &v)| v != TruthValue::Bot)
                    .map(|(args, &value)| EntryFile {
                        args: args.iter().map(|&e| m.domain[e].clone()).collect(),
                        value,
                    })
                    .collect();
                let file = RelationFile {
                    arity: rel.arity,
                    default: TruthValue::Bot,
                    entries,
                };
                (r.clone(), file)
            })
            .collect();
        ModelFile {
            domain: m.domain,
            constants,
            relations,
        }
    }
}
