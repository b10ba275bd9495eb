//! Propositional evaluation by exhaustive enumeration of valuations.
//!
//! Atoms are nullary relations. Valuations over `n` atoms are enumerated
//! with atoms sorted by name, the first atom varying slowest, and each atom
//! running through `T`, `P`, `F` in that order. Countermodels are always
//! the first failing valuation in this order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::Formula;
use crate::truth::TruthValue;

/// Refuse formulas with more distinct atoms than this unless overridden.
pub const DEFAULT_MAX_ATOMS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropError {
    #[error("atom `{0}` has no value")]
    UnboundAtom(String),
    #[error("quantifier over `{0}` in a propositional formula")]
    Quantifier(String),
    #[error("`{0}` is not propositional (relations must be nullary, no equality)")]
    NotPropositional(String),
    #[error("{count} distinct atoms exceed the enumeration limit of {max}")]
    TooManyAtoms { count: usize, max: usize },
}

/// An assignment of truth values to atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Valuation(BTreeMap<String, TruthValue>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, TruthValue)>) -> Self {
        Valuation(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn get(&self, atom: &str) -> Option<TruthValue> {
        self.0.get(atom).copied()
    }

    pub fn set(&mut self, atom: &str, v: TruthValue) {
        self.0.insert(atom.to_string(), v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, TruthValue)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (atom, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{atom}={v}")?;
        }
        Ok(())
    }
}

/// Evaluates a quantifier-free formula over nullary atoms.
pub fn eval_prop(f: &Formula, v: &Valuation) -> Result<TruthValue, PropError> {
    Ok(match f {
        Formula::Const(c) => *c,
        Formula::Rel(name, args) if args.is_empty() => v
            .get(name)
            .ok_or_else(|| PropError::UnboundAtom(name.clone()))?,
        Formula::Rel(..) | Formula::Eq(..) => {
            return Err(PropError::NotPropositional(f.to_string()))
        }
        Formula::Forall(x, _) | Formula::Exists(x, _) => {
            return Err(PropError::Quantifier(x.clone()))
        }
        Formula::Not(a) => eval_prop(a, v)?.neg(),
        Formula::Status(a, op) => eval_prop(a, v)?.status(*op),
        Formula::And(a, b) => eval_prop(a, v)?.conj(eval_prop(b, v)?),
        Formula::Or(a, b) => eval_prop(a, v)?.disj(eval_prop(b, v)?),
        Formula::WeakImp(a, b) => eval_prop(a, v)?.weak_imp(eval_prop(b, v)?),
        Formula::WeakIff(a, b) => eval_prop(a, v)?.weak_iff(eval_prop(b, v)?),
        Formula::StrongImp(a, b) => eval_prop(a, v)?.strong_imp(eval_prop(b, v)?),
        Formula::StrongIff(a, b) => eval_prop(a, v)?.strong_iff(eval_prop(b, v)?),
    })
}

/// Checks that `f` is propositional and returns its atoms in sorted order.
pub fn prop_atoms(f: &Formula) -> Result<Vec<String>, PropError> {
    for g in f.subformulas() {
        match g {
            Formula::Forall(x, _) | Formula::Exists(x, _) => {
                return Err(PropError::Quantifier(x.clone()))
            }
            Formula::Rel(_, args) if !args.is_empty() => {
                return Err(PropError::NotPropositional(g.to_string()))
            }
            Formula::Eq(..) => return Err(PropError::NotPropositional(g.to_string())),
            _ => {}
        }
    }
    Ok(f.atoms().into_iter().collect())
}

/// All `3^n` valuations of `atoms`, in enumeration order.
pub fn valuations(atoms: &[String]) -> impl Iterator<Item = Valuation> + '_ {
    let total = 3usize.pow(atoms.len() as u32);
    (0..total).map(move |mut index| {
        let mut values = vec![TruthValue::Top; atoms.len()];
        for slot in values.iter_mut().rev() {
            *slot = TruthValue::ALL[index % 3];
            index /= 3;
        }
        Valuation(atoms.iter().cloned().zip(values).collect())
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "countermodel", rename_all = "lowercase")]
pub enum Tautology {
    Valid,
    Countermodel(Valuation),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "countermodel", rename_all = "lowercase")]
pub enum Entailment {
    Entailed,
    Countermodel(Valuation),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTableRow {
    pub inputs: Vec<TruthValue>,
    pub value: TruthValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTable {
    pub atoms: Vec<String>,
    pub formula: String,
    pub rows: Vec<TruthTableRow>,
}

impl fmt::Display for TruthTable {
    /// Header `p q | formula`, then one `T P | F` line per valuation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let widths: Vec<usize> = self.atoms.iter().map(String::len).collect();
        let line = |cells: Vec<String>, last: &str| {
            let mut s = String::new();
            for (cell, w) in cells.iter().zip(&widths) {
                s.push_str(&format!("{cell:<w$} "));
            }
            s.push_str("| ");
            s.push_str(last);
            s
        };
        writeln!(f, "{}", line(self.atoms.clone(), &self.formula))?;
        for row in &self.rows {
            let cells = row.inputs.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line(cells, &row.value.to_string()))?;
        }
        Ok(())
    }
}

/// Enumeration settings shared by the checking operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropChecker {
    pub max_atoms: usize,
}

impl Default for PropChecker {
    fn default() -> Self {
        PropChecker {
            max_atoms: DEFAULT_MAX_ATOMS,
        }
    }
}

impl PropChecker {
    pub fn unbounded() -> Self {
        PropChecker {
            max_atoms: usize::MAX,
        }
    }

    fn atoms_of<'a>(
        &self,
        formulas: impl IntoIterator<Item = &'a Formula>,
    ) -> Result<Vec<String>, PropError> {
        let mut atoms = std::collections::BTreeSet::new();
        for f in formulas {
            atoms.extend(prop_atoms(f)?);
        }
        if atoms.len() > self.max_atoms {
            return Err(PropError::TooManyAtoms {
                count: atoms.len(),
                max: self.max_atoms,
            });
        }
        Ok(atoms.into_iter().collect())
    }

    pub fn truth_table(&self, f: &Formula) -> Result<TruthTable, PropError> {
        let atoms = self.atoms_of([f])?;
        let rows = valuations(&atoms)
            .map(|v| {
                Ok(TruthTableRow {
                    inputs: atoms.iter().map(|a| v.get(a).unwrap()).collect(),
                    value: eval_prop(f, &v)?,
                })
            })
            .collect::<Result<_, PropError>>()?;
        Ok(TruthTable {
            atoms,
            formula: f.to_string(),
            rows,
        })
    }

    pub fn is_tautology(&self, f: &Formula) -> Result<Tautology, PropError> {
        let atoms = self.atoms_of([f])?;
        for v in valuations(&atoms) {
            if !eval_prop(f, &v)?.is_designated() {
                return Ok(Tautology::Countermodel(v));
            }
        }
        Ok(Tautology::Valid)
    }

    pub fn entails(
        &self,
        premises: &[Formula],
        conclusion: &Formula,
    ) -> Result<Entailment, PropError> {
        let atoms = self.atoms_of(premises.iter().chain([conclusion]))?;
        'valuations: for v in valuations(&atoms) {
            for p in premises {
                if !eval_prop(p, &v)?.is_designated() {
                    continue 'valuations;
                }
            }
            if !eval_prop(conclusion, &v)?.is_designated() {
                return Ok(Entailment::Countermodel(v));
            }
        }
        Ok(Entailment::Entailed)
    }

    pub fn equivalent(&self, f: &Formula, g: &Formula) -> Result<bool, PropError> {
        let atoms = self.atoms_of([f, g])?;
        for v in valuations(&atoms) {
            if eval_prop(f, &v)? != eval_prop(g, &v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn truth_table(f: &Formula) -> Result<TruthTable, PropError> {
    PropChecker::default().truth_table(f)
}

pub fn is_tautology(f: &Formula) -> Result<Tautology, PropError> {
    PropChecker::default().is_tautology(f)
}

pub fn entails_prop(premises: &[Formula], conclusion: &Formula) -> Result<Entailment, PropError> {
    PropChecker::default().entails(premises, conclusion)
}

pub fn equivalent_prop(f: &Formula, g: &Formula) -> Result<bool, PropError> {
    PropChecker::default().equivalent(f, g)
}
