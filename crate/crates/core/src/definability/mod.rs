//! Truth functions as tables, and what formulas can define them.

mod closure;
mod synth;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::prop::{eval_prop, prop_atoms, valuations, PropError};
use crate::syntax::Formula;
use crate::truth::TruthValue;

pub use closure::{
    closure, closure_with, Closure, ClosureOptions, Connective, ConnectiveBasis, Definable,
};
pub use synth::synthesize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefinabilityError {
    #[error("table has {len} entries, which is not a power of 3")]
    BadTableLength { len: usize },
    #[error("invalid truth-value letter `{0}` (expected T, P or F)")]
    BadLetter(char),
    #[error("formula mentions atom `{0}`, which is not in the atom list")]
    AtomMismatch(String),
    #[error("atom `{0}` is listed twice")]
    DuplicateAtom(String),
    #[error("expected a function of arity {expected}, got arity {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("a connective basis needs at least one connective")]
    EmptyBasis,
    #[error("closure is computed for arity 1 to {max}, not {found}")]
    UnsupportedArity { found: usize, max: usize },
    #[error("closure exceeded {limit} functions")]
    TooLarge { limit: usize },
    #[error(transparent)]
    Prop(#[from] PropError),
}

/// A total map from `arity`-tuples of truth values to truth values.
///
/// Entry `i` holds the value at the `i`-th input tuple in lexicographic
/// order over `T`, `P`, `F`, with the first argument most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthFunction {
    arity: usize,
    table: Vec<TruthValue>,
}

impl TruthFunction {
    pub fn new(table: Vec<TruthValue>) -> Result<Self, DefinabilityError> {
        let arity = arity_for_len(table.len())
            .ok_or(DefinabilityError::BadTableLength { len: table.len() })?;
        Ok(TruthFunction { arity, table })
    }

    pub fn from_fn(arity: usize, f: impl Fn(&[TruthValue]) -> TruthValue) -> Self {
        let table = input_tuples(arity).map(|args| f(&args)).collect();
        TruthFunction { arity, table }
    }

    pub fn constant(arity: usize, v: TruthValue) -> Self {
        TruthFunction {
            arity,
            table: vec![v; 3usize.pow(arity as u32)],
        }
    }

    pub fn projection(arity: usize, i: usize) -> Self {
        Self::from_fn(arity, |args| args[i])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[TruthValue] {
        &self.table
    }

    pub fn apply(&self, args: &[TruthValue]) -> TruthValue {
        assert_eq!(args.len(), self.arity, "argument count");
        let index = args.iter().fold(0, |acc, v| acc * 3 + v.index());
        self.table[index]
    }
}

/// Input tuples of the given arity, in table order.
pub fn input_tuples(arity: usize) -> impl Iterator<Item = Vec<TruthValue>> {
    (0..3usize.pow(arity as u32)).map(move |mut index| {
        let mut args = vec![TruthValue::Top; arity];
        for slot in args.iter_mut().rev() {
            *slot = TruthValue::ALL[index % 3];
            index /= 3;
        }
        args
    })
}

fn arity_for_len(len: usize) -> Option<usize> {
    let (mut n, mut size) = (0, 1);
    while size < len {
        size *= 3;
        n += 1;
    }
    (size == len).then_some(n)
}

impl fmt::Display for TruthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.table {
            write!(f, "{}", v.letter())?;
        }
        Ok(())
    }
}

impl FromStr for TruthFunction {
    type Err = DefinabilityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let table = s
            .chars()
            .map(|c| TruthValue::from_letter(c).ok_or(DefinabilityError::BadLetter(c)))
            .collect::<Result<Vec<_>, _>>()?;
        TruthFunction::new(table)
    }
}

impl Serialize for TruthFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TruthFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Atom names used for synthesized and witness formulas of the given arity.
pub fn default_atoms(arity: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["p", "q", "r", "s"];
    if arity <= NAMES.len() {
        NAMES[..arity].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=arity).map(|i| format!("p{i}")).collect()
    }
}

/// The truth function a propositional formula computes over `atoms`.
///
/// The formula may leave some listed atoms unused, but may not mention an
/// atom outside the list.
pub fn function_of(f: &Formula, atoms: &[String]) -> Result<TruthFunction, DefinabilityError> {
    let mut seen = BTreeSet::new();
    for a in atoms {
        if !seen.insert(a) {
            return Err(DefinabilityError::DuplicateAtom(a.clone()));
        }
    }
    if let Some(extra) = prop_atoms(f)?.into_iter().find(|a| !seen.contains(a)) {
        return Err(DefinabilityError::AtomMismatch(extra));
    }
    let table = valuations(atoms)
        .map(|v| eval_prop(f, &v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TruthFunction {
        arity: atoms.len(),
        table,
    })
}

/// Values `v` with `g(v) = v`.
///
/// A self-referential sentence `s <-> g(s)` has an admissible value exactly
/// when this set is nonempty; an empty set marks a trivializing operator.
pub fn fixed_points(g: &TruthFunction) -> Result<BTreeSet<TruthValue>, DefinabilityError> {
    if g.arity != 1 {
        return Err(DefinabilityError::WrongArity {
            expected: 1,
            found: g.arity,
        });
    }
    Ok(TruthValue::ALL
        .into_iter()
        .filter(|&v| g.apply(&[v]) == v)
        .collect())
}
