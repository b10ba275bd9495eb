//! The three truth values and the propositional connectives on them.
//!
//! Values are ordered `Bot < Both < Top`. Under the numeric reading
//! `Top = 1`, `Both = 1/2`, `Bot = 0`, conjunction is the minimum,
//! disjunction the maximum and negation `1 - x`. Strong implication is
//! two-valued: `Top` when the antecedent is no greater than the consequent,
//! `Bot` otherwise.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not};
use std::str::FromStr;

use num_rational::Rational32;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// One of the three truth values: true, paradoxical ("both"), false.
///
/// The derived `Ord` is the truth order `Bot < Both < Top`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    Bot,
    Both,
    Top,
}

/// The unary status operators definable from strong implication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatusOp {
    /// `p^t`: `p` is exactly true.
    IsTop,
    /// `p^p`: `p` is paradoxical.
    IsBoth,
    /// `p^f`: `p` is exactly false.
    IsBot,
    /// `p^nf`: `p` is not (exactly) false.
    NotFalse,
    /// `p^c`: `p` is consistent, i.e. not paradoxical.
    Consistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruthValueError {
    #[error("{0} is not a truth value (expected 0, 1/2 or 1)")]
    NotATruthValue(Rational32),
    #[error("unknown truth value `{0}` (expected T, P or F)")]
    UnknownName(String),
    #[error("unknown status operator `^{0}` (expected t, p, f, nf or c)")]
    UnknownStatus(String),
}

impl TruthValue {
    /// All values in enumeration order: `Top`, `Both`, `Bot`.
    ///
    /// This is the order used for truth-table rows and truth-function
    /// indices throughout the crate.
    pub const ALL: [TruthValue; 3] = [TruthValue::Top, TruthValue::Both, TruthValue::Bot];

    /// Position of the value in [`TruthValue::ALL`].
    pub fn index(self) -> usize {
        match self {
            TruthValue::Top => 0,
            TruthValue::Both => 1,
            TruthValue::Bot => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<TruthValue> {
        TruthValue::ALL.get(i).copied()
    }

    pub fn to_numeric(self) -> Rational32 {
        match self {
            TruthValue::Top => Rational32::from_integer(1),
            TruthValue::Both => Rational32::new(1, 2),
            TruthValue::Bot => Rational32::from_integer(0),
        }
    }

    pub fn from_numeric(r: Rational32) -> Result<TruthValue, TruthValueError> {
        TruthValue::ALL
            .into_iter()
            .find(|v| v.to_numeric() == r)
            .ok_or(TruthValueError::NotATruthValue(r))
    }

    /// Single-letter serialization name: `T`, `P` or `F`.
    pub fn letter(self) -> char {
        match self {
            TruthValue::Top => 'T',
            TruthValue::Both => 'P',
            TruthValue::Bot => 'F',
        }
    }

    pub fn from_letter(c: char) -> Option<TruthValue> {
        match c {
            'T' => Some(TruthValue::Top),
            'P' => Some(TruthValue::Both),
            'F' => Some(TruthValue::Bot),
            _ => None,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> TruthValue {
        match self {
            TruthValue::Top => TruthValue::Bot,
            TruthValue::Both => TruthValue::Both,
            TruthValue::Bot => TruthValue::Top,
        }
    }

    pub fn conj(self, other: TruthValue) -> TruthValue {
        self.min(other)
    }

    pub fn disj(self, other: TruthValue) -> TruthValue {
        self.max(other)
    }

    /// LP's material implication `¬a ∨ b`.
    pub fn weak_imp(self, other: TruthValue) -> TruthValue {
        self.neg().disj(other)
    }

    pub fn weak_iff(self, other: TruthValue) -> TruthValue {
        self.weak_imp(other).conj(other.weak_imp(self))
    }

    /// Strong implication: `Top` iff `self <= other`, else `Bot`.
    pub fn strong_imp(self, other: TruthValue) -> TruthValue {
        if self <= other {
            TruthValue::Top
        } else {
            TruthValue::Bot
        }
    }

    /// Strong biconditional: `Top` iff both values are identical.
    pub fn strong_iff(self, other: TruthValue) -> TruthValue {
        if self == other {
            TruthValue::Top
        } else {
            TruthValue::Bot
        }
    }

    pub fn status(self, op: StatusOp) -> TruthValue {
        let holds = match op {
            StatusOp::IsTop => self == TruthValue::Top,
            StatusOp::IsBoth => self == TruthValue::Both,
            StatusOp::IsBot => self == TruthValue::Bot,
            StatusOp::NotFalse => self != TruthValue::Bot,
            StatusOp::Consistent => self != TruthValue::Both,
        };
        TruthValue::from(holds)
    }

    /// Designated values are those strictly above `Bot`.
    pub fn is_designated(self) -> bool {
        self > TruthValue::Bot
    }

    pub fn is_classical(self) -> bool {
        self != TruthValue::Both
    }
}

impl From<bool> for TruthValue {
    fn from(b: bool) -> Self {
        if b {
            TruthValue::Top
        } else {
            TruthValue::Bot
        }
    }
}

impl Not for TruthValue {
    type Output = TruthValue;

    fn not(self) -> TruthValue {
        self.neg()
    }
}

impl BitAnd for TruthValue {
    type Output = TruthValue;

    fn bitand(self, rhs: TruthValue) -> TruthValue {
        self.conj(rhs)
    }
}

impl BitOr for TruthValue {
    type Output = TruthValue;

    fn bitor(self, rhs: TruthValue) -> TruthValue {
        self.disj(rhs)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for TruthValue {
    type Err = TruthValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => {
                TruthValue::from_letter(c).ok_or_else(|| TruthValueError::UnknownName(s.into()))
            }
            _ => Err(TruthValueError::UnknownName(s.into())),
        }
    }
}

impl Serialize for TruthValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_char(self.letter())
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl StatusOp {
    pub const ALL: [StatusOp; 5] = [
        StatusOp::IsTop,
        StatusOp::IsBoth,
        StatusOp::IsBot,
        StatusOp::NotFalse,
        StatusOp::Consistent,
    ];

    /// The postfix suffix used by the concrete syntax (`t` in `p^t`).
    pub fn suffix(self) -> &'static str {
        match self {
            StatusOp::IsTop => "t",
            StatusOp::IsBoth => "p",
            StatusOp::IsBot => "f",
            StatusOp::NotFalse => "nf",
            StatusOp::Consistent => "c",
        }
    }

    pub fn from_suffix(s: &str) -> Result<StatusOp, TruthValueError> {
        StatusOp::ALL
            .into_iter()
            .find(|op| op.suffix() == s)
            .ok_or_else(|| TruthValueError::UnknownStatus(s.into()))
    }
}

impl fmt::Display for StatusOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "^{}", self.suffix())
    }
}
