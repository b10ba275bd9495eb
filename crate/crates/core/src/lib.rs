//! Semantics and tooling for the paraconsistent logic LP and its extension
//! with strong implication (`=>`), sometimes called strong LP.
//!
//! - [`truth`]: the three truth values and every connective on them.
//! - [`syntax`]: formulas, the concrete grammar, desugaring.
//! - [`prop`]: truth tables, tautology and entailment checks.
//! - [`definability`]: truth functions, clone closure, synthesis, paradox
//!   fixed points.
//! - [`fo`]: finite first-order models and bounded entailment.
//! - [`classical`]: two-valued evaluation, the translation into classical
//!   logic and the consistency schema.
//! - [`embedding`]: translations of classical theories into strong LP.

pub mod classical;
pub mod definability;
pub mod embedding;
pub mod fo;
pub mod prop;
pub mod syntax;
pub mod truth;

pub use prop::{Entailment, Tautology, Valuation};
pub use syntax::{Formula, Signature, Term};
pub use truth::{StatusOp, TruthValue};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/truth-values.md")]
    mod truth_values {}
    #[doc = include_str!("../../../book/src/formulas.md")]
    mod formulas {}
    #[doc = include_str!("../../../book/src/propositional.md")]
    mod propositional {}
    #[doc = include_str!("../../../book/src/definability.md")]
    mod definability {}
    #[doc = include_str!("../../../book/src/paradox.md")]
    mod paradox {}
    #[doc = include_str!("../../../book/src/first-order.md")]
    mod first_order {}
    #[doc = include_str!("../../../book/src/classical.md")]
    mod classical {}
    #[doc = include_str!("../../../book/src/embedding.md")]
    mod embedding {}
}
