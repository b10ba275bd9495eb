//! Embeddings of classical theories into strong LP.
//!
//! An embedding interprets each classical relation `R` by a formula
//! `rho_R(x1, ..., xn)` and carves out a domain with a formula `kappa(x)`.
//! The induced translation `tr` sends atoms to their interpretations, is
//! homomorphic on `~` and `&`, and relativizes quantifiers:
//! `tr(forall x. a) = forall x. (kappa(x) => tr(a))`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fo::{check_formula, satisfies_formula, FoError, Model};
use crate::syntax::{desugar, parse_formula_inferring, Formula, ParseError, Signature, Term};
use crate::truth::{StatusOp, TruthValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("invalid embedding file: {0}")]
    File(String),
    #[error("in {context}: {source}")]
    Parse {
        context: String,
        #[source]
        source: ParseError,
    },
    #[error("relation `{0}` has no interpretation")]
    MissingRelation(String),
    #[error(
        "relation `{relation}` is used with {found} argument(s) but interpreted with {expected}"
    )]
    ArityMismatch {
        relation: String,
        expected: usize,
        found: usize,
    },
    #[error("interpretation of `{relation}` has free variables {{{free}}}, expected exactly its parameters {{{params}}}")]
    ParamMismatch {
        relation: String,
        params: String,
        free: String,
    },
    #[error("kappa must have exactly one free variable, found {0}")]
    KappaArity(usize),
    #[error("constant `{0}` is not allowed in a classical formula")]
    ConstantSymbol(String),
    #[error("`{0}` is not a classical formula")]
    NotClassical(String),
    #[error(transparent)]
    Fo(#[from] FoError),
}

/// `rho_R` with its parameter list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub params: Vec<String>,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    rho: BTreeMap<String, Interpretation>,
    kappa_var: String,
    kappa: Formula,
}

impl Embedding {
    /// Validates that every interpretation has exactly its parameters free
    /// and that `kappa` has exactly one free variable.
    pub fn new(
        rho: BTreeMap<String, Interpretation>,
        kappa: Formula,
    ) -> Result<Embedding, EmbeddingError> {
        for (r, interp) in &rho {
            let params: BTreeSet<&String> = interp.params.iter().collect();
            let free = interp.formula.free_vars();
            if params.len() != interp.params.len() || free.iter().ne(params.iter().copied()) {
                return Err(EmbeddingError::ParamMismatch {
                    relation: r.clone(),
                    params: interp.params.join(", "),
                    free: free.into_iter().collect::<Vec<_>>().join(", "),
                });
            }
        }
        let free = kappa.free_vars();
        if free.len() != 1 {
            return Err(EmbeddingError::KappaArity(free.len()));
        }
        let kappa_var = free.into_iter().next().expect("one variable");
        Ok(Embedding {
            rho,
            kappa_var,
            kappa,
        })
    }

    /// Loads the JSON format
    /// `{"rho": {"R": "formula" | {"params": [...], "formula": "..."}}, "kappa": "formula"}`.
    ///
    /// A bare formula string takes its free variables, sorted by name, as
    /// parameters. Formulas are parsed against `sig`, which gains any
    /// undeclared relation symbols.
    pub fn from_json(text: &str, sig: &mut Signature) -> Result<Embedding, EmbeddingError> {
        let file: EmbeddingFile =
            serde_json::from_str(text).map_err(|e| EmbeddingError::File(e.to_string()))?;
        let mut parse = |context: String, text: &str| {
            parse_formula_inferring(text, sig)
                .map_err(|source| EmbeddingError::Parse { context, source })
        };
        let mut rho = BTreeMap::new();
        for (r, entry) in file.rho {
            let interp = match entry {
                RhoFile::Bare(text) => {
                    let formula = parse(format!("rho of `{r}`"), &text)?;
                    let params = formula.free_vars().into_iter().collect();
                    Interpretation { params, formula }
                }
                RhoFile::Full { params, formula } => Interpretation {
                    formula: parse(format!("rho of `{r}`"), &formula)?,
                    params,
                },
            };
            rho.insert(r, interp);
        }
        let kappa = parse("kappa".into(), &file.kappa)?;
        Embedding::new(rho, kappa)
    }

    pub fn rho(&self) -> &BTreeMap<String, Interpretation> {
        &self.rho
    }

    pub fn kappa(&self) -> &Formula {
        &self.kappa
    }

    /// `kappa(t)`.
    pub fn kappa_at(&self, t: Term) -> Formula {
        self.kappa
            .substitute(&BTreeMap::from([(self.kappa_var.clone(), t)]))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EmbeddingFile {
    rho: BTreeMap<String, RhoFile>,
    kappa: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RhoFile {
    Bare(String),
    Full {
        params: Vec<String>,
        formula: String,
    },
}

/// `tr(phi)`.
///
/// `phi` must be classical: built from relations, `=`, `TRUE`, `FALSE`,
/// `~`, `&`, `|`, `->`, `<->`, `forall` and `exists`, with no constant
/// symbols. Derived connectives are rewritten into `~`, `&` and `forall`
/// before translating. Equality and the two classical constants are kept
/// as they are.
pub fn embed_translate(phi: &Formula, e: &Embedding) -> Result<Formula, EmbeddingError> {
    for g in phi.subformulas() {
        match g {
            Formula::StrongImp(..)
            | Formula::StrongIff(..)
            | Formula::Status(..)
            | Formula::Const(TruthValue::Both) => {
                return Err(EmbeddingError::NotClassical(g.to_string()))
            }
            Formula::Rel(_, args) => check_terms(args)?,
            Formula::Eq(a, b) => check_terms(&[a.clone(), b.clone()])?,
            _ => {}
        }
    }
    tr(&desugar(phi), e)
}

fn check_terms(terms: &[Term]) -> Result<(), EmbeddingError> {
    match terms.iter().find(|t| matches!(t, Term::Const(_))) {
        Some(c) => Err(EmbeddingError::ConstantSymbol(c.name().into())),
        None => Ok(()),
    }
}

fn tr(phi: &Formula, e: &Embedding) -> Result<Formula, EmbeddingError> {
    Ok(match phi {
        Formula::Rel(r, args) => {
            let interp = e
                .rho
                .get(r)
                .ok_or_else(|| EmbeddingError::MissingRelation(r.clone()))?;
            if interp.params.len() != args.len() {
                return Err(EmbeddingError::ArityMismatch {
                    relation: r.clone(),
                    expected: interp.params.len(),
                    found: args.len(),
                });
            }
            let map = interp
                .params
                .iter()
                .cloned()
                .zip(args.iter().cloned())
                .collect();
            interp.formula.substitute(&map)
        }
        Formula::Const(_) | Formula::Eq(..) => phi.clone(),
        Formula::Not(a) => Formula::not(tr(a, e)?),
        Formula::And(a, b) => Formula::and(tr(a, e)?, tr(b, e)?),
        Formula::Forall(x, a) => {
            Formula::forall(x, Formula::strong_imp(e.kappa_at(Term::var(x)), tr(a, e)?))
        }
        _ => unreachable!("desugared classical formula"),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SentenceCheck {
    pub sentence: Formula,
    pub translation: Formula,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    /// `tr(phi)^c` designated for each sentence.
    pub consistency: Vec<SentenceCheck>,
    /// `tr(phi)` designated for each theorem.
    pub theorems: Vec<SentenceCheck>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.consistency
            .iter()
            .chain(&self.theorems)
            .all(|c| c.passed)
    }
}

/// Checks one model against finite lists of sentences and theorems.
///
/// Open formulas are read universally, as in [`satisfies_formula`].
pub fn check_embedding(
    e: &Embedding,
    sentences: &[Formula],
    model: &Model,
    theorems: &[Formula],
) -> Result<EmbeddingReport, EmbeddingError> {
    let sig = model.signature();
    for interp in e.rho.values() {
        check_formula(&interp.formula, &sig)?;
    }
    check_formula(&e.kappa, &sig)?;
    let check = |phi: &Formula, wrap: bool| -> Result<SentenceCheck, EmbeddingError> {
        let translation = embed_translate(phi, e)?;
        let target = if wrap {
            Formula::status(translation.clone(), StatusOp::Consistent)
        } else {
            translation.clone()
        };
        Ok(SentenceCheck {
            sentence: phi.clone(),
            passed: satisfies_formula(model, &target)?,
            translation,
        })
    };
    Ok(EmbeddingReport {
        consistency: sentences
            .iter()
            .map(|phi| check(phi, true))
            .collect::<Result<_, _>>()?,
        theorems: theorems
            .iter()
            .map(|phi| check(phi, false))
            .collect::<Result<_, _>>()?,
    })
}
