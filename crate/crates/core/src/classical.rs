//! The classical side: two-valued evaluation on consistent models, the
//! translation of strong LP into classical logic, and the consistency
//! schema that cuts strong LP down to its classical models.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::fo::{
    check_formula, enumerate_models, model_count, satisfies_formula, val, Assignment, Element,
    FoError, Model, ModelBudget,
};
use crate::syntax::{expand_status, fresh_name, Formula, Signature, Term};
use crate::truth::{StatusOp, TruthValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicalError {
    #[error("model is inconsistent: classical evaluation needs every relation two-valued")]
    InconsistentModel,
    #[error("`{0}` has no classical denotation")]
    NoClassicalDenotation(String),
    #[error(transparent)]
    Fo(#[from] FoError),
}

/// Two-valued truth of `f` in the consistent model `m`.
///
/// `=>` and `<=>` are read as material implication and equivalence. The
/// status operators `^t`, `^f` and `^c` are read through their definitions;
/// `BOTH`, `^p` and `^nf` have no classical reading and are rejected.
pub fn classical_eval(f: &Formula, m: &Model, a: &Assignment) -> Result<bool, ClassicalError> {
    if !m.is_consistent() {
        return Err(ClassicalError::InconsistentModel);
    }
    let mut stack = Vec::new();
    eval(f, m, a, &mut stack)
}

fn eval<'a>(
    f: &'a Formula,
    m: &Model,
    a: &Assignment,
    stack: &mut Vec<(&'a str, Element)>,
) -> Result<bool, ClassicalError> {
    let term = |t: &Term, stack: &Vec<(&str, Element)>| -> Result<Element, FoError> {
        if let Term::Var(x) = t {
            if let Some(&(_, e)) = stack.iter().rev().find(|(v, _)| v == x) {
                return Ok(e);
            }
        }
        val(t, m, a)
    };
    Ok(match f {
        Formula::Const(TruthValue::Top) => true,
        Formula::Const(TruthValue::Bot) => false,
        Formula::Const(TruthValue::Both) => {
            return Err(ClassicalError::NoClassicalDenotation(f.to_string()))
        }
        Formula::Rel(r, args) => {
            let elements = args
                .iter()
                .map(|t| term(t, stack))
                .collect::<Result<Vec<_>, _>>()?;
            m.lookup(r, &elements)? == TruthValue::Top
        }
        Formula::Eq(s, t) => term(s, stack)? == term(t, stack)?,
        Formula::Not(p) => !eval(p, m, a, stack)?,
        Formula::And(p, q) => eval(p, m, a, stack)? & eval(q, m, a, stack)?,
        Formula::Or(p, q) => eval(p, m, a, stack)? | eval(q, m, a, stack)?,
        Formula::WeakImp(p, q) | Formula::StrongImp(p, q) => {
            !eval(p, m, a, stack)? | eval(q, m, a, stack)?
        }
        Formula::WeakIff(p, q) | Formula::StrongIff(p, q) => {
            eval(p, m, a, stack)? == eval(q, m, a, stack)?
        }
        Formula::Status(p, op) => {
            let v = eval(p, m, a, stack)?;
            match op {
                StatusOp::IsTop => v,
                StatusOp::IsBot => !v,
                StatusOp::Consistent => true,
                StatusOp::IsBoth | StatusOp::NotFalse => {
                    return Err(ClassicalError::NoClassicalDenotation(f.to_string()))
                }
            }
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let universal = matches!(f, Formula::Forall(..));
            for e in 0..m.size() {
                stack.push((x, e));
                let v = eval(body, m, a, stack);
                stack.pop();
                if v? != universal {
                    return Ok(!universal);
                }
            }
            universal
        }
    })
}

/// Classical truth under every assignment of the free variables.
pub fn classical_satisfies(m: &Model, f: &Formula) -> Result<bool, ClassicalError> {
    let vars: Vec<String> = f.free_vars().into_iter().collect();
    for a in Assignment::all(&vars, m.size()) {
        if !classical_eval(f, m, &a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first consistent model of size at most `max_size` that classically
/// satisfies every formula of `theory`, if any.
pub fn find_classical_model(
    theory: &[Formula],
    sig: &Signature,
    max_size: usize,
    budget: &ModelBudget,
) -> Result<Option<Model>, ClassicalError> {
    for f in theory {
        check_formula(f, sig)?;
    }
    for k in 1..=max_size {
        'models: for m in enumerate_models(sig, k, budget)? {
            if !m.is_consistent() {
                continue;
            }
            for f in theory {
                if !classical_satisfies(&m, f)? {
                    continue 'models;
                }
            }
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Maps `=>` to `->` and `<=>` to `<->`, expanding status operators into
/// their definitions first. Everything else is kept as is.
pub fn translate_to_classical(f: &Formula) -> Result<Formula, ClassicalError> {
    let t = translate_to_classical;
    Ok(match f {
        Formula::Const(TruthValue::Both) => {
            return Err(ClassicalError::NoClassicalDenotation(f.to_string()))
        }
        Formula::Const(_) | Formula::Rel(..) | Formula::Eq(..) => f.clone(),
        Formula::Not(a) => Formula::not(t(a)?),
        Formula::And(a, b) => Formula::and(t(a)?, t(b)?),
        Formula::Or(a, b) => Formula::or(t(a)?, t(b)?),
        Formula::WeakImp(a, b) | Formula::StrongImp(a, b) => Formula::weak_imp(t(a)?, t(b)?),
        Formula::WeakIff(a, b) | Formula::StrongIff(a, b) => Formula::weak_iff(t(a)?, t(b)?),
        Formula::Forall(x, a) => Formula::forall(x, t(a)?),
        Formula::Exists(x, a) => Formula::exists(x, t(a)?),
        Formula::Status(a, op) => t(&expand_status((**a).clone(), *op))?,
    })
}

/// One formula `forall x1 ... xn. R(x1, ..., xn)^c` per relation symbol.
///
/// A unary relation uses the variable `x`; higher arities use `x1..xn`.
/// Names that clash with a constant of `sig` are primed.
pub fn consistency_schema(sig: &Signature) -> Vec<Formula> {
    let taken: BTreeSet<String> = sig.constants().map(String::from).collect();
    let name = |base: String| {
        if taken.contains(&base) {
            fresh_name(&base, &taken)
        } else {
            base
        }
    };
    sig.relations()
        .map(|(r, arity)| {
            let vars: Vec<String> = match arity {
                1 => vec![name("x".into())],
                n => (1..=n).map(|i| name(format!("x{i}"))).collect(),
            };
            let atom = Formula::rel(r, vars.iter().map(|v| Term::var(v)).collect());
            vars.iter()
                .rev()
                .fold(Formula::status(atom, StatusOp::Consistent), |body, v| {
                    Formula::forall(v, body)
                })
        })
        .collect()
}

/// A model on which the schema and consistency disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemaViolation {
    pub model: Model,
    pub consistent: bool,
    pub satisfies_schema: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemaReport {
    pub schema: Vec<Formula>,
    pub max_size: usize,
    pub models_checked: u128,
    pub consistent_models: u128,
    pub schema_models: u128,
    pub violations: Vec<SchemaViolation>,
}

impl SchemaReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks over every model of size `1..=max_size` that satisfying the
/// consistency schema coincides with being consistent.
pub fn schema_forces_consistency(
    sig: &Signature,
    max_size: usize,
    budget: &ModelBudget,
) -> Result<SchemaReport, ClassicalError> {
    if max_size == 0 {
        return Err(FoError::ZeroSize.into());
    }
    let total = (1..=max_size)
        .map(|k| model_count(sig, k))
        .fold(0u128, u128::saturating_add);
    if total > budget.max_models {
        return Err(FoError::BudgetExceeded {
            count: total,
            budget: budget.max_models,
        }
        .into());
    }
    let schema = consistency_schema(sig);
    let mut report = SchemaReport {
        schema: schema.clone(),
        max_size,
        models_checked: 0,
        consistent_models: 0,
        schema_models: 0,
        violations: Vec::new(),
    };
    for k in 1..=max_size {
        for m in enumerate_models(sig, k, &ModelBudget::unlimited())? {
            let consistent = m.is_consistent();
            let mut satisfies_schema = true;
            for f in &schema {
                if !satisfies_formula(&m, f)? {
                    satisfies_schema = false;
                    break;
                }
            }
            report.models_checked += 1;
            report.consistent_models += u128::from(consistent);
            report.schema_models += u128::from(satisfies_schema);
            if consistent != satisfies_schema {
                report.violations.push(SchemaViolation {
                    model: m,
                    consistent,
                    satisfies_schema,
                });
            }
        }
    }
    Ok(report)
}
