//! First-order semantics over finite models.
//!
//! Relations are interpreted as three-valued tables. Equality is always
//! two-valued, and a universal quantifier takes the minimum over the
//! domain. A model satisfies a formula when every assignment of its free
//! variables gives a designated value.

mod enumerate;
mod model;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::syntax::{Formula, Signature, Term};
use crate::truth::TruthValue;

pub use enumerate::{
    entails_bounded, enumerate_models, model_count, BoundedVerdict, ModelBudget, Models,
    DEFAULT_MODEL_BUDGET,
};
pub use model::{Element, Model, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoError {
    #[error("variable `{0}` is unbound")]
    UnboundVariable(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("relation `{relation}` takes {expected} argument(s), found {found}")]
    ArityMismatch {
        relation: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown domain element `{0}`")]
    UnknownElement(String),
    #[error("duplicate domain element `{0}`")]
    DuplicateElement(String),
    #[error("a model needs a nonempty domain")]
    EmptyDomain,
    #[error("signature mismatch: {0}")]
    Signature(String),
    #[error("invalid model file: {0}")]
    ModelFile(String),
    #[error("domain size must be at least 1")]
    ZeroSize,
    #[error("{count} models exceed the enumeration budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },
}

/// Variable bindings. Only the variables in play need to be bound.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<String, Element>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, var: &str, e: Element) -> Self {
        self.0.insert(var.into(), e);
        self
    }

    pub fn get(&self, var: &str) -> Option<Element> {
        self.0.get(var).copied()
    }

    /// Every assignment of `vars` to elements of a `k`-element domain, in
    /// odometer order with the last variable fastest.
    pub fn all(vars: &[String], k: usize) -> impl Iterator<Item = Assignment> + '_ {
        (0..k.pow(vars.len() as u32)).map(move |mut index| {
            let mut out = BTreeMap::new();
            for v in vars.iter().rev() {
                out.insert(v.clone(), index % k);
                index /= k;
            }
            Assignment(out)
        })
    }
}

/// The element a term denotes.
pub fn val(t: &Term, m: &Model, a: &Assignment) -> Result<Element, FoError> {
    match t {
        Term::Const(c) => m
            .constant(c)
            .ok_or_else(|| FoError::UnknownConstant(c.clone())),
        Term::Var(x) => a.get(x).ok_or_else(|| FoError::UnboundVariable(x.clone())),
    }
}

// Quantifier bindings shadow the base assignment.
struct Env<'a> {
    base: &'a Assignment,
    stack: Vec<(&'a str, Element)>,
}

impl<'a> Env<'a> {
    fn val(&self, t: &Term, m: &Model) -> Result<Element, FoError> {
        match t {
            Term::Var(x) => match self.stack.iter().rev().find(|(v, _)| v == x) {
                Some(&(_, e)) => Ok(e),
                None => val(t, m, self.base),
            },
            Term::Const(_) => val(t, m, self.base),
        }
    }
}

/// The truth value of `f` in `m` under `a`.
pub fn true_fo(f: &Formula, m: &Model, a: &Assignment) -> Result<TruthValue, FoError> {
    let mut env = Env {
        base: a,
        stack: Vec::new(),
    };
    eval(f, m, &mut env)
}

fn eval<'a>(f: &'a Formula, m: &Model, env: &mut Env<'a>) -> Result<TruthValue, FoError> {
    Ok(match f {
        Formula::Const(v) => *v,
        Formula::Rel(r, args) => {
            let elements = args
                .iter()
                .map(|t| env.val(t, m))
                .collect::<Result<Vec<_>, _>>()?;
            m.lookup(r, &elements)?
        }
        Formula::Eq(a, b) => TruthValue::from(env.val(a, m)? == env.val(b, m)?),
        Formula::Not(a) => eval(a, m, env)?.neg(),
        Formula::Status(a, op) => eval(a, m, env)?.status(*op),
        Formula::And(a, b) => eval(a, m, env)?.conj(eval(b, m, env)?),
        Formula::Or(a, b) => eval(a, m, env)?.disj(eval(b, m, env)?),
        Formula::WeakImp(a, b) => eval(a, m, env)?.weak_imp(eval(b, m, env)?),
        Formula::WeakIff(a, b) => eval(a, m, env)?.weak_iff(eval(b, m, env)?),
        Formula::StrongImp(a, b) => eval(a, m, env)?.strong_imp(eval(b, m, env)?),
        Formula::StrongIff(a, b) => eval(a, m, env)?.strong_iff(eval(b, m, env)?),
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let universal = matches!(f, Formula::Forall(..));
            let mut acc = TruthValue::from(universal);
            for e in 0..m.size() {
                env.stack.push((x, e));
                let v = eval(body, m, env);
                env.stack.pop();
                acc = if universal {
                    acc.conj(v?)
                } else {
                    acc.disj(v?)
                };
            }
            acc
        }
    })
}

/// True iff no relation of `m` takes the value `P`.
pub fn model_consistent(m: &Model) -> bool {
    m.is_consistent()
}

/// Checks that every symbol of `f` is declared in `sig` at the right arity.
pub fn check_formula(f: &Formula, sig: &Signature) -> Result<(), FoError> {
    let check_term = |t: &Term| match t {
        Term::Const(c) if !sig.is_constant(c) => Err(FoError::UnknownConstant(c.clone())),
        _ => Ok(()),
    };
    for g in f.subformulas() {
        match g {
            Formula::Rel(r, args) => {
                match sig.arity(r) {
                    None => return Err(FoError::UnknownRelation(r.clone())),
                    Some(n) if n != args.len() => {
                        return Err(FoError::ArityMismatch {
                            relation: r.clone(),
                            expected: n,
                            found: args.len(),
                        })
                    }
                    Some(_) => {}
                }
                args.iter().try_for_each(check_term)?;
            }
            Formula::Eq(a, b) => {
                check_term(a)?;
                check_term(b)?;
            }
            _ => {}
        }
    }
    Ok(())
}

/// `m |= f`: `f` is designated under every assignment of its free
/// variables.
pub fn satisfies_formula(m: &Model, f: &Formula) -> Result<bool, FoError> {
    let vars: Vec<String> = f.free_vars().into_iter().collect();
    for a in Assignment::all(&vars, m.size()) {
        if !true_fo(f, m, &a)?.is_designated() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `m |= theory`: every member is satisfied.
pub fn satisfies(m: &Model, theory: &[Formula]) -> Result<bool, FoError> {
    let sig = m.signature();
    for f in theory {
        check_formula(f, &sig)?;
    }
    for f in theory {
        if !satisfies_formula(m, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;
    use TruthValue::{Bot, Both, Top};

    fn model(values: &[TruthValue]) -> Model {
        let mut m = Model::with_size(values.len()).unwrap();
        m.set_constant("c", "e1").unwrap();
        m.add_relation("r", 1, Bot).unwrap();
        for (i, &v) in values.iter().enumerate() {
            m.set("r", &[&format!("e{}", i + 1)], v).unwrap();
        }
        m
    }

    fn f(m: &Model, text: &str) -> Formula {
        parse_formula(text, &m.signature()).unwrap()
    }

    #[test]
    fn term_valuation() {
        let m = model(&[Top, Bot]);
        assert_eq!(val(&Term::constant("c"), &m, &Assignment::new()), Ok(0));
        assert_eq!(
            val(&Term::var("x"), &m, &Assignment::new().bind("x", 1)),
            Ok(1)
        );
        assert_eq!(
            val(&Term::var("x"), &m, &Assignment::new()),
            Err(FoError::UnboundVariable("x".into()))
        );
    }

    #[test]
    fn truth_clauses() {
        let m = model(&[Both]);
        let none = Assignment::new();
        assert_eq!(true_fo(&f(&m, "r(c)"), &m, &none), Ok(Both));
        assert_eq!(true_fo(&f(&m, "~r(c)"), &m, &none), Ok(Both));
        assert_eq!(true_fo(&f(&m, "c = c"), &m, &none), Ok(Top));
        let m = model(&[Top, Both]);
        assert_eq!(true_fo(&f(&m, "forall x. r(x)"), &m, &none), Ok(Both));
        assert_eq!(true_fo(&f(&m, "exists x. r(x)"), &m, &none), Ok(Top));
        assert_eq!(
            true_fo(&f(&m, "x = c"), &m, &Assignment::new().bind("x", 1)),
            Ok(Bot)
        );
        assert_eq!(
            true_fo(&f(&m, "r(x)"), &m, &none),
            Err(FoError::UnboundVariable("x".into()))
        );
    }

    #[test]
    fn shadowing() {
        let m = model(&[Top, Bot]);
        let g = f(&m, "forall x. exists x. r(x)");
        assert_eq!(true_fo(&g, &m, &Assignment::new().bind("x", 1)), Ok(Top));
        let h = f(&m, "r(x) & forall x. r(x)");
        assert_eq!(true_fo(&h, &m, &Assignment::new().bind("x", 0)), Ok(Bot));
    }

    #[test]
    fn satisfaction() {
        let m = model(&[Both]);
        assert_eq!(satisfies(&m, &[f(&m, "r(c)")]), Ok(true));
        assert_eq!(satisfies(&m, &[f(&m, "~r(c)")]), Ok(true));
        assert_eq!(satisfies(&m, &[f(&m, "FALSE")]), Ok(false));
        let m = model(&[Top, Bot]);
        assert_eq!(satisfies(&m, &[f(&m, "r(x)")]), Ok(false));
        let bad = Formula::rel("s", vec![]);
        assert_eq!(
            satisfies(&m, &[bad]),
            Err(FoError::UnknownRelation("s".into()))
        );
    }

    #[test]
    fn consistency_of_models() {
        assert!(model_consistent(&model(&[Top, Bot])));
        assert!(!model_consistent(&model(&[Both])));
        assert!(model_consistent(&Model::with_size(1).unwrap()));
    }
}
