//! Signatures, terms and formulas, with a concrete ASCII grammar.
//!
//! The primitive basis is `Const`, `Rel`, `Eq`, `Not`, `And`, `StrongImp`
//! and `Forall`; every other node is derived and can be removed with
//! [`desugar`].

mod desugar;
mod parser;
mod printer;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::truth::{StatusOp, TruthValue};

pub use desugar::{desugar, expand_status, is_primitive};
pub use parser::{parse_formula, parse_formula_inferring, ParseError, Position};

/// Constant and relation symbols. There are no function symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    constants: BTreeSet<String>,
    relations: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("symbol `{0}` is declared both as a constant and as a relation")]
    KindClash(String),
    #[error("relation `{name}` declared with arity {first} and {second}")]
    ArityClash {
        name: String,
        first: usize,
        second: usize,
    },
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_constant(mut self, name: &str) -> Result<Self, SignatureError> {
        self.add_constant(name)?;
        Ok(self)
    }

    pub fn with_relation(mut self, name: &str, arity: usize) -> Result<Self, SignatureError> {
        self.add_relation(name, arity)?;
        Ok(self)
    }

    pub fn add_constant(&mut self, name: &str) -> Result<(), SignatureError> {
        if self.relations.contains_key(name) {
            return Err(SignatureError::KindClash(name.into()));
        }
        self.constants.insert(name.into());
        Ok(())
    }

    pub fn add_relation(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if self.constants.contains(name) {
            return Err(SignatureError::KindClash(name.into()));
        }
        match self.relations.get(name) {
            Some(&first) if first != arity => Err(SignatureError::ArityClash {
                name: name.into(),
                first,
                second: arity,
            }),
            _ => {
                self.relations.insert(name.into(), arity);
                Ok(())
            }
        }
    }

    /// Union of two signatures; fails on clashing declarations.
    pub fn merge(&mut self, other: &Signature) -> Result<(), SignatureError> {
        for c in &other.constants {
            self.add_constant(c)?;
        }
        for (r, &n) in &other.relations {
            self.add_relation(r, n)?;
        }
        Ok(())
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.contains(name)
    }

    pub fn arity(&self, relation: &str) -> Option<usize> {
        self.relations.get(relation).copied()
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.constants.iter().map(String::as_str)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, usize)> {
        self.relations.iter().map(|(r, &n)| (r.as_str(), n))
    }

    pub fn is_empty(&self) -> bool {
        self.constants.is_empty() && self.relations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }
}

/// A formula of first-order LP with strong implication.
///
/// Propositional atoms are nullary relations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Const(TruthValue),
    Rel(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    StrongImp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    // Derived forms.
    Or(Box<Formula>, Box<Formula>),
    WeakImp(Box<Formula>, Box<Formula>),
    WeakIff(Box<Formula>, Box<Formula>),
    StrongIff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Status(Box<Formula>, StatusOp),
}

#[allow(clippy::should_implement_trait)]
impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Rel(name.into(), Vec::new())
    }

    pub fn rel(name: &str, args: Vec<Term>) -> Formula {
        Formula::Rel(name.into(), args)
    }

    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        Formula::Eq(lhs, rhs)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn weak_imp(a: Formula, b: Formula) -> Formula {
        Formula::WeakImp(Box::new(a), Box::new(b))
    }

    pub fn weak_iff(a: Formula, b: Formula) -> Formula {
        Formula::WeakIff(Box::new(a), Box::new(b))
    }

    pub fn strong_imp(a: Formula, b: Formula) -> Formula {
        Formula::StrongImp(Box::new(a), Box::new(b))
    }

    pub fn strong_iff(a: Formula, b: Formula) -> Formula {
        Formula::StrongIff(Box::new(a), Box::new(b))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn status(f: Formula, op: StatusOp) -> Formula {
        Formula::Status(Box::new(f), op)
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Const(_) | Formula::Rel(..) | Formula::Eq(..) => Vec::new(),
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => vec![a],
            Formula::Status(a, _) => vec![a],
            Formula::And(a, b)
            | Formula::StrongImp(a, b)
            | Formula::Or(a, b)
            | Formula::WeakImp(a, b)
            | Formula::WeakIff(a, b)
            | Formula::StrongIff(a, b) => vec![a, b],
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::size)
            .sum::<usize>()
    }

    /// Height of the AST; atoms have depth 1.
    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::depth)
            .max()
            .unwrap_or(0)
    }

    /// Pre-order iterator over all subformulas including `self`.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            stack.extend(f.children().into_iter().rev());
        }
        out
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.subformulas()
            .iter()
            .all(|f| !matches!(f, Formula::Forall(..) | Formula::Exists(..)))
    }

    pub fn mentions_constant(&self, v: TruthValue) -> bool {
        self.subformulas()
            .iter()
            .any(|f| matches!(f, Formula::Const(c) if *c == v))
    }

    /// Variables occurring free.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        collect_free(self, &mut Vec::new(), &mut out);
        out
    }

    /// Names of nullary relations, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        self.subformulas()
            .into_iter()
            .filter_map(|f| match f {
                Formula::Rel(name, args) if args.is_empty() => Some(name.clone()),
                _ => None,
            })
            .collect()
    }

    /// The smallest signature this formula is well-formed in, treating
    /// every `Term::Const` as a declared constant.
    pub fn signature(&self) -> Result<Signature, SignatureError> {
        let mut sig = Signature::new();
        for f in self.subformulas() {
            let terms: &[Term] = match f {
                Formula::Rel(name, args) => {
                    sig.add_relation(name, args.len())?;
                    args
                }
                Formula::Eq(a, b) => {
                    for t in [a, b] {
                        if let Term::Const(c) = t {
                            sig.add_constant(c)?;
                        }
                    }
                    continue;
                }
                _ => continue,
            };
            for t in terms {
                if let Term::Const(c) = t {
                    sig.add_constant(c)?;
                }
            }
        }
        Ok(sig)
    }

    /// Capture-avoiding substitution of terms for free variables.
    pub fn substitute(&self, map: &BTreeMap<String, Term>) -> Formula {
        let sub_term = |t: &Term, map: &BTreeMap<String, Term>| match t {
            Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::Const(_) => t.clone(),
        };
        match self {
            Formula::Const(_) => self.clone(),
            Formula::Rel(r, args) => {
                Formula::Rel(r.clone(), args.iter().map(|t| sub_term(t, map)).collect())
            }
            Formula::Eq(a, b) => Formula::Eq(sub_term(a, map), sub_term(b, map)),
            Formula::Not(a) => Formula::not(a.substitute(map)),
            Formula::Status(a, op) => Formula::status(a.substitute(map), *op),
            Formula::And(a, b) => Formula::and(a.substitute(map), b.substitute(map)),
            Formula::Or(a, b) => Formula::or(a.substitute(map), b.substitute(map)),
            Formula::WeakImp(a, b) => Formula::weak_imp(a.substitute(map), b.substitute(map)),
            Formula::WeakIff(a, b) => Formula::weak_iff(a.substitute(map), b.substitute(map)),
            Formula::StrongImp(a, b) => Formula::strong_imp(a.substitute(map), b.substitute(map)),
            Formula::StrongIff(a, b) => Formula::strong_iff(a.substitute(map), b.substitute(map)),
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let mut inner = map.clone();
                inner.remove(x);
                let body_free = body.free_vars();
                inner.retain(|v, _| body_free.contains(v));
                let captured = inner.values().any(|t| matches!(t, Term::Var(v) if v == x));
                let (var, body) = if captured {
                    let mut avoid: BTreeSet<String> = body_free;
                    avoid.extend(body.bound_vars());
                    for t in inner.values() {
                        avoid.insert(t.name().to_string());
                    }
                    let fresh = fresh_name(x, &avoid);
                    inner.insert(x.clone(), Term::Var(fresh.clone()));
                    (fresh, body.substitute(&inner))
                } else {
                    (x.clone(), body.substitute(&inner))
                };
                match self {
                    Formula::Forall(..) => Formula::forall(&var, body),
                    _ => Formula::exists(&var, body),
                }
            }
        }
    }

    fn bound_vars(&self) -> BTreeSet<String> {
        self.subformulas()
            .into_iter()
            .filter_map(|f| match f {
                Formula::Forall(x, _) | Formula::Exists(x, _) => Some(x.clone()),
                _ => None,
            })
            .collect()
    }
}

impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Deserializes the concrete syntax, inferring relations; every term is a
/// variable.
impl<'de> serde::Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(deserializer)?;
        parse_formula_inferring(&s, &mut Signature::new()).map_err(serde::de::Error::custom)
    }
}

/// `base` primed with trailing underscores until it avoids `taken`.
pub(crate) fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    let mut name = format!("{base}_");
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

fn collect_free(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    let mut note = |t: &Term, bound: &Vec<String>| {
        if let Term::Var(v) = t {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        }
    };
    match f {
        Formula::Const(_) => {}
        Formula::Rel(_, args) => args.iter().for_each(|t| note(t, bound)),
        Formula::Eq(a, b) => {
            note(a, bound);
            note(b, bound);
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            bound.push(x.clone());
            collect_free(body, bound, out);
            bound.pop();
        }
        _ => {
            for c in f.children() {
                collect_free(c, bound, out);
            }
        }
    }
}
