use super::Formula;
use crate::truth::{StatusOp, TruthValue};

/// Rewrites every derived node into the primitive basis
/// `Const, Rel, Eq, Not, And, StrongImp, Forall`.
///
/// `a | b` becomes `~(~a & ~b)`, `a -> b` is `~a | b` desugared,
/// `a <-> b` is `(a -> b) & (b -> a)` desugared, `a <=> b` becomes
/// `(a => b) & (b => a)`, `exists x. a` becomes `~forall x. ~a`, and each
/// status operator is replaced by its strong-implication definition.
pub fn desugar(f: &Formula) -> Formula {
    match f {
        Formula::Const(_) | Formula::Rel(..) | Formula::Eq(..) => f.clone(),
        Formula::Not(a) => Formula::not(desugar(a)),
        Formula::And(a, b) => Formula::and(desugar(a), desugar(b)),
        Formula::StrongImp(a, b) => Formula::strong_imp(desugar(a), desugar(b)),
        Formula::Forall(x, a) => Formula::forall(x, desugar(a)),
        Formula::Or(a, b) => or(desugar(a), desugar(b)),
        Formula::WeakImp(a, b) => weak_imp(desugar(a), desugar(b)),
        Formula::WeakIff(a, b) => {
            let (a, b) = (desugar(a), desugar(b));
            Formula::and(weak_imp(a.clone(), b.clone()), weak_imp(b, a))
        }
        Formula::StrongIff(a, b) => strong_iff(desugar(a), desugar(b)),
        Formula::Exists(x, a) => Formula::not(Formula::forall(x, Formula::not(desugar(a)))),
        Formula::Status(a, op) => expand_status(desugar(a), *op),
    }
}

fn or(a: Formula, b: Formula) -> Formula {
    Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
}

fn weak_imp(a: Formula, b: Formula) -> Formula {
    or(Formula::not(a), b)
}

fn strong_iff(a: Formula, b: Formula) -> Formula {
    Formula::and(
        Formula::strong_imp(a.clone(), b.clone()),
        Formula::strong_imp(b, a),
    )
}

/// The defining formula of `p^op`, with `p` left as given.
pub fn expand_status(p: Formula, op: StatusOp) -> Formula {
    let top = || Formula::Const(TruthValue::Top);
    let both = || Formula::Const(TruthValue::Both);
    match op {
        StatusOp::IsTop => Formula::strong_imp(top(), p),
        StatusOp::IsBoth => strong_iff(p, both()),
        StatusOp::IsBot => Formula::strong_imp(p, Formula::Const(TruthValue::Bot)),
        StatusOp::NotFalse => Formula::strong_imp(both(), p),
        StatusOp::Consistent => Formula::strong_imp(p.clone(), Formula::strong_imp(top(), p)),
    }
}

/// True when no derived node occurs anywhere in `f`.
pub fn is_primitive(f: &Formula) -> bool {
    f.subformulas().iter().all(|g| {
        matches!(
            g,
            Formula::Const(_)
                | Formula::Rel(..)
                | Formula::Eq(..)
                | Formula::Not(_)
                | Formula::And(..)
                | Formula::StrongImp(..)
                | Formula::Forall(..)
        )
    })
}
