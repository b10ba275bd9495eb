use super::{default_atoms, input_tuples, TruthFunction};
use crate::syntax::Formula;

/// A formula defining `f` over [`default_atoms`] of its arity.
///
/// For every input tuple `(v1..vn)` with `u = f(v1..vn)` there is one
/// disjunct `(p1 <=> v1) & .. & (pn <=> vn) & u`; the disjunct is `u` when
/// the arity is zero. All `3^n` disjuncts are kept, including those with
/// `u = FALSE`, and joined left-associatively with `|`.
pub fn synthesize(f: &TruthFunction) -> Formula {
    let atoms = default_atoms(f.arity());
    input_tuples(f.arity())
        .zip(f.table())
        .map(|(args, &u)| {
            let selector = atoms
                .iter()
                .zip(args)
                .map(|(p, v)| Formula::strong_iff(Formula::atom(p), Formula::Const(v)))
                .reduce(Formula::and);
            match selector {
                Some(s) => Formula::and(s, Formula::Const(u)),
                None => Formula::Const(u),
            }
        })
        .reduce(Formula::or)
        .expect("3^n >= 1 disjuncts")
}
