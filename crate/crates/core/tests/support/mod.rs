//! Generators and independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use lps_core::syntax::{Formula, Term};
use lps_core::{StatusOp, TruthValue};
use proptest::prelude::*;

/// Test settings without on-disk failure persistence.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Truth values as the integers 0 (false), 1 (paradoxical), 2 (true).
pub fn num(v: TruthValue) -> u8 {
    match v {
        TruthValue::Bot => 0,
        TruthValue::Both => 1,
        TruthValue::Top => 2,
    }
}

pub fn from_num(n: u8) -> TruthValue {
    [TruthValue::Bot, TruthValue::Both, TruthValue::Top][n as usize]
}

/// Status tables read off the published operator tables, indexed by
/// `num(p)`.
pub fn status_table(op: StatusOp) -> [u8; 3] {
    match op {
        StatusOp::IsTop => [0, 0, 2],
        StatusOp::IsBoth => [0, 2, 0],
        StatusOp::IsBot => [2, 0, 0],
        StatusOp::NotFalse => [0, 2, 2],
        StatusOp::Consistent => [2, 0, 2],
    }
}

/// Propositional evaluation on the integer encoding.
pub fn oracle_prop(f: &Formula, v: &BTreeMap<String, u8>) -> u8 {
    let e = |g: &Formula| oracle_prop(g, v);
    match f {
        Formula::Const(c) => num(*c),
        Formula::Rel(p, args) if args.is_empty() => v[p],
        Formula::Not(a) => 2 - e(a),
        Formula::And(a, b) => e(a).min(e(b)),
        Formula::Or(a, b) => e(a).max(e(b)),
        Formula::WeakImp(a, b) => (2 - e(a)).max(e(b)),
        Formula::WeakIff(a, b) => {
            let (x, y) = (e(a), e(b));
            (2 - x).max(y).min((2 - y).max(x))
        }
        Formula::StrongImp(a, b) => {
            if e(a) <= e(b) {
                2
            } else {
                0
            }
        }
        Formula::StrongIff(a, b) => {
            if e(a) == e(b) {
                2
            } else {
                0
            }
        }
        Formula::Status(a, op) => status_table(*op)[e(a) as usize],
        other => panic!("not propositional: {other}"),
    }
}

/// Two-valued evaluation of the classical connectives.
pub fn oracle_classical(f: &Formula, v: &BTreeMap<String, bool>) -> bool {
    let e = |g: &Formula| oracle_classical(g, v);
    match f {
        Formula::Const(TruthValue::Top) => true,
        Formula::Const(TruthValue::Bot) => false,
        Formula::Rel(p, args) if args.is_empty() => v[p],
        Formula::Not(a) => !e(a),
        Formula::And(a, b) => e(a) && e(b),
        Formula::Or(a, b) => e(a) || e(b),
        Formula::WeakImp(a, b) => !e(a) || e(b),
        Formula::WeakIff(a, b) => e(a) == e(b),
        other => panic!("not classical: {other}"),
    }
}

/// All maps from `atoms` to `0..radix`.
pub fn all_maps(atoms: &[String], radix: u8) -> Vec<BTreeMap<String, u8>> {
    let mut out = vec![BTreeMap::new()];
    for a in atoms {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..radix).map(move |n| {
                    let mut m = m.clone();
                    m.insert(a.clone(), n);
                    m
                })
            })
            .collect();
    }
    out
}

pub fn atom(name: &str) -> Formula {
    Formula::atom(name)
}

fn boxed2(
    inner: BoxedStrategy<Formula>,
    make: fn(Formula, Formula) -> Formula,
) -> BoxedStrategy<Formula> {
    (inner.clone(), inner)
        .prop_map(move |(a, b)| make(a, b))
        .boxed()
}

/// Propositional formulas over `atoms` using every connective, status
/// operator and constant. `levels` bounds the nesting below the leaves.
pub fn arb_prop(atoms: &'static [&'static str], levels: u32) -> BoxedStrategy<Formula> {
    let leaf = prop_oneof![
        4 => proptest::sample::select(atoms).prop_map(atom),
        1 => proptest::sample::select(TruthValue::ALL.to_vec()).prop_map(Formula::Const),
    ];
    leaf.prop_recursive(levels, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (
                inner.clone(),
                proptest::sample::select(StatusOp::ALL.to_vec())
            )
                .prop_map(|(a, op)| Formula::status(a, op)),
            boxed2(inner.clone(), Formula::and),
            boxed2(inner.clone(), Formula::or),
            boxed2(inner.clone(), Formula::weak_imp),
            boxed2(inner.clone(), Formula::weak_iff),
            boxed2(inner.clone(), Formula::strong_imp),
            boxed2(inner, Formula::strong_iff),
        ]
    })
    .boxed()
}

/// Classical formulas over `~ & | -> <->` and up to four atoms.
pub fn arb_classical(levels: u32) -> BoxedStrategy<Formula> {
    let leaf = proptest::sample::select(&["p", "q", "r", "s"][..]).prop_map(atom);
    leaf.prop_recursive(levels, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            boxed2(inner.clone(), Formula::and),
            boxed2(inner.clone(), Formula::or),
            boxed2(inner.clone(), Formula::weak_imp),
            boxed2(inner, Formula::weak_iff),
        ]
    })
    .boxed()
}

pub const VARS: [&str; 3] = ["x", "y", "z"];
pub const CONSTS: [&str; 2] = ["a", "b"];

fn arb_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        3 => proptest::sample::select(&VARS[..]).prop_map(Term::var),
        1 => proptest::sample::select(&CONSTS[..]).prop_map(Term::constant),
    ]
}

/// First-order formulas over nullary `p`, `q`, unary `r`, binary `s`,
/// equality, constants `a`, `b` and variables `x`, `y`, `z`, with truth
/// value constants drawn from `values`.
pub fn arb_fo(levels: u32, values: &[TruthValue]) -> BoxedStrategy<Formula> {
    let leaf = prop_oneof![
        proptest::sample::select(&["p", "q"][..]).prop_map(atom),
        proptest::sample::select(values.to_vec()).prop_map(Formula::Const),
        arb_term().prop_map(|t| Formula::rel("r", vec![t])),
        (arb_term(), arb_term()).prop_map(|(t, u)| Formula::rel("s", vec![t, u])),
        (arb_term(), arb_term()).prop_map(|(t, u)| Formula::eq(t, u)),
    ];
    leaf.prop_recursive(levels, 96, 2, |inner| {
        let var = || proptest::sample::select(&VARS[..]);
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (
                inner.clone(),
                proptest::sample::select(StatusOp::ALL.to_vec())
            )
                .prop_map(|(a, op)| Formula::status(a, op)),
            boxed2(inner.clone(), Formula::and),
            boxed2(inner.clone(), Formula::or),
            boxed2(inner.clone(), Formula::weak_imp),
            boxed2(inner.clone(), Formula::weak_iff),
            boxed2(inner.clone(), Formula::strong_imp),
            boxed2(inner.clone(), Formula::strong_iff),
            (var(), inner.clone()).prop_map(|(x, a)| Formula::forall(x, a)),
            (var(), inner).prop_map(|(x, a)| Formula::exists(x, a)),
        ]
    })
    .boxed()
}

/// Every formula of depth at most `depth` (atoms have depth 1) built from
/// `atoms`, the unary constructors and the binary constructors.
pub fn formulas_up_to(
    depth: usize,
    atoms: &[Formula],
    unary: &[fn(Formula) -> Formula],
    binary: &[fn(Formula, Formula) -> Formula],
) -> Vec<Vec<Formula>> {
    // layers[d] holds the formulas of depth exactly d + 1.
    let mut layers: Vec<Vec<Formula>> = vec![atoms.to_vec()];
    while layers.len() < depth {
        let next = next_layer(&layers, unary, binary, |f| f);
        layers.push(next);
    }
    layers
}

/// Formulas of depth exactly `layers.len() + 1`, passed to `visit` one at a
/// time and collected from its return values.
pub fn next_layer<T>(
    layers: &[Vec<Formula>],
    unary: &[fn(Formula) -> Formula],
    binary: &[fn(Formula, Formula) -> Formula],
    mut visit: impl FnMut(Formula) -> T,
) -> Vec<T> {
    let top = layers.last().expect("at least one layer");
    let below: Vec<&Formula> = layers[..layers.len() - 1].iter().flatten().collect();
    let mut out = Vec::new();
    for u in unary {
        for a in top {
            out.push(visit(u(a.clone())));
        }
    }
    for b in binary {
        for x in top {
            for y in top {
                out.push(visit(b(x.clone(), y.clone())));
            }
            for &y in &below {
                out.push(visit(b(x.clone(), y.clone())));
                out.push(visit(b(y.clone(), x.clone())));
            }
        }
    }
    out
}
