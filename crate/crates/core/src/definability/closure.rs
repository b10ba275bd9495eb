//! Closure of a connective basis at a fixed arity.
//!
//! Starting from the projections and the constant functions named by the
//! basis, connectives are applied pointwise until no new function appears.
//! The search runs in layers of witness size, so every function keeps a
//! smallest defining formula. Ties within a size go to the first
//! derivation in (connective position, left child rank, right child rank)
//! order, where a rank is the discovery position of an earlier witness.

use std::collections::HashMap;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::{default_atoms, DefinabilityError, TruthFunction};
use crate::syntax::Formula;
use crate::truth::{StatusOp, TruthValue};

/// Largest arity handled; 3^4 table entries fit one `u128` mask.
const MAX_ARITY: usize = 4;

/// A connective usable as a closure generator. Every connective here has
/// arity at most two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connective {
    Constant(TruthValue),
    Not,
    And,
    Or,
    WeakImp,
    WeakIff,
    StrongImp,
    StrongIff,
    Status(StatusOp),
}

impl Connective {
    pub fn arity(self) -> usize {
        match self {
            Connective::Constant(_) => 0,
            Connective::Not | Connective::Status(_) => 1,
            _ => 2,
        }
    }

    pub fn apply(self, args: &[TruthValue]) -> TruthValue {
        match (self, args) {
            (Connective::Constant(v), []) => v,
            (Connective::Not, [a]) => a.neg(),
            (Connective::Status(op), [a]) => a.status(op),
            (Connective::And, [a, b]) => a.conj(*b),
            (Connective::Or, [a, b]) => a.disj(*b),
            (Connective::WeakImp, [a, b]) => a.weak_imp(*b),
            (Connective::WeakIff, [a, b]) => a.weak_iff(*b),
            (Connective::StrongImp, [a, b]) => a.strong_imp(*b),
            (Connective::StrongIff, [a, b]) => a.strong_iff(*b),
            _ => panic!("{self:?} applied to {} arguments", args.len()),
        }
    }

    pub fn truth_function(self) -> TruthFunction {
        TruthFunction::from_fn(self.arity(), |args| self.apply(args))
    }

    fn is_commutative(self) -> bool {
        matches!(
            self,
            Connective::And | Connective::Or | Connective::WeakIff | Connective::StrongIff
        )
    }

    fn build(self, mut args: Vec<Formula>) -> Formula {
        let b = args.pop();
        let a = args.pop();
        match (self, a, b) {
            (Connective::Constant(v), None, None) => Formula::Const(v),
            (Connective::Not, None, Some(a)) => Formula::not(a),
            (Connective::Status(op), None, Some(a)) => Formula::status(a, op),
            (Connective::And, Some(a), Some(b)) => Formula::and(a, b),
            (Connective::Or, Some(a), Some(b)) => Formula::or(a, b),
            (Connective::WeakImp, Some(a), Some(b)) => Formula::weak_imp(a, b),
            (Connective::WeakIff, Some(a), Some(b)) => Formula::weak_iff(a, b),
            (Connective::StrongImp, Some(a), Some(b)) => Formula::strong_imp(a, b),
            (Connective::StrongIff, Some(a), Some(b)) => Formula::strong_iff(a, b),
            _ => unreachable!("arity checked by caller"),
        }
    }

    fn apply_packed(self, a: Packed, b: Packed, mask: u128) -> Packed {
        match self {
            Connective::Constant(v) => Packed::constant(v, mask),
            Connective::Not => a.neg(mask),
            Connective::Status(op) => {
                let bits = match op {
                    StatusOp::IsTop => a.top,
                    StatusOp::IsBoth => a.ge & !a.top,
                    StatusOp::IsBot => !a.ge & mask,
                    StatusOp::NotFalse => a.ge,
                    StatusOp::Consistent => (!a.ge | a.top) & mask,
                };
                Packed {
                    ge: bits,
                    top: bits,
                }
            }
            Connective::And => a.and(b),
            Connective::Or => a.or(b),
            Connective::WeakImp => a.neg(mask).or(b),
            Connective::WeakIff => a.neg(mask).or(b).and(b.neg(mask).or(a)),
            Connective::StrongImp => {
                let ok = (!a.top | b.top) & (!a.ge | b.ge) & mask;
                Packed { ge: ok, top: ok }
            }
            Connective::StrongIff => {
                let ok = !(a.top ^ b.top) & !(a.ge ^ b.ge) & mask;
                Packed { ge: ok, top: ok }
            }
        }
    }
}

/// A named set of generating connectives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectiveBasis {
    name: String,
    connectives: Vec<Connective>,
}

impl ConnectiveBasis {
    pub fn new(name: &str, connectives: Vec<Connective>) -> Result<Self, DefinabilityError> {
        if connectives.is_empty() {
            return Err(DefinabilityError::EmptyBasis);
        }
        Ok(ConnectiveBasis {
            name: name.into(),
            connectives,
        })
    }

    /// `~`, `&`, `|` and the three logical constants.
    pub fn lp() -> Self {
        ConnectiveBasis {
            name: "lp".into(),
            connectives: vec![
                Connective::Not,
                Connective::And,
                Connective::Or,
                Connective::Constant(TruthValue::Top),
                Connective::Constant(TruthValue::Both),
                Connective::Constant(TruthValue::Bot),
            ],
        }
    }

    /// The LP basis plus strong implication.
    pub fn lps() -> Self {
        let mut basis = Self::lp();
        basis.name = "lps".into();
        basis.connectives.push(Connective::StrongImp);
        basis
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn connectives(&self) -> &[Connective] {
        &self.connectives
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Definable {
    pub function: TruthFunction,
    pub witness: Formula,
}

/// The functions of one arity definable from a basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Closure {
    pub basis: String,
    pub arity: usize,
    /// Sorted by table, comparing entries in the order `T < P < F`.
    pub members: Vec<Definable>,
}

impl Closure {
    /// True when every function of this arity is definable.
    pub fn is_complete(&self) -> bool {
        let entries = 3u32.pow(self.arity as u32);
        3u128
            .checked_pow(entries)
            .is_some_and(|all| all == self.members.len() as u128)
    }

    pub fn contains(&self, f: &TruthFunction) -> bool {
        self.members.iter().any(|m| &m.function == f)
    }

    pub fn functions(&self) -> impl Iterator<Item = &TruthFunction> {
        self.members.iter().map(|m| &m.function)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Abort once this many functions have been found.
    pub max_members: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            max_members: 1_000_000,
        }
    }
}

pub fn closure(basis: &ConnectiveBasis, arity: usize) -> Result<Closure, DefinabilityError> {
    closure_with(basis, arity, &ClosureOptions::default())
}

// Bit i of `ge` is set when entry i is at least `P`; bit i of `top` when it
// is `T`. Min and max become bitwise and/or.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Packed {
    ge: u128,
    top: u128,
}

impl Packed {
    fn constant(v: TruthValue, mask: u128) -> Packed {
        match v {
            TruthValue::Top => Packed {
                ge: mask,
                top: mask,
            },
            TruthValue::Both => Packed { ge: mask, top: 0 },
            TruthValue::Bot => Packed { ge: 0, top: 0 },
        }
    }

    fn from_function(f: &TruthFunction) -> Packed {
        let mut p = Packed { ge: 0, top: 0 };
        for (i, v) in f.table().iter().enumerate() {
            if *v >= TruthValue::Both {
                p.ge |= 1 << i;
            }
            if *v == TruthValue::Top {
                p.top |= 1 << i;
            }
        }
        p
    }

    fn to_function(self, len: usize) -> TruthFunction {
        let table = (0..len)
            .map(|i| match ((self.ge >> i) & 1, (self.top >> i) & 1) {
                (1, 1) => TruthValue::Top,
                (1, 0) => TruthValue::Both,
                _ => TruthValue::Bot,
            })
            .collect();
        TruthFunction::new(table).expect("length is a power of 3")
    }

    fn neg(self, mask: u128) -> Packed {
        Packed {
            ge: !self.top & mask,
            top: !self.ge & mask,
        }
    }

    fn and(self, other: Packed) -> Packed {
        Packed {
            ge: self.ge & other.ge,
            top: self.top & other.top,
        }
    }

    fn or(self, other: Packed) -> Packed {
        Packed {
            ge: self.ge | other.ge,
            top: self.top | other.top,
        }
    }
}

enum Seen {
    // Indexed by `ge | top << len`; used while 2 * len <= 18.
    Dense { len: usize, slots: Vec<bool> },
    Sparse(HashMap<Packed, ()>),
}

impl Seen {
    fn new(len: usize) -> Seen {
        if 2 * len <= 18 {
            Seen::Dense {
                len,
                slots: vec![false; 1 << (2 * len)],
            }
        } else {
            Seen::Sparse(HashMap::new())
        }
    }

    /// Marks `p` as seen; returns whether it is new.
    fn insert(&mut self, p: Packed) -> bool {
        match self {
            Seen::Dense { len, slots } => {
                let key = (p.ge | (p.top << *len)) as usize;
                !std::mem::replace(&mut slots[key], true)
            }
            Seen::Sparse(map) => map.insert(p, ()).is_none(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Derivation {
    Projection(usize),
    Apply(Connective, u32, u32),
}

struct Search {
    packed: Vec<Packed>,
    derivations: Vec<Derivation>,
    layers: Vec<Range<usize>>,
    seen: Seen,
    mask: u128,
    target: Option<u128>,
    max_members: usize,
}

enum Step {
    Continue,
    Saturated,
}

impl Search {
    fn add(&mut self, p: Packed, d: Derivation) -> Result<Step, DefinabilityError> {
        if self.seen.insert(p) {
            if self.packed.len() >= self.max_members {
                return Err(DefinabilityError::TooLarge {
                    limit: self.max_members,
                });
            }
            self.packed.push(p);
            self.derivations.push(d);
            if self.target == Some(self.packed.len() as u128) {
                return Ok(Step::Saturated);
            }
        }
        Ok(Step::Continue)
    }

    fn witness(&self, id: usize, atoms: &[String]) -> Formula {
        match self.derivations[id] {
            Derivation::Projection(i) => Formula::atom(&atoms[i]),
            Derivation::Apply(c, a, b) => {
                let args = match c.arity() {
                    0 => vec![],
                    1 => vec![self.witness(a as usize, atoms)],
                    _ => vec![
                        self.witness(a as usize, atoms),
                        self.witness(b as usize, atoms),
                    ],
                };
                c.build(args)
            }
        }
    }

    // Runs layers until saturation or until no larger witness can appear.
    fn run(&mut self, basis: &ConnectiveBasis, arity: usize) -> Result<(), DefinabilityError> {
        for i in 0..arity {
            let p = Packed::from_function(&TruthFunction::projection(arity, i));
            if let Step::Saturated = self.add(p, Derivation::Projection(i))? {
                return Ok(());
            }
        }
        for &c in basis.connectives() {
            if let Connective::Constant(v) = c {
                let p = Packed::constant(v, self.mask);
                if let Step::Saturated = self.add(p, Derivation::Apply(c, 0, 0))? {
                    return Ok(());
                }
            }
        }
        self.layers.push(0..0);
        self.layers.push(0..self.packed.len());
        let mut largest_nonempty = 1;
        let mut size = 2;
        while size <= 2 * largest_nonempty + 1 {
            let start = self.packed.len();
            if let Step::Saturated = self.layer(basis, size)? {
                return Ok(());
            }
            self.layers.push(start..self.packed.len());
            if self.packed.len() > start {
                largest_nonempty = size;
            }
            size += 1;
        }
        Ok(())
    }

    fn layer(&mut self, basis: &ConnectiveBasis, size: usize) -> Result<Step, DefinabilityError> {
        let mask = self.mask;
        for &c in basis.connectives() {
            match c.arity() {
                0 => {}
                1 => {
                    for id in self.layers[size - 1].clone() {
                        let p = c.apply_packed(self.packed[id], self.packed[id], mask);
                        if let Step::Saturated = self.add(p, Derivation::Apply(c, id as u32, 0))? {
                            return Ok(Step::Saturated);
                        }
                    }
                }
                _ => {
                    for left_size in 1..size - 1 {
                        let right = self.layers[size - 1 - left_size].clone();
                        for l in self.layers[left_size].clone() {
                            let a = self.packed[l];
                            let from = if c.is_commutative() {
                                right.start.max(l)
                            } else {
                                right.start
                            };
                            for r in from..right.end {
                                let p = c.apply_packed(a, self.packed[r], mask);
                                let d = Derivation::Apply(c, l as u32, r as u32);
                                if let Step::Saturated = self.add(p, d)? {
                                    return Ok(Step::Saturated);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(Step::Continue)
    }
}

pub fn closure_with(
    basis: &ConnectiveBasis,
    arity: usize,
    options: &ClosureOptions,
) -> Result<Closure, DefinabilityError> {
    if arity == 0 || arity > MAX_ARITY {
        return Err(DefinabilityError::UnsupportedArity {
            found: arity,
            max: MAX_ARITY,
        });
    }
    let len = 3usize.pow(arity as u32);
    let mask = if len == 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    };
    let mut search = Search {
        packed: Vec::new(),
        derivations: Vec::new(),
        layers: Vec::new(),
        seen: Seen::new(len),
        mask,
        target: 3u128.checked_pow(len as u32),
        max_members: options.max_members,
    };
    search.run(basis, arity)?;

    let atoms = default_atoms(arity);
    let mut members: Vec<Definable> = (0..search.packed.len())
        .map(|id| Definable {
            function: search.packed[id].to_function(len),
            witness: search.witness(id, &atoms),
        })
        .collect();
    members.sort_by_cached_key(|m| {
        m.function
            .table()
            .iter()
            .map(|v| v.index() as u8)
            .collect::<Vec<_>>()
    });
    Ok(Closure {
        basis: basis.name().to_string(),
        arity,
        members,
    })
}
