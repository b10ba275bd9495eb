//! Exhaustive enumeration of finite models and bounded countermodel search.

use serde::{Deserialize, Serialize};

use super::{check_formula, satisfies_formula, FoError, Model};
use crate::syntax::{Formula, Signature};
use crate::truth::TruthValue;

pub const DEFAULT_MODEL_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelBudget {
    pub max_models: u128,
}

impl Default for ModelBudget {
    fn default() -> Self {
        ModelBudget {
            max_models: DEFAULT_MODEL_BUDGET,
        }
    }
}

impl ModelBudget {
    pub fn unlimited() -> Self {
        ModelBudget {
            max_models: u128::MAX,
        }
    }

    fn check(&self, count: u128) -> Result<(), FoError> {
        if count > self.max_models {
            Err(FoError::BudgetExceeded {
                count,
                budget: self.max_models,
            })
        } else {
            Ok(())
        }
    }
}

/// `k^|constants| * 3^(sum of k^arity)`, saturating at `u128::MAX`.
pub fn model_count(sig: &Signature, k: usize) -> u128 {
    let k = k as u128;
    let mut count: u128 = 1;
    for _ in sig.constants() {
        count = count.saturating_mul(k);
    }
    for (_, arity) in sig.relations() {
        let cells = k.checked_pow(arity as u32).unwrap_or(u128::MAX);
        let tables = u32::try_from(cells)
            .ok()
            .and_then(|c| 3u128.checked_pow(c))
            .unwrap_or(u128::MAX);
        count = count.saturating_mul(tables);
    }
    count
}

/// Iterator over every model of a signature on the domain `e1..ek`.
///
/// Models are produced in odometer order: constants (by name) vary
/// slowest, then relation cells (by relation name, then tuple order), each
/// cell running through `T`, `P`, `F`.
pub struct Models {
    template: Model,
    constants: Vec<String>,
    digits: Vec<usize>,
    radices: Vec<usize>,
    done: bool,
}

pub fn enumerate_models(
    sig: &Signature,
    k: usize,
    budget: &ModelBudget,
) -> Result<Models, FoError> {
    if k == 0 {
        return Err(FoError::ZeroSize);
    }
    budget.check(model_count(sig, k))?;
    let mut template = Model::with_size(k)?;
    let constants: Vec<String> = sig.constants().map(String::from).collect();
    for c in &constants {
        template.set_constant(c, "e1")?;
    }
    let mut radices = vec![k; constants.len()];
    for (r, arity) in sig.relations() {
        template.add_relation(r, arity, TruthValue::Top)?;
        radices.extend(std::iter::repeat(3).take(k.pow(arity as u32)));
    }
    Ok(Models {
        template,
        constants,
        digits: vec![0; radices.len()],
        radices,
        done: false,
    })
}

impl Iterator for Models {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        if self.done {
            return None;
        }
        let mut m = self.template.clone();
        let (const_digits, cell_digits) = self.digits.split_at(self.constants.len());
        for (c, &d) in self.constants.iter().zip(const_digits) {
            m.set_constant_element(c, d);
        }
        let mut cells = cell_digits.iter();
        for rel in m.relations_mut() {
            for cell in rel.cells_mut() {
                *cell = TruthValue::ALL[*cells.next().expect("one digit per cell")];
            }
        }
        // Advance, last digit fastest.
        self.done = true;
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                self.done = false;
                break;
            }
            self.digits[i] = 0;
        }
        Some(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum BoundedVerdict {
    Countermodel {
        model: Model,
    },
    /// No countermodel with at most `max_size` elements. This is not a
    /// proof of entailment.
    NoCounterexampleUpTo {
        max_size: usize,
    },
}

/// Searches domain sizes `1..=max_size` for a model satisfying every
/// premise but not the conclusion.
pub fn entails_bounded(
    premises: &[Formula],
    conclusion: &Formula,
    sig: &Signature,
    max_size: usize,
    budget: &ModelBudget,
) -> Result<BoundedVerdict, FoError> {
    if max_size == 0 {
        return Err(FoError::ZeroSize);
    }
    for f in premises.iter().chain([conclusion]) {
        check_formula(f, sig)?;
    }
    let total = (1..=max_size)
        .map(|k| model_count(sig, k))
        .fold(0u128, u128::saturating_add);
    budget.check(total)?;
    for k in 1..=max_size {
        'models: for m in enumerate_models(sig, k, &ModelBudget::unlimited())? {
            for p in premises {
                if !satisfies_formula(&m, p)? {
                    continue 'models;
                }
            }
            if !satisfies_formula(&m, conclusion)? {
                return Ok(BoundedVerdict::Countermodel { model: m });
            }
        }
    }
    Ok(BoundedVerdict::NoCounterexampleUpTo { max_size })
}
