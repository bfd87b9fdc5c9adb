//! Shapley-style culpability attribution.
//!
//! An inconsistency measure turns every coalition (subset) of a rule base
//! into a payoff; the Shapley value of an element is its average marginal
//! contribution over all coalitions. For rule bases there is a refinement:
//! facts never carry blame on their own — a fact can only participate in a
//! conflict that some rule creates — so each fact's payoff share inside a
//! coalition is redistributed evenly over the coalition's non-free rules.
//! The result is the *adjusted* value: zero for every fact, and for a rule
//! the sum of its own coalition payoffs plus the redistributed fact payoffs.
//!
//! All values are exact rationals. Evaluating a vector sweeps the full
//! 2^n coalition lattice once, memoizing measure values by coalition bitmask.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::index::{iter_mask, mask_of_len, BaseIndex};
use crate::measures::{evaluate_indexed, Measure};
use crate::model::{Rule, RuleBase};
use crate::Limits;

/// Exact per-element values in canonical element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapleyVector {
    entries: Vec<(Rule, BigRational)>,
}

impl ShapleyVector {
    /// The (element, value) pairs in canonical element order.
    pub fn entries(&self) -> &[(Rule, BigRational)] {
        &self.entries
    }

    /// The values alone, in canonical element order.
    pub fn values(&self) -> impl Iterator<Item = &BigRational> {
        self.entries.iter().map(|(_, v)| v)
    }

    /// The value attributed to `rule`, if it is an element.
    pub fn value_of(&self, rule: &Rule) -> Option<&BigRational> {
        self.entries.iter().find(|(r, _)| r == rule).map(|(_, v)| v)
    }

    /// Sum of all entries.
    pub fn total(&self) -> BigRational {
        self.entries.iter().map(|(_, v)| v).sum()
    }

    /// The largest value, or 0 for the empty base.
    pub fn max_value(&self) -> BigRational {
        self.entries
            .iter()
            .map(|(_, v)| v.clone())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Elements ranked by non-increasing adjusted value; ties broken by
/// canonical element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CulpabilityRanking {
    entries: Vec<(Rule, BigRational)>,
}

impl CulpabilityRanking {
    /// The (element, value) pairs, most culpable first.
    pub fn entries(&self) -> &[(Rule, BigRational)] {
        &self.entries
    }
}

/// The weighted marginal contribution of `element` within one `coalition`:
/// `(|C|-1)! (n-|C|)! / n! * (I(C) - I(C \ {element}))`, and 0 for the empty
/// coalition or when `element` is not in the coalition's span of `base`.
///
/// `coalition` must be a subset of `base` containing `element`.
pub fn coalition_payoff(
    measure: Measure,
    base: &RuleBase,
    element: &Rule,
    coalition: &RuleBase,
    limits: &Limits,
) -> Result<BigRational, Error> {
    let mut engine = Engine::new(measure, base, limits)?;
    let coalition_mask = engine.mask_of(coalition)?;
    let element_bit = engine.bit_of(element)?;
    if coalition_mask & element_bit == 0 {
        return Err(Error::ElementNotInBase {
            element: element.to_string(),
        });
    }
    engine.coalition_payoff(coalition_mask, element_bit)
}

/// The redistributed fact payoff `rule` receives within `coalition`: the sum
/// of the coalition payoffs of the coalition's facts, divided evenly over the
/// coalition's non-free rules; 0 when `rule` is outside the coalition or free
/// in it (by convention the fact payoffs sum to 0 whenever no rule could
/// receive them).
pub fn additional_payoff(
    measure: Measure,
    base: &RuleBase,
    rule: &Rule,
    coalition: &RuleBase,
    limits: &Limits,
) -> Result<BigRational, Error> {
    if rule.is_fact() {
        return Err(Error::NotARule {
            element: rule.to_string(),
        });
    }
    let mut engine = Engine::new(measure, base, limits)?;
    let coalition_mask = engine.mask_of(coalition)?;
    let rule_bit = engine.bit_of(rule)?;
    engine.additional_payoff(coalition_mask, rule_bit)
}

/// The Shapley value of `element` under `measure`: the sum of its coalition
/// payoffs over all coalitions of `base`.
pub fn shapley_value(
    measure: Measure,
    base: &RuleBase,
    element: &Rule,
    limits: &Limits,
) -> Result<BigRational, Error> {
    let vector = shapley_vector(measure, base, limits)?;
    lookup(base, &vector, element)
}

/// The Shapley values of every element, in canonical order. The entries sum
/// to the measure of the full base.
pub fn shapley_vector(
    measure: Measure,
    base: &RuleBase,
    limits: &Limits,
) -> Result<ShapleyVector, Error> {
    Engine::new(measure, base, limits)?.classical_vector()
}

/// The adjusted Shapley value of `element`: 0 for facts; for rules, the sum
/// over all coalitions of the coalition payoff plus the redistributed fact
/// payoff.
pub fn adjusted_shapley_value(
    measure: Measure,
    base: &RuleBase,
    element: &Rule,
    limits: &Limits,
) -> Result<BigRational, Error> {
    let vector = adjusted_shapley_vector(measure, base, limits)?;
    lookup(base, &vector, element)
}

/// The adjusted Shapley values of every element, in canonical order.
pub fn adjusted_shapley_vector(
    measure: Measure,
    base: &RuleBase,
    limits: &Limits,
) -> Result<ShapleyVector, Error> {
    Engine::new(measure, base, limits)?.adjusted_vector()
}

/// The largest adjusted Shapley value; 0 for the empty base.
pub fn max_adjusted(
    measure: Measure,
    base: &RuleBase,
    limits: &Limits,
) -> Result<BigRational, Error> {
    Ok(adjusted_shapley_vector(measure, base, limits)?.max_value())
}

/// Every element ranked by non-increasing adjusted Shapley value, ties broken
/// by canonical element order.
pub fn culpability_ranking(
    measure: Measure,
    base: &RuleBase,
    limits: &Limits,
) -> Result<CulpabilityRanking, Error> {
    let vector = adjusted_shapley_vector(measure, base, limits)?;
    let mut entries = vector.entries;
    entries.sort_by(|(_, a), (_, b)| b.cmp(a));
    Ok(CulpabilityRanking { entries })
}

fn lookup(base: &RuleBase, vector: &ShapleyVector, element: &Rule) -> Result<BigRational, Error> {
    let _ = base;
    vector
        .value_of(element)
        .cloned()
        .ok_or_else(|| Error::ElementNotInBase {
            element: element.to_string(),
        })
}

/// One coalition sweep: base index, measure memo, and factorial table.
struct Engine<'a> {
    idx: BaseIndex,
    measure: Measure,
    limits: &'a Limits,
    mi_masks: Vec<u64>,
    /// Measure values by coalition mask.
    memo: HashMap<u64, BigRational>,
    /// factorials[k] = k!
    factorials: Vec<BigInt>,
}

impl<'a> Engine<'a> {
    fn new(measure: Measure, base: &RuleBase, limits: &'a Limits) -> Result<Self, Error> {
        let idx = BaseIndex::new(base, limits)?;
        let mi_masks = idx.minimal_inconsistent_masks();
        let n = idx.len();
        let mut factorials = Vec::with_capacity(n + 1);
        factorials.push(BigInt::from(1));
        for k in 1..=n {
            let next = &factorials[k - 1] * BigInt::from(k as u64);
            factorials.push(next);
        }
        Ok(Engine {
            idx,
            measure,
            limits,
            mi_masks,
            memo: HashMap::new(),
            factorials,
        })
    }

    fn mask_of(&self, coalition: &RuleBase) -> Result<u64, Error> {
        let mut mask = 0u64;
        for rule in coalition.elements() {
            mask |= self.bit_of(rule)?;
        }
        Ok(mask)
    }

    fn bit_of(&self, element: &Rule) -> Result<u64, Error> {
        self.idx
            .elements()
            .binary_search(element)
            .map(|i| 1u64 << i)
            .map_err(|_| Error::ElementNotInBase {
                element: element.to_string(),
            })
    }

    /// `(b-1)! (n-b)! / n!` for a coalition of size `b`.
    fn weight(&self, coalition_size: u32) -> BigRational {
        let n = self.idx.len();
        let b = coalition_size as usize;
        BigRational::new(
            &self.factorials[b - 1] * &self.factorials[n - b],
            self.factorials[n].clone(),
        )
    }

    /// Measure value of the coalition `mask`, memoized.
    fn value(&mut self, mask: u64) -> Result<BigRational, Error> {
        if let Some(v) = self.memo.get(&mask) {
            return Ok(v.clone());
        }
        let sub = self.idx.sub_base(mask);
        let sub_idx = BaseIndex::new(&sub, self.limits)?;
        let v = evaluate_indexed(self.measure, &sub_idx, self.limits)?;
        self.memo.insert(mask, v.clone());
        Ok(v)
    }

    fn coalition_payoff(&mut self, coalition: u64, element_bit: u64) -> Result<BigRational, Error> {
        if coalition == 0 || coalition & element_bit == 0 {
            return Ok(BigRational::zero());
        }
        let marginal = self.value(coalition)? - self.value(coalition & !element_bit)?;
        if marginal.is_zero() {
            return Ok(BigRational::zero());
        }
        Ok(self.weight(coalition.count_ones()) * marginal)
    }

    /// Mask of the coalition's elements that occur in one of its minimal
    /// inconsistent subsets. Minimal inconsistent subsets of a sub-base are
    /// exactly the full-base ones it contains.
    fn non_free_mask(&self, coalition: u64) -> u64 {
        self.mi_masks
            .iter()
            .filter(|&&m| m & coalition == m)
            .fold(0, |acc, &m| acc | m)
    }

    fn additional_payoff(&mut self, coalition: u64, rule_bit: u64) -> Result<BigRational, Error> {
        if coalition & rule_bit == 0 {
            return Ok(BigRational::zero());
        }
        let receivers = self.non_free_mask(coalition) & self.idx.rules_mask();
        if receivers & rule_bit == 0 {
            return Ok(BigRational::zero());
        }
        let mut fact_sum = BigRational::zero();
        let facts = coalition & self.idx.facts_mask();
        for i in iter_mask(facts) {
            fact_sum += self.coalition_payoff(coalition, 1 << i)?;
        }
        Ok(fact_sum / BigRational::from_integer(BigInt::from(receivers.count_ones())))
    }

    fn classical_vector(mut self) -> Result<ShapleyVector, Error> {
        let n = self.idx.len();
        let mut values = vec![BigRational::zero(); n];
        for coalition in 1..=mask_of_len(n) {
            let coalition_value = self.value(coalition)?;
            if coalition_value.is_zero() {
                // Monotone measures give zero marginals inside zero-valued
                // coalitions; skipping them keeps the sweep cheap.
                continue;
            }
            let weight = self.weight(coalition.count_ones());
            for i in iter_mask(coalition) {
                let marginal = coalition_value.clone() - self.value(coalition & !(1 << i))?;
                if !marginal.is_zero() {
                    values[i] += &weight * marginal;
                }
            }
        }
        Ok(self.into_vector(values))
    }

    fn adjusted_vector(mut self) -> Result<ShapleyVector, Error> {
        let n = self.idx.len();
        let rules_mask = self.idx.rules_mask();
        let facts_mask = self.idx.facts_mask();
        let mut values = vec![BigRational::zero(); n];
        for coalition in 1..=mask_of_len(n) {
            let coalition_value = self.value(coalition)?;
            if coalition_value.is_zero() {
                continue;
            }
            let weight = self.weight(coalition.count_ones());
            let mut fact_sum = BigRational::zero();
            for i in iter_mask(coalition & facts_mask) {
                let marginal = coalition_value.clone() - self.value(coalition & !(1 << i))?;
                if !marginal.is_zero() {
                    fact_sum += &weight * marginal;
                }
            }
            for i in iter_mask(coalition & rules_mask) {
                let marginal = coalition_value.clone() - self.value(coalition & !(1 << i))?;
                if !marginal.is_zero() {
                    values[i] += &weight * marginal;
                }
            }
            if !fact_sum.is_zero() {
                let receivers = self.non_free_mask(coalition) & rules_mask;
                if receivers != 0 {
                    let share =
                        fact_sum / BigRational::from_integer(BigInt::from(receivers.count_ones()));
                    for i in iter_mask(receivers) {
                        values[i] += &share;
                    }
                }
            }
        }
        Ok(self.into_vector(values))
    }

    fn into_vector(self, values: Vec<BigRational>) -> ShapleyVector {
        ShapleyVector {
            entries: self.idx.elements().iter().cloned().zip(values).collect(),
        }
    }
}
