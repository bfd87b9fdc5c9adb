//! Executable rationality checks for inconsistency measures.
//!
//! Each check evaluates one postulate on one concrete instance — a rule
//! base, sometimes with an extra literal, element, or companion base — and
//! returns a [`PostulateCheck`] carrying the verdict and the inputs needed
//! to reproduce it. A check never proves a postulate; campaigns (see
//! [`crate::campaign`]) aggregate many instances into "no violation in N
//! instances" evidence.
//!
//! The first six postulates are measure axioms:
//!
//! * rule consistency (RC): the measure is zero exactly when every
//!   consistent subset of the facts keeps the rules consistent;
//! * fact elision (FE): adding the complement of a literal no rule head
//!   mentions does not change the measure;
//! * rule emphasis (RE): making a conflict via a rule is strictly worse
//!   than making it via the rule's head as a fact;
//! * consistency (CO): the measure is zero exactly on consistent bases;
//! * monotony (MO): supersets measure at least as much;
//! * free formula independence (IN): removing a free element changes
//!   nothing.
//!
//! The remaining seven are properties of the Shapley-style attribution
//! built on a measure: distribution, minimality, fact-minimality,
//! rule-involvement, adjusted rule consistency, adjusted free formula
//! independence, and the upper bound (see [`check_shapley_properties`]).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::index::BaseIndex;
use crate::measures::Measure;
use crate::mis::free_formulas;
use crate::model::{Atom, Literal, Rule, RuleBase};
use crate::rational::fraction_string;
use crate::semantics::is_consistent;
use crate::shapley::{adjusted_shapley_vector, shapley_vector};
use crate::Limits;

/// The thirteen checkable postulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Postulate {
    /// RC: zero measure exactly on rule-consistent bases.
    RuleConsistency,
    /// FE: unchanged by adding the complement of a non-head literal.
    FactElision,
    /// RE: a conflict through a rule outweighs one through its head fact.
    RuleEmphasis,
    /// CO: zero measure exactly on consistent bases.
    Consistency,
    /// MO: monotone under base growth.
    Monotony,
    /// IN: unchanged by removing a free element.
    FreeFormulaIndependence,
    /// Classical and adjusted values each sum to the measure.
    Distribution,
    /// Free elements receive zero classical and adjusted value.
    Minimality,
    /// Facts receive zero adjusted value.
    FactMinimality,
    /// Non-free rules receive positive adjusted value, at least the
    /// closed-form lower bound from their containing minimal inconsistent
    /// subsets.
    RuleInvolvement,
    /// The largest adjusted value is zero exactly on rule-consistent bases.
    RuleConsistencyAdjusted,
    /// The largest adjusted value is unchanged by adding a fresh-atom fact.
    FreeFormulaIndependenceAdjusted,
    /// The largest adjusted value never exceeds the measure.
    UpperBound,
}

impl Postulate {
    /// All postulates, measure axioms first.
    pub const ALL: [Postulate; 13] = [
        Postulate::RuleConsistency,
        Postulate::FactElision,
        Postulate::RuleEmphasis,
        Postulate::Consistency,
        Postulate::Monotony,
        Postulate::FreeFormulaIndependence,
        Postulate::Distribution,
        Postulate::Minimality,
        Postulate::FactMinimality,
        Postulate::RuleInvolvement,
        Postulate::RuleConsistencyAdjusted,
        Postulate::FreeFormulaIndependenceAdjusted,
        Postulate::UpperBound,
    ];

    /// The seven properties of the value attribution (as opposed to the
    /// measure axioms).
    pub const VALUE_PROPERTIES: [Postulate; 7] = [
        Postulate::Distribution,
        Postulate::Minimality,
        Postulate::FactMinimality,
        Postulate::RuleInvolvement,
        Postulate::RuleConsistencyAdjusted,
        Postulate::FreeFormulaIndependenceAdjusted,
        Postulate::UpperBound,
    ];

    /// Canonical kebab-case name, used in reports and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Postulate::RuleConsistency => "rule-consistency",
            Postulate::FactElision => "fact-elision",
            Postulate::RuleEmphasis => "rule-emphasis",
            Postulate::Consistency => "consistency",
            Postulate::Monotony => "monotony",
            Postulate::FreeFormulaIndependence => "free-formula-independence",
            Postulate::Distribution => "distribution",
            Postulate::Minimality => "minimality",
            Postulate::FactMinimality => "fact-minimality",
            Postulate::RuleInvolvement => "rule-involvement",
            Postulate::RuleConsistencyAdjusted => "rule-consistency-adjusted",
            Postulate::FreeFormulaIndependenceAdjusted => "free-formula-independence-adjusted",
            Postulate::UpperBound => "upper-bound",
        }
    }

    /// Two-letter code for the six measure axioms.
    pub fn short_code(self) -> Option<&'static str> {
        match self {
            Postulate::RuleConsistency => Some("RC"),
            Postulate::FactElision => Some("FE"),
            Postulate::RuleEmphasis => Some("RE"),
            Postulate::Consistency => Some("CO"),
            Postulate::Monotony => Some("MO"),
            Postulate::FreeFormulaIndependence => Some("IN"),
            _ => None,
        }
    }

    /// Look a postulate up by canonical name or two-letter code,
    /// case-insensitively.
    pub fn from_name(name: &str) -> Result<Postulate, Error> {
        let lowered = name.to_ascii_lowercase();
        for postulate in Postulate::ALL {
            if postulate.name() == lowered {
                return Ok(postulate);
            }
            if let Some(code) = postulate.short_code() {
                if code.eq_ignore_ascii_case(name) {
                    return Ok(postulate);
                }
            }
        }
        Err(Error::UnknownPostulate {
            name: name.to_string(),
            known: Postulate::ALL
                .iter()
                .map(|p| match p.short_code() {
                    Some(code) => format!("{} ({})", p.name(), code),
                    None => p.name().to_string(),
                })
                .collect::<Vec<_>>()
                .join(", "),
        })
    }

    /// Whether this is one of the seven value-attribution properties.
    pub fn is_value_property(self) -> bool {
        Postulate::VALUE_PROPERTIES.contains(&self)
    }
}

impl std::fmt::Display for Postulate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Postulate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Postulate::from_name(s)
    }
}

/// The outcome of one postulate check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The postulate's condition held on this instance.
    Holds,
    /// The condition failed; the check carries the witness.
    Violated,
    /// The postulate's precondition was not met, so the instance says
    /// nothing.
    Inapplicable,
}

impl Verdict {
    /// Lowercase name for reports.
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Inapplicable => "inapplicable",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One postulate evaluated on one concrete instance. Re-running the same
/// check function on the carried inputs reproduces the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateCheck {
    postulate: Postulate,
    measure: Measure,
    verdict: Verdict,
    base: RuleBase,
    alpha: Option<Literal>,
    element: Option<Rule>,
    companion: Option<RuleBase>,
    details: Vec<(String, String)>,
}

impl PostulateCheck {
    fn new(postulate: Postulate, measure: Measure, base: RuleBase) -> Self {
        PostulateCheck {
            postulate,
            measure,
            verdict: Verdict::Holds,
            base,
            alpha: None,
            element: None,
            companion: None,
            details: Vec::new(),
        }
    }

    fn verdict_from(mut self, holds: bool) -> Self {
        self.verdict = if holds {
            Verdict::Holds
        } else {
            Verdict::Violated
        };
        self
    }

    fn inapplicable(mut self, reason: &str) -> Self {
        self.verdict = Verdict::Inapplicable;
        self.details
            .push(("reason".to_string(), reason.to_string()));
        self
    }

    fn with_alpha(mut self, alpha: Literal) -> Self {
        self.alpha = Some(alpha);
        self
    }

    fn with_element(mut self, element: Rule) -> Self {
        self.element = Some(element);
        self
    }

    fn with_companion(mut self, companion: RuleBase) -> Self {
        self.companion = Some(companion);
        self
    }

    fn detail(mut self, label: &str, value: impl ToString) -> Self {
        self.details.push((label.to_string(), value.to_string()));
        self
    }

    /// The postulate that was checked.
    pub fn postulate(&self) -> Postulate {
        self.postulate
    }

    /// The measure the check ran against.
    pub fn measure(&self) -> Measure {
        self.measure
    }

    /// The verdict.
    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    /// The rule base the check ran on.
    pub fn base(&self) -> &RuleBase {
        &self.base
    }

    /// The extra literal input, for fact elision.
    pub fn alpha(&self) -> Option<&Literal> {
        self.alpha.as_ref()
    }

    /// The extra element input: the candidate rule for rule emphasis, the
    /// removed element for free formula independence, or the element a
    /// value-property violation points at.
    pub fn element(&self) -> Option<&Rule> {
        self.element.as_ref()
    }

    /// The companion base: the superset for monotony, or the extension a
    /// check constructed.
    pub fn companion(&self) -> Option<&RuleBase> {
        self.companion.as_ref()
    }

    /// Labeled values explaining the verdict, in evaluation order.
    pub fn details(&self) -> &[(String, String)] {
        &self.details
    }
}

/// RC: `measure(b) = 0` exactly when every consistent fact subset `F'` of
/// `b` keeps `rules(b) ∪ F'` consistent.
pub fn check_rule_consistency(
    measure: Measure,
    base: &RuleBase,
    limits: &Limits,
) -> Result<PostulateCheck, Error> {
    let value = measure.evaluate(base, limits)?;
    let (consistent_side, witness) = rule_consistent(base, limits)?;
    let mut check = PostulateCheck::new(Postulate::RuleConsistency, measure, base.clone())
        .detail("value", fraction_string(&value))
        .detail("rule-consistent", consistent_side);
    if let Some(combination) = witness {
        check = check.with_companion(combination);
    }
    Ok(check.verdict_from(value.is_zero() == consistent_side))
}

/// Whether every consistent fact subset keeps the rules consistent; on
/// failure also returns the inconsistent rules-plus-facts combination.
fn rule_consistent(base: &RuleBase, limits: &Limits) -> Result<(bool, Option<RuleBase>), Error> {
    let idx = BaseIndex::new(base, limits)?;
    let facts = idx.facts_mask();
    let rules = idx.rules_mask();
    // Enumerate all submasks of the fact set, the empty set included.
    let mut subset = facts;
    loop {
        if idx.consistent(subset) && !idx.consistent(rules | subset) {
            return Ok((false, Some(idx.sub_base(rules | subset))));
        }
        if subset == 0 {
            return Ok((true, None));
        }
        subset = (subset - 1) & facts;
    }
}

/// FE: when no rule of `b` has head `alpha`, adding the fact
/// `complement(alpha)` leaves the measure unchanged. Inapplicable when some
/// rule's head is `alpha` (facts with head `alpha` do not block the check).
pub fn check_fact_elision(
    measure: Measure,
    base: &RuleBase,
    alpha: &Literal,
    limits: &Limits,
) -> Result<PostulateCheck, Error> {
    let check = PostulateCheck::new(Postulate::FactElision, measure, base.clone())
        .with_alpha(alpha.clone());
    if base.rules_only().any(|r| r.head() == alpha) {
        return Ok(check.inapplicable("a rule head equals alpha"));
    }
    let extended = base.with_element(Rule::fact(alpha.complement()));
    let before = measure.evaluate(base, limits)?;
    let after = measure.evaluate(&extended, limits)?;
    Ok(check
        .with_companion(extended)
        .detail("value", fraction_string(&before))
        .detail("value-with-complement-fact", fraction_string(&after))
        .verdict_from(before == after))
}

/// RE: for a candidate rule outside `b` that is not free in `b ∪ {rule}`,
/// the extension by the rule measures strictly more than the extension by
/// the rule's head as a fact. Inapplicable for facts, elements of `b`, and
/// free candidates.
pub fn check_rule_emphasis(
    measure: Measure,
    base: &RuleBase,
    rule: &Rule,
    limits: &Limits,
) -> Result<PostulateCheck, Error> {
    let check = PostulateCheck::new(Postulate::RuleEmphasis, measure, base.clone())
        .with_element(rule.clone());
    if rule.is_fact() {
        return Ok(check.inapplicable("candidate is a fact"));
    }
    if base.contains(rule) {
        return Ok(check.inapplicable("candidate already in the base"));
    }
    let with_rule = base.with_element(rule.clone());
    if free_formulas(&with_rule, limits)?.contains(rule) {
        return Ok(check.inapplicable("candidate is free in the extension"));
    }
    let with_fact = base.with_element(Rule::fact(rule.head().clone()));
    let rule_value = measure.evaluate(&with_rule, limits)?;
    let fact_value = measure.evaluate(&with_fact, limits)?;
    Ok(check
        .with_companion(with_rule)
        .detail("value-with-rule", fraction_string(&rule_value))
        .detail("value-with-head-fact", fraction_string(&fact_value))
        .verdict_from(rule_value > fact_value))
}

/// CO: `measure(b) = 0` exactly when `b` is consistent.
pub fn check_consistency(
    measure: Measure,
    base: &RuleBase,
    limits: &Limits,
) -> Result<PostulateCheck, Error> {
    let value = measure.evaluate(base, limits)?;
    let consistent = is_consistent(base);
    Ok(
        PostulateCheck::new(Postulate::Consistency, measure, base.clone())
            .detail("value", fraction_string(&value))
            .detail("consistent", consistent)
            .verdict_from(value.is_zero() == consistent),
    )
}

/// MO: `measure(b) ≤ measure(b')` whenever `b ⊆ b'`. Inapplicable when `b`
/// is not a subset of `b'`.
pub fn check_monotony(
    measure: Measure,
    base: &RuleBase,
    superset: &RuleBase,
    limits: &Limits,
) -> Result<PostulateCheck, Error> {
    let check = PostulateCheck::new(Postulate::Monotony, measure, base.clone())
        .with_companion(superset.clone());
    if !base.is_subset_of(superset) {
        return Ok(check.inapplicable("not a subset"));
    }
    let small = measure.evaluate(base, limits)?;
    let large = measure.evaluate(superset, limits)?;
    Ok(check
        .detail("value", fraction_string(&small))
        .detail("value-of-superset", fraction_string(&large))
        .verdict_from(small <= large))
}

/// IN: removing a free element leaves the measure unchanged. Inapplicable
/// when `element` is not free in `b`.
pub fn check_free_formula_independence(
    measure: Measure,
    base: &RuleBase,
    element: &Rule,
    limits: &Limits,
) -> Result<PostulateCheck, Error> {
    let check = PostulateCheck::new(Postulate::FreeFormulaIndependence, measure, base.clone())
        .with_element(element.clone());
    if !free_formulas(base, limits)?.contains(element) {
        return Ok(check.inapplicable("element is not free"));
    }
    let without = base.without_element(element);
    let before = measure.evaluate(base, limits)?;
    let after = measure.evaluate(&without, limits)?;
    Ok(check
        .with_companion(without)
        .detail("value", fraction_string(&before))
        .detail("value-without-element", fraction_string(&after))
        .verdict_from(before == after))
}

/// Run all seven value-attribution properties on one base, in
/// [`Postulate::VALUE_PROPERTIES`] order.
pub fn check_shapley_properties(
    measure: Measure,
    base: &RuleBase,
    limits: &Limits,
) -> Result<Vec<PostulateCheck>, Error> {
    Postulate::VALUE_PROPERTIES
        .iter()
        .map(|&p| check_shapley_property(p, measure, base, limits))
        .collect()
}

/// Check a single value-attribution property (one of
/// [`Postulate::VALUE_PROPERTIES`]) on one base.
pub fn check_shapley_property(
    postulate: Postulate,
    measure: Measure,
    base: &RuleBase,
    limits: &Limits,
) -> Result<PostulateCheck, Error> {
    if !postulate.is_value_property() {
        return Err(Error::UnknownPostulate {
            name: postulate.name().to_string(),
            known: Postulate::VALUE_PROPERTIES
                .iter()
                .map(|p| p.name())
                .collect::<Vec<_>>()
                .join(", "),
        });
    }
    let check = PostulateCheck::new(postulate, measure, base.clone());
    match postulate {
        Postulate::Distribution => {
            let value = measure.evaluate(base, limits)?;
            let classical = shapley_vector(measure, base, limits)?.total();
            let adjusted = adjusted_shapley_vector(measure, base, limits)?.total();
            Ok(check
                .detail("value", fraction_string(&value))
                .detail("classical-sum", fraction_string(&classical))
                .detail("adjusted-sum", fraction_string(&adjusted))
                .verdict_from(classical == value && adjusted == value))
        }
        Postulate::Minimality => {
            let free = free_formulas(base, limits)?;
            let classical = shapley_vector(measure, base, limits)?;
            let adjusted = adjusted_shapley_vector(measure, base, limits)?;
            let offender = free.iter().find(|f| {
                !classical.value_of(f).is_some_and(BigRational::is_zero)
                    || !adjusted.value_of(f).is_some_and(BigRational::is_zero)
            });
            match offender {
                Some(f) => Ok(check
                    .with_element(f.clone())
                    .detail("free-element-with-nonzero-value", f)
                    .verdict_from(false)),
                None => Ok(check.detail("free-elements", free.len()).verdict_from(true)),
            }
        }
        Postulate::FactMinimality => {
            let adjusted = adjusted_shapley_vector(measure, base, limits)?;
            let offender = adjusted
                .entries()
                .iter()
                .find(|(r, v)| r.is_fact() && !v.is_zero());
            match offender {
                Some((fact, value)) => Ok(check
                    .with_element(fact.clone())
                    .detail("fact-value", fraction_string(value))
                    .verdict_from(false)),
                None => Ok(check.verdict_from(true)),
            }
        }
        Postulate::RuleInvolvement => {
            let rc = check_rule_consistency(measure, base, limits)?;
            if rc.verdict() != Verdict::Holds {
                return Ok(check.inapplicable("measure fails rule consistency on this base"));
            }
            let idx = BaseIndex::new(base, limits)?;
            let mi_masks = idx.minimal_inconsistent_masks();
            let adjusted = adjusted_shapley_vector(measure, base, limits)?;
            for (i, (rule, value)) in adjusted.entries().iter().enumerate() {
                if rule.is_fact() {
                    continue;
                }
                let Some(bound) = involvement_bound(&idx, &mi_masks, i) else {
                    continue; // free rule
                };
                if value.is_zero() || *value < bound {
                    return Ok(check
                        .with_element(rule.clone())
                        .detail("adjusted-value", fraction_string(value))
                        .detail("lower-bound", fraction_string(&bound))
                        .verdict_from(false));
                }
            }
            Ok(check.verdict_from(true))
        }
        Postulate::RuleConsistencyAdjusted => {
            let max = adjusted_shapley_vector(measure, base, limits)?.max_value();
            let (consistent_side, _) = rule_consistent(base, limits)?;
            Ok(check
                .detail("max-adjusted", fraction_string(&max))
                .detail("rule-consistent", consistent_side)
                .verdict_from(max.is_zero() == consistent_side))
        }
        Postulate::FreeFormulaIndependenceAdjusted => {
            if base.len() + 1 > limits.max_elements {
                return Ok(check.inapplicable("extension exceeds the element limit"));
            }
            let fresh = Rule::fact(Literal::positive(fresh_atom(base)));
            let extended = base.with_element(fresh.clone());
            let before = adjusted_shapley_vector(measure, base, limits)?.max_value();
            let after = adjusted_shapley_vector(measure, &extended, limits)?.max_value();
            Ok(check
                .with_element(fresh)
                .with_companion(extended)
                .detail("max-adjusted", fraction_string(&before))
                .detail("max-adjusted-extended", fraction_string(&after))
                .verdict_from(before == after))
        }
        Postulate::UpperBound => {
            let value = measure.evaluate(base, limits)?;
            let max = adjusted_shapley_vector(measure, base, limits)?.max_value();
            Ok(check
                .detail("max-adjusted", fraction_string(&max))
                .detail("value", fraction_string(&value))
                .verdict_from(max <= value))
        }
        _ => unreachable!("guarded by is_value_property"),
    }
}

/// The largest closed-form lower bound on the adjusted value of the rule at
/// `position`, over the minimal inconsistent subsets containing it:
/// `((m−1)!(n−m)!/n!) · (1 + facts(M)/rules(M))` for an `M` of size `m` in a
/// base of size `n`. `None` when no subset contains the rule.
fn involvement_bound(idx: &BaseIndex, mi_masks: &[u64], position: usize) -> Option<BigRational> {
    let bit = 1u64 << position;
    let n = idx.len();
    mi_masks
        .iter()
        .filter(|&&m| m & bit != 0)
        .map(|&m| {
            let size = m.count_ones() as usize;
            let facts = (m & idx.facts_mask()).count_ones();
            let rules = (m & idx.rules_mask()).count_ones();
            let weight = BigRational::new(factorial(size - 1) * factorial(n - size), factorial(n));
            let ratio = BigRational::new(BigInt::from(rules + facts), BigInt::from(rules));
            weight * ratio
        })
        .max()
}

fn factorial(k: usize) -> BigInt {
    (1..=k as u64).map(BigInt::from).product()
}

/// A positive atom not occurring in `base`, named `f0`, `f1`, ….
fn fresh_atom(base: &RuleBase) -> Atom {
    let signature = base.signature();
    (0..)
        .map(|i| Atom::new(format!("f{i}")).expect("generated name is valid"))
        .find(|a| !signature.contains(a))
        .expect("some fresh name is unused")
}
