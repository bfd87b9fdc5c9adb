//! Classical and three-valued semantics for rule bases.
//!
//! Classically, a rule base derives literals by forward chaining from its
//! facts; the least fixpoint is the *minimal model*, and the base is
//! *consistent* exactly when that model contains no complementary pair.
//!
//! The paraconsistent side uses three truth values ordered
//! `False < Both < True`. A rule `l1, ..., lm -> l0` evaluates to
//! `max(neg(v(l1)), ..., neg(v(lm)), v(l0))` — the value of the material
//! disjunction `!l1 | ... | !lm | l0` — and is satisfied when that value is
//! designated (`True` or `Both`). A fact evaluates to its head's value.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Error;
use crate::model::{Atom, Literal, Rule, RuleBase};

/// A set of literals, e.g. a model.
pub type LiteralSet = BTreeSet<Literal>;

/// True when `set` contains no atom together with its negation.
pub fn literals_consistent(set: &LiteralSet) -> bool {
    set.iter()
        .filter(|l| l.is_positive())
        .all(|l| !set.contains(&l.complement()))
}

/// The least set of literals closed under the rules of `base`: it contains
/// every fact head, and the head of every rule whose body it contains.
pub fn minimal_model(base: &RuleBase) -> LiteralSet {
    let mut model = LiteralSet::new();
    let mut changed = true;
    while changed {
        changed = false;
        for rule in base.elements() {
            if !model.contains(rule.head()) && rule.body().iter().all(|l| model.contains(l)) {
                model.insert(rule.head().clone());
                changed = true;
            }
        }
    }
    model
}

/// True when the minimal model of `base` contains no complementary pair.
pub fn is_consistent(base: &RuleBase) -> bool {
    literals_consistent(&minimal_model(base))
}

/// A truth value of the three-valued semantics. The derived order is the
/// truth order `False < Both < True`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    False,
    Both,
    True,
}

impl TruthValue {
    /// Three-valued negation: swaps `True` and `False`, fixes `Both`.
    pub fn negate(self) -> TruthValue {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::Both => TruthValue::Both,
            TruthValue::False => TruthValue::True,
        }
    }

    /// True for the designated values `True` and `Both`.
    pub fn is_designated(self) -> bool {
        matches!(self, TruthValue::True | TruthValue::Both)
    }
}

/// A total assignment of truth values to a signature's atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    values: BTreeMap<Atom, TruthValue>,
}

impl Interpretation {
    /// Wraps an explicit assignment.
    pub fn new(values: BTreeMap<Atom, TruthValue>) -> Self {
        Interpretation { values }
    }

    /// Assigns `value` to every atom of `signature`.
    pub fn constant(signature: impl IntoIterator<Item = Atom>, value: TruthValue) -> Self {
        Interpretation {
            values: signature.into_iter().map(|a| (a, value)).collect(),
        }
    }

    /// The assignment as a map.
    pub fn values(&self) -> &BTreeMap<Atom, TruthValue> {
        &self.values
    }

    /// The atoms assigned `Both`.
    pub fn conflicting_atoms(&self) -> impl Iterator<Item = &Atom> {
        self.values
            .iter()
            .filter(|(_, v)| **v == TruthValue::Both)
            .map(|(a, _)| a)
    }

    /// The value of an atom; errors if the atom is outside the signature.
    pub fn atom_value(&self, atom: &Atom) -> Result<TruthValue, Error> {
        self.values
            .get(atom)
            .copied()
            .ok_or_else(|| Error::UnknownAtom {
                name: atom.name().to_string(),
            })
    }

    /// The value of a literal (negation applied for negative literals).
    pub fn literal_value(&self, literal: &Literal) -> Result<TruthValue, Error> {
        let v = self.atom_value(literal.atom())?;
        Ok(if literal.is_positive() { v } else { v.negate() })
    }

    /// Evaluates a rule as the disjunction of its negated body literals and
    /// its head; a fact evaluates to its head's value.
    pub fn evaluate(&self, rule: &Rule) -> Result<TruthValue, Error> {
        let mut value = self.literal_value(rule.head())?;
        for lit in rule.body() {
            value = value.max(self.literal_value(lit)?.negate());
        }
        Ok(value)
    }

    /// True when the rule evaluates to a designated value.
    pub fn satisfies(&self, rule: &Rule) -> Result<bool, Error> {
        Ok(self.evaluate(rule)?.is_designated())
    }

    /// True when every given rule is satisfied.
    pub fn satisfies_all<'a>(
        &self,
        rules: impl IntoIterator<Item = &'a Rule>,
    ) -> Result<bool, Error> {
        for rule in rules {
            if !self.satisfies(rule)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(text: &str) -> RuleBase {
        RuleBase::parse(text).unwrap()
    }

    fn lits(names: &[&str]) -> LiteralSet {
        names.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn minimal_model_chains_forward() {
        let b = base(
            "platinumCustomer. mentalCondition. \
             platinumCustomer -> creditWorthy. mentalCondition -> !creditWorthy.",
        );
        assert_eq!(
            minimal_model(&b),
            lits(&[
                "platinumCustomer",
                "mentalCondition",
                "creditWorthy",
                "!creditWorthy"
            ])
        );
        assert!(!is_consistent(&b));
    }

    #[test]
    fn minimal_model_ignores_unfired_rules() {
        let b = base("a. d. a -> b. a -> c. x, y -> z.");
        assert_eq!(minimal_model(&b), lits(&["a", "b", "c", "d"]));
        assert!(is_consistent(&b));
    }

    #[test]
    fn empty_base_is_consistent() {
        assert!(minimal_model(&RuleBase::empty()).is_empty());
        assert!(is_consistent(&RuleBase::empty()));
    }

    #[test]
    fn multi_literal_bodies_need_every_literal() {
        let b = base("a. a, b -> c.");
        assert_eq!(minimal_model(&b), lits(&["a"]));
        let b = base("a. b. a, b -> c.");
        assert_eq!(minimal_model(&b), lits(&["a", "b", "c"]));
    }

    #[test]
    fn negative_literals_chain_too() {
        let b = base("!a. !a -> b.");
        assert_eq!(minimal_model(&b), lits(&["!a", "b"]));
    }

    fn interp(pairs: &[(&str, TruthValue)]) -> Interpretation {
        Interpretation::new(
            pairs
                .iter()
                .map(|(name, v)| (Atom::new(*name).unwrap(), *v))
                .collect(),
        )
    }

    #[test]
    fn rule_evaluation_matches_the_truth_table() {
        use TruthValue::*;
        let rule: Rule = "a -> b".parse().unwrap();
        let cases = [
            ((True, True), True),
            ((True, False), False),
            ((True, Both), Both),
            ((False, False), True),
            ((Both, False), Both),
            ((Both, Both), Both),
            ((False, Both), True),
        ];
        for ((va, vb), expected) in cases {
            let i = interp(&[("a", va), ("b", vb)]);
            assert_eq!(i.evaluate(&rule).unwrap(), expected, "a={va:?} b={vb:?}");
        }
    }

    #[test]
    fn conflicting_value_satisfies_complementary_rules() {
        use TruthValue::*;
        let b = base("a. a -> b. a -> !b.");
        let i = interp(&[("a", True), ("b", Both)]);
        assert!(i.satisfies_all(b.elements()).unwrap());
        assert_eq!(i.conflicting_atoms().count(), 1);

        let classical = interp(&[("a", True), ("b", True)]);
        assert!(!classical.satisfies_all(b.elements()).unwrap());
    }

    #[test]
    fn unknown_atoms_are_reported() {
        let i = interp(&[("a", TruthValue::True)]);
        let rule: Rule = "a -> b".parse().unwrap();
        assert!(matches!(
            i.evaluate(&rule),
            Err(Error::UnknownAtom { name }) if name == "b"
        ));
    }

    #[test]
    fn literal_consistency_detects_pairs() {
        assert!(literals_consistent(&lits(&["a", "b", "!c"])));
        assert!(!literals_consistent(&lits(&["a", "!a"])));
        assert!(literals_consistent(&LiteralSet::new()));
    }
}
