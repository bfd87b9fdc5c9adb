//! Hand-derived golden values for the remaining worked examples: minimal
//! models, free formulas, and the per-coalition payoff arithmetic behind the
//! adjusted values.

use num_bigint::BigInt;
use num_rational::BigRational;

use ruleblame_core::measures::Measure;
use ruleblame_core::mis::free_formulas;
use ruleblame_core::postulates::{check_shapley_properties, Verdict};
use ruleblame_core::semantics::{is_consistent, minimal_model};
use ruleblame_core::shapley::{
    additional_payoff, adjusted_shapley_vector, coalition_payoff, max_adjusted, shapley_value,
};
use ruleblame_core::{Limits, Literal, Rule, RuleBase};

const FORKED_RULES: &str = "a. a -> b. a -> !b.";
const FACT_RULE_CLASH: &str = "a. !b. a -> b.";
const CONSISTENT_BASE: &str = "a. d. a -> b. a -> c.";
const FORKED_RULES_AND_SHARED_PAIR: &str = "a. !a. a -> b. a -> !b.";
const CREDIT_BASE: &str = "platinumCustomer. mentalCondition. \
                           platinumCustomer -> creditWorthy. \
                           mentalCondition -> !creditWorthy.";
const CUSTOMER_BASE: &str = "customer. mentalCondition. platinumCustomer. \
                             customer -> contractuallyCapable. \
                             mentalCondition -> !contractuallyCapable. \
                             mentalCondition -> !platinumCustomer.";

fn base(text: &str) -> RuleBase {
    RuleBase::parse(text).expect("fixture parses")
}

fn rule(text: &str) -> Rule {
    let parsed = base(text);
    assert_eq!(parsed.len(), 1, "one element expected in {text:?}");
    parsed.elements()[0].clone()
}

fn literal(text: &str) -> Literal {
    rule(&format!("{text}.")).head().clone()
}

fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

#[test]
fn minimal_models_by_forward_chaining() {
    let credit = base(CREDIT_BASE);
    let model = minimal_model(&credit);
    let expected: Vec<Literal> = vec![
        literal("platinumCustomer"),
        literal("mentalCondition"),
        literal("creditWorthy"),
        literal("!creditWorthy"),
    ];
    assert_eq!(model, expected.into_iter().collect());
    assert!(!is_consistent(&credit));

    let forked = base(FORKED_RULES);
    let expected: Vec<Literal> = vec![literal("a"), literal("b"), literal("!b")];
    assert_eq!(minimal_model(&forked), expected.into_iter().collect());
    assert!(!is_consistent(&forked));

    let consistent = base(CONSISTENT_BASE);
    let expected: Vec<Literal> = vec![literal("a"), literal("b"), literal("c"), literal("d")];
    assert_eq!(minimal_model(&consistent), expected.into_iter().collect());
    assert!(is_consistent(&consistent));
}

#[test]
fn consistent_bases_measure_zero_and_are_entirely_free() {
    let limits = Limits::default();
    let b = base(CONSISTENT_BASE);
    for measure in Measure::ALL {
        assert_eq!(
            measure.evaluate(&b, &limits).expect("evaluates"),
            int(0),
            "{}",
            measure.name()
        );
    }
    let free = free_formulas(&b, &limits).expect("free formulas");
    assert_eq!(free, b.elements());
}

#[test]
fn conflicting_bases_have_no_free_elements() {
    let limits = Limits::default();
    for text in [FACT_RULE_CLASH, FORKED_RULES_AND_SHARED_PAIR] {
        let b = base(text);
        assert!(
            free_formulas(&b, &limits)
                .expect("free formulas")
                .is_empty(),
            "{text:?}"
        );
    }
}

#[test]
fn remaining_value_rows() {
    let limits = Limits::default();
    let rows = [
        (FORKED_RULES_AND_SHARED_PAIR, [1, 2, 4, 1, 1, 1, 2, 1]),
        (CREDIT_BASE, [1, 1, 4, 1, 1, 1, 2, 1]),
    ];
    for (text, expected) in rows {
        let b = base(text);
        for (measure, want) in Measure::ALL.into_iter().zip(expected) {
            assert_eq!(
                measure.evaluate(&b, &limits).expect("evaluates"),
                int(want),
                "{} on {text:?}",
                measure.name()
            );
        }
    }
}

#[test]
fn coalition_payoffs_behind_the_shared_pair_vector() {
    let limits = Limits::default();
    let b = base(FORKED_RULES_AND_SHARED_PAIR);
    let a = rule("a.");

    // One three-element coalition contributes (2! 1! / 4!) * 1 = 1/12.
    let coalition = base("a. a -> b. a -> !b.");
    assert_eq!(
        coalition_payoff(Measure::RbDrastic, &b, &a, &coalition, &limits).expect("payoff"),
        rat(1, 12)
    );

    // The full coalition contributes (3! 0! / 4!) * 1 = 1/4.
    assert_eq!(
        coalition_payoff(Measure::RbDrastic, &b, &a, &b, &limits).expect("payoff"),
        rat(1, 4)
    );

    // Summed over all coalitions the fact ends up with 1/3.
    assert_eq!(
        shapley_value(Measure::RbDrastic, &b, &a, &limits).expect("value"),
        rat(1, 3)
    );

    // After redistribution the two rules carry 1/2 each and the facts
    // nothing; the total still matches the measure value 1.
    let adjusted = adjusted_shapley_vector(Measure::RbDrastic, &b, &limits).expect("vector");
    assert_eq!(adjusted.value_of(&rule("a -> b.")), Some(&rat(1, 2)));
    assert_eq!(adjusted.value_of(&rule("a -> !b.")), Some(&rat(1, 2)));
    assert_eq!(adjusted.value_of(&a), Some(&int(0)));
    assert_eq!(adjusted.value_of(&rule("!a.")), Some(&int(0)));
    assert_eq!(adjusted.total(), int(1));
}

#[test]
fn redistributed_fact_shares() {
    let limits = Limits::default();

    // In the clash base the lone rule receives the entire fact share of the
    // full coalition: 2/3 on top of its own 1/3.
    let clash = base(FACT_RULE_CLASH);
    assert_eq!(
        additional_payoff(
            Measure::RbDrastic,
            &clash,
            &rule("a -> b."),
            &clash,
            &limits
        )
        .expect("payoff"),
        rat(2, 3)
    );
    assert_eq!(
        max_adjusted(Measure::RbDrastic, &clash, &limits).expect("max"),
        int(1)
    );

    // In the forked base the same full-coalition share splits over two
    // rules: 1/6 each.
    let forked = base(FORKED_RULES);
    assert_eq!(
        additional_payoff(
            Measure::RbDrastic,
            &forked,
            &rule("a -> b."),
            &forked,
            &limits
        )
        .expect("payoff"),
        rat(1, 6)
    );
}

#[test]
fn value_properties_hold_on_the_customer_base() {
    let limits = Limits::default();
    let b = base(CUSTOMER_BASE);
    for measure in Measure::ALL.into_iter().filter(|m| m.is_rule_based()) {
        for check in check_shapley_properties(measure, &b, &limits).expect("checks") {
            assert_eq!(
                check.verdict(),
                Verdict::Holds,
                "{} x {}",
                measure.name(),
                check.postulate().name()
            );
        }
    }
}

#[test]
fn involvement_bound_of_the_platinum_rule() {
    // The platinum rule sits in a three-element conflict of the six-element
    // customer base together with two facts: the closed-form lower bound is
    // (2! 3! / 6!) * (1 + 2/1) = 1/20, and the adjusted value clears it.
    let limits = Limits::default();
    let b = base(CUSTOMER_BASE);
    let bound = rat(1, 20);
    for measure in Measure::ALL.into_iter().filter(|m| m.is_rule_based()) {
        let adjusted = adjusted_shapley_vector(measure, &b, &limits).expect("vector");
        let value = adjusted
            .value_of(&rule("mentalCondition -> !platinumCustomer."))
            .expect("element")
            .clone();
        assert!(value >= bound, "{}: {value} < 1/20", measure.name());
    }
}
