//! Randomized invariants: parsing round-trips, canonical ordering, minimal
//! inconsistent subset structure, measure bounds, attribution sums, and
//! generator determinism.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use ruleblame_core::generate::{generate, GeneratorConfig};
use ruleblame_core::measures::Measure;
use ruleblame_core::mis::{
    free_formulas, is_pure_fact_set, minimal_inconsistent_subsets,
    minimal_inconsistent_subsets_without_facts,
};
use ruleblame_core::semantics::is_consistent;
use ruleblame_core::shapley::{adjusted_shapley_vector, shapley_vector};
use ruleblame_core::{Atom, Limits, Literal, Rule, RuleBase};

const ATOM_POOL: [&str; 6] = ["alpha", "b2", "c", "delta_4", "e", "f_"];

fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// A base drawn through the seeded generator; every shape below is feasible.
fn generated_base() -> impl Strategy<Value = RuleBase> {
    (
        any::<u64>(),
        2usize..=5,
        0usize..=3,
        0usize..=4,
        1usize..=2,
        0u32..=4,
    )
        .prop_filter_map(
            "degenerate shapes (e.g. more facts than drawable literals) abort",
            |(seed, atoms, facts, rules, max_body, negation_num)| {
                generate(&GeneratorConfig {
                    seed,
                    atoms,
                    facts,
                    rules,
                    max_body,
                    negation_num,
                    negation_den: 4,
                })
                .ok()
            },
        )
}

fn literal_strategy() -> impl Strategy<Value = Literal> {
    (0usize..ATOM_POOL.len(), any::<bool>()).prop_map(|(index, positive)| {
        Literal::new(Atom::new(ATOM_POOL[index]).expect("valid atom"), positive)
    })
}

fn rule_strategy() -> impl Strategy<Value = Rule> {
    (
        proptest::collection::vec(literal_strategy(), 0..3),
        literal_strategy(),
    )
        .prop_map(|(body, head)| Rule::new(body, head))
}

/// A base assembled directly from random rules, duplicates included.
fn handmade_base() -> impl Strategy<Value = RuleBase> {
    proptest::collection::vec(rule_strategy(), 0..8).prop_map(RuleBase::new)
}

proptest! {
    #[test]
    fn generated_bases_round_trip(base in generated_base()) {
        let text = base.to_text();
        prop_assert_eq!(RuleBase::parse(&text).expect("round trip"), base);
    }

    #[test]
    fn handmade_bases_round_trip(base in handmade_base()) {
        let text = base.to_text();
        prop_assert_eq!(RuleBase::parse(&text).expect("round trip"), base);
    }

    #[test]
    fn rules_round_trip_through_display(rule in rule_strategy()) {
        let reparsed = RuleBase::parse(&rule.to_string()).expect("round trip");
        prop_assert_eq!(reparsed.elements(), &[rule]);
    }

    #[test]
    fn canonical_order_is_sorted_facts_first(base in handmade_base()) {
        let elements = base.elements();
        prop_assert!(elements.windows(2).all(|w| w[0] < w[1]), "strictly ascending");
        let first_rule = elements.iter().position(|e| !e.is_fact());
        if let Some(split) = first_rule {
            prop_assert!(elements[split..].iter().all(|e| !e.is_fact()));
        }
        let reshuffled = RuleBase::new(elements.iter().rev().cloned());
        prop_assert_eq!(reshuffled, base.clone());
    }

    #[test]
    fn minimal_inconsistent_subsets_are_minimal(base in handmade_base()) {
        let limits = Limits::default();
        let family = minimal_inconsistent_subsets(&base, &limits).expect("family");
        for member in family.members() {
            prop_assert!(member.is_subset_of(&base));
            prop_assert!(!is_consistent(member), "members are inconsistent");
            for element in member.elements() {
                prop_assert!(
                    is_consistent(&member.without_element(element)),
                    "proper subsets are consistent"
                );
            }
        }
        for (i, left) in family.members().iter().enumerate() {
            for (j, right) in family.members().iter().enumerate() {
                if i != j {
                    prop_assert!(!left.is_subset_of(right), "members are incomparable");
                }
            }
        }

        let filtered = minimal_inconsistent_subsets_without_facts(&base, &limits)
            .expect("filtered family");
        let expected: Vec<&RuleBase> = family
            .members()
            .iter()
            .filter(|m| !is_pure_fact_set(m))
            .collect();
        prop_assert_eq!(filtered.members().iter().collect::<Vec<_>>(), expected);

        let free = free_formulas(&base, &limits).expect("free formulas");
        let involved: BTreeSet<&Rule> = family
            .members()
            .iter()
            .flat_map(|m| m.elements())
            .collect();
        for element in base.elements() {
            prop_assert_eq!(
                free.contains(element),
                !involved.contains(element),
                "free means untouched by every conflict"
            );
        }
    }

    #[test]
    fn measure_bounds_and_dominance(base in generated_base()) {
        let limits = Limits::default();
        let value = |m: Measure| m.evaluate(&base, &limits).expect("evaluates");

        for measure in Measure::ALL {
            prop_assert!(value(measure) >= int(0), "{} is non-negative", measure.name());
        }
        for measure in [Measure::Drastic, Measure::RbDrastic] {
            let v = value(measure);
            prop_assert!(v == int(0) || v == int(1), "{} is binary", measure.name());
        }
        prop_assert_eq!(value(Measure::Drastic) == int(0), is_consistent(&base));

        let pairs = [
            (Measure::RbDrastic, Measure::Drastic),
            (Measure::RbMiCount, Measure::MiCount),
            (Measure::RbProblematic, Measure::Problematic),
            (Measure::RbContension, Measure::Contension),
        ];
        for (rb, classical) in pairs {
            prop_assert!(
                value(rb) <= value(classical),
                "{} never exceeds {}",
                rb.name(),
                classical.name()
            );
        }

        let family = minimal_inconsistent_subsets(&base, &limits).expect("family");
        prop_assert_eq!(value(Measure::MiCount), int(family.len() as i64));
        prop_assert_eq!(value(Measure::Problematic), int(family.union().len() as i64));
    }

    #[test]
    fn attribution_sums_to_the_measure(base in generated_base()) {
        let limits = Limits::default();
        let free = free_formulas(&base, &limits).expect("free formulas");
        for measure in Measure::ALL.into_iter().filter(|m| m.is_rule_based()) {
            let value = measure.evaluate(&base, &limits).expect("evaluates");
            let classical = shapley_vector(measure, &base, &limits).expect("vector");
            let adjusted = adjusted_shapley_vector(measure, &base, &limits).expect("vector");

            prop_assert_eq!(classical.total(), value.clone());
            prop_assert_eq!(adjusted.total(), value);

            for (element, entry) in adjusted.entries() {
                prop_assert!(entry >= &int(0), "adjusted values are non-negative");
                if element.is_fact() {
                    prop_assert!(entry.is_zero(), "facts carry no adjusted blame");
                }
            }
            for element in &free {
                prop_assert!(
                    classical.value_of(element).expect("element").is_zero(),
                    "free elements get no classical blame"
                );
                prop_assert!(
                    adjusted.value_of(element).expect("element").is_zero(),
                    "free elements get no adjusted blame"
                );
            }
        }
    }

    #[test]
    fn generator_is_deterministic_and_respects_the_shape(
        seed in any::<u64>(),
        atoms in 2usize..=6,
        facts in 0usize..=4,
        rules in 0usize..=5,
    ) {
        let config = GeneratorConfig {
            seed,
            atoms,
            facts,
            rules,
            max_body: 2,
            negation_num: 1,
            negation_den: 2,
        };
        let base = generate(&config).expect("feasible shape");
        prop_assert_eq!(generate(&config).expect("feasible shape"), base.clone());

        prop_assert_eq!(base.facts().count(), facts);
        prop_assert_eq!(base.rules_only().count(), rules);
        prop_assert_eq!(base.len(), facts + rules);
        prop_assert!(base.signature().len() <= atoms);
    }

    #[test]
    fn parser_never_panics(text in any::<String>()) {
        let _ = RuleBase::parse(&text);
    }
}
