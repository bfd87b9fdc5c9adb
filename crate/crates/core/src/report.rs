//! JSON report builders.
//!
//! Every builder returns a [`serde_json::Value`] whose objects are
//! key-sorted maps, so serializing the same input with the same options
//! yields identical bytes.  Values carry exact fractions in lowest terms
//! alongside a six-significant-digit decimal rendering; volatile data such
//! as wall-clock timing never enters a report.

use num_rational::BigRational;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::campaign::CampaignOutcome;
use crate::generate::{GeneratorConfig, PRNG_ALGORITHM};
use crate::measures::Measure;
use crate::mis::{
    minimal_inconsistent_subsets, minimal_inconsistent_subsets_without_facts, MiFamily,
};
use crate::model::RuleBase;
use crate::postulates::PostulateCheck;
use crate::rational::{decimal_string, fraction_string};
use crate::semantics::is_consistent;
use crate::shapley::{
    adjusted_shapley_vector, culpability_ranking, max_adjusted, shapley_vector, ShapleyVector,
};
use crate::{Error, Limits};

/// Schema version embedded in every report.
pub const SCHEMA_VERSION: u64 = 1;

/// A fraction/decimal pair for one exact value.
fn value_json(value: &BigRational) -> Value {
    json!({
        "decimal": decimal_string(value),
        "fraction": fraction_string(value),
    })
}

/// One labelled vector entry.
fn entry_json(element: &crate::model::Rule, value: &BigRational) -> Value {
    json!({
        "decimal": decimal_string(value),
        "element": element.to_string(),
        "fraction": fraction_string(value),
    })
}

fn vector_json(vector: &ShapleyVector) -> Value {
    Value::Array(
        vector
            .entries()
            .iter()
            .map(|(element, value)| entry_json(element, value))
            .collect(),
    )
}

fn family_json(family: &MiFamily) -> Value {
    Value::Array(
        family
            .members()
            .iter()
            .map(|member| {
                Value::Array(
                    member
                        .elements()
                        .iter()
                        .map(|rule| Value::String(rule.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// The `input` section: canonical text, content hash, and counts.
pub fn input_section(base: &RuleBase) -> Value {
    let text = base.to_text();
    let sha256 = Sha256::digest(text.as_bytes())
        .iter()
        .map(|byte| format!("{byte:02x}"))
        .collect::<String>();
    json!({
        "atom_count": base.signature().len(),
        "canonical_text": text,
        "consistent": is_consistent(base),
        "element_count": base.len(),
        "fact_count": base.facts().count(),
        "rule_count": base.rules_only().count(),
        "sha256": sha256,
    })
}

/// The `measures` section for the selected measures.
pub fn measures_section(
    base: &RuleBase,
    measures: &[Measure],
    limits: &Limits,
) -> Result<Value, Error> {
    let mut section = Map::new();
    for measure in measures {
        let value = measure.evaluate(base, limits)?;
        section.insert(measure.name().to_string(), value_json(&value));
    }
    Ok(Value::Object(section))
}

/// The `shapley` section: per selected rule-based measure, the adjusted
/// vector, its maximum, and (on request) the classical vector.
pub fn shapley_section(
    base: &RuleBase,
    measures: &[Measure],
    classical: bool,
    limits: &Limits,
) -> Result<Value, Error> {
    let mut section = Map::new();
    for measure in measures.iter().filter(|m| m.is_rule_based()) {
        let mut entry = Map::new();
        entry.insert(
            "adjusted".to_string(),
            vector_json(&adjusted_shapley_vector(*measure, base, limits)?),
        );
        if classical {
            entry.insert(
                "classical".to_string(),
                vector_json(&shapley_vector(*measure, base, limits)?),
            );
        }
        entry.insert(
            "max_adjusted".to_string(),
            value_json(&max_adjusted(*measure, base, limits)?),
        );
        section.insert(measure.name().to_string(), Value::Object(entry));
    }
    Ok(Value::Object(section))
}

/// The `ranking` section: per selected rule-based measure, the culpability
/// ranking, with facts optionally hidden.
pub fn ranking_section(
    base: &RuleBase,
    measures: &[Measure],
    hide_facts: bool,
    limits: &Limits,
) -> Result<Value, Error> {
    let mut section = Map::new();
    for measure in measures.iter().filter(|m| m.is_rule_based()) {
        let ranking = culpability_ranking(*measure, base, limits)?;
        let entries = ranking
            .entries()
            .iter()
            .filter(|(element, _)| !(hide_facts && element.is_fact()))
            .map(|(element, value)| entry_json(element, value))
            .collect();
        section.insert(measure.name().to_string(), Value::Array(entries));
    }
    Ok(Value::Object(section))
}

/// Full analysis report: input digest, both MI listings, measure values,
/// Shapley sections, and rankings.
pub fn analysis_report(
    base: &RuleBase,
    measures: &[Measure],
    classical: bool,
    hide_facts: bool,
    limits: &Limits,
) -> Result<Value, Error> {
    let mi = minimal_inconsistent_subsets(base, limits)?;
    let mi_without_facts = minimal_inconsistent_subsets_without_facts(base, limits)?;
    Ok(json!({
        "input": input_section(base),
        "measures": measures_section(base, measures, limits)?,
        "minimal_inconsistent_subsets": family_json(&mi),
        "minimal_inconsistent_subsets_without_facts": family_json(&mi_without_facts),
        "ranking": ranking_section(base, measures, hide_facts, limits)?,
        "schema": SCHEMA_VERSION,
        "shapley": shapley_section(base, measures, classical, limits)?,
    }))
}

/// Measure-table report: input digest plus the selected measure values.
pub fn measures_report(
    base: &RuleBase,
    measures: &[Measure],
    limits: &Limits,
) -> Result<Value, Error> {
    Ok(json!({
        "input": input_section(base),
        "measures": measures_section(base, measures, limits)?,
        "schema": SCHEMA_VERSION,
    }))
}

/// Shapley report: input digest plus the Shapley sections.
pub fn shapley_report(
    base: &RuleBase,
    measures: &[Measure],
    classical: bool,
    limits: &Limits,
) -> Result<Value, Error> {
    Ok(json!({
        "input": input_section(base),
        "schema": SCHEMA_VERSION,
        "shapley": shapley_section(base, measures, classical, limits)?,
    }))
}

/// Ranking report for one measure.
pub fn rank_report(
    base: &RuleBase,
    measure: Measure,
    hide_facts: bool,
    limits: &Limits,
) -> Result<Value, Error> {
    Ok(json!({
        "input": input_section(base),
        "ranking": ranking_section(base, &[measure], hide_facts, limits)?,
        "schema": SCHEMA_VERSION,
    }))
}

/// One postulate check as JSON, used for campaign witnesses.
pub fn postulate_check_json(check: &PostulateCheck) -> Value {
    let details: Map<String, Value> = check
        .details()
        .iter()
        .map(|(key, value)| (key.clone(), Value::String(value.clone())))
        .collect();
    json!({
        "alpha": check.alpha().map(|alpha| alpha.to_string()),
        "base": check.base().to_text(),
        "companion": check.companion().map(RuleBase::to_text),
        "details": details,
        "element": check.element().map(|element| element.to_string()),
        "measure": check.measure().name(),
        "postulate": check.postulate().name(),
        "verdict": check.verdict().name(),
    })
}

/// Campaign summary report with the first violation (if any) as a witness.
pub fn check_report(outcome: &CampaignOutcome) -> Value {
    let first_violation = match (outcome.first_violation(), outcome.first_violation_index()) {
        (Some(check), Some(index)) => json!({
            "check": postulate_check_json(check),
            "index": index,
        }),
        _ => Value::Null,
    };
    json!({
        "budget": outcome.budget(),
        "first_violation": first_violation,
        "holds": outcome.holds(),
        "inapplicable": outcome.inapplicable(),
        "measure": outcome.measure().name(),
        "postulate": outcome.postulate().name(),
        "schema": SCHEMA_VERSION,
        "seed": outcome.seed(),
        "violated": outcome.violated(),
    })
}

/// Generation report: the sampling configuration and the produced base.
pub fn generate_report(config: &GeneratorConfig, base: &RuleBase) -> Value {
    json!({
        "config": {
            "atoms": config.atoms,
            "facts": config.facts,
            "max_body": config.max_body,
            "negation_den": config.negation_den,
            "negation_num": config.negation_num,
            "prng": PRNG_ALGORITHM,
            "rules": config.rules,
            "seed": config.seed,
        },
        "rule_base": input_section(base),
        "schema": SCHEMA_VERSION,
    })
}

/// Serialize a report with a trailing newline, the CLI's JSON framing.
pub fn to_json_string(report: &Value) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports are valid JSON");
    text.push('\n');
    text
}
