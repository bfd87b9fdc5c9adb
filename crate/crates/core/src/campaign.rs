//! Counterexample campaigns: postulate checks over many instances.
//!
//! A campaign examines `budget` instances for one (measure, postulate)
//! pair and tallies the verdicts. Instances are deterministic:
//!
//! * the first few are fixed regression fixtures (see [`fixtures`]) — small
//!   bases known to separate the measure families, so searches reproduce
//!   the canonical counterexamples without depending on generator luck;
//! * every later instance at index `i` is generated from seed
//!   `campaign_seed + i` with the configured shape, and the postulate's
//!   remaining inputs are derived from the base by fixed rules (documented
//!   on [`run_campaign`]).
//!
//! A campaign never proves a postulate: zero violations means "no violation
//! in N instances" — the outcome reports exactly that.

use crate::error::Error;
use crate::generate::{generate, GeneratorConfig};
use crate::measures::Measure;
use crate::mis::free_formulas;
use crate::model::{Literal, Rule, RuleBase};
use crate::postulates::{
    check_consistency, check_fact_elision, check_free_formula_independence, check_monotony,
    check_rule_consistency, check_rule_emphasis, check_shapley_property, Postulate, PostulateCheck,
    Verdict,
};
use crate::Limits;

/// The candidate cap for rule-emphasis instances: at most this many
/// applicable candidate rules are checked per base.
pub const RULE_EMPHASIS_CANDIDATE_CAP: usize = 8;

/// Offset applied to an instance seed to draw the monotony extension, so
/// the extension differs from every instance draw of the same campaign.
const EXTENSION_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

/// Tallied verdicts of one campaign, with the first violation kept as a
/// replayable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignOutcome {
    measure: Measure,
    postulate: Postulate,
    budget: usize,
    seed: u64,
    holds: usize,
    violated: usize,
    inapplicable: usize,
    first_violation: Option<(usize, PostulateCheck)>,
}

impl CampaignOutcome {
    /// The measure the campaign ran against.
    pub fn measure(&self) -> Measure {
        self.measure
    }

    /// The postulate that was checked.
    pub fn postulate(&self) -> Postulate {
        self.postulate
    }

    /// The number of instances examined.
    pub fn budget(&self) -> usize {
        self.budget
    }

    /// The campaign seed.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Instances on which the postulate's condition held.
    pub fn holds(&self) -> usize {
        self.holds
    }

    /// Instances on which the condition failed.
    pub fn violated(&self) -> usize {
        self.violated
    }

    /// Instances whose precondition was not met (nothing derivable, or the
    /// derived inputs were rejected by the check).
    pub fn inapplicable(&self) -> usize {
        self.inapplicable
    }

    /// The lowest-index violation, if any.
    pub fn first_violation(&self) -> Option<&PostulateCheck> {
        self.first_violation.as_ref().map(|(_, check)| check)
    }

    /// The instance index of the first violation.
    pub fn first_violation_index(&self) -> Option<usize> {
        self.first_violation.as_ref().map(|(index, _)| *index)
    }
}

/// One instance's inputs: the base plus whatever the postulate consumes.
#[derive(Debug, Clone)]
struct Instance {
    base: RuleBase,
    alpha: Option<Literal>,
    element: Option<Rule>,
    companion: Option<RuleBase>,
}

impl Instance {
    fn base(base: RuleBase) -> Self {
        Instance {
            base,
            alpha: None,
            element: None,
            companion: None,
        }
    }
}

/// Run a `budget`-instance campaign for one (measure, postulate) pair.
///
/// Instance inputs beyond the base are derived deterministically:
///
/// * fact elision picks the first literal of the signature (negative
///   polarity first per atom) such that no rule head equals it, its
///   complement feeds no rule body, and its complement is not already a
///   fact — literals already present as facts are preferred; instances
///   with no such literal count as inapplicable;
/// * rule emphasis enumerates single-literal-body candidate rules over the
///   signature in the same literal order, skipping `l -> l` and rules
///   already present, and checks at most
///   [`RULE_EMPHASIS_CANDIDATE_CAP`] applicable candidates — the first
///   violation wins, otherwise the first applicable verdict stands;
/// * monotony extends the base by a second generated base (seed offset by
///   a fixed constant) and compares the two;
/// * free formula independence removes the first free element;
/// * the seven value-attribution properties need only the base.
pub fn run_campaign(
    measure: Measure,
    postulate: Postulate,
    budget: usize,
    seed: u64,
    shape: &GeneratorConfig,
    limits: &Limits,
) -> Result<CampaignOutcome, Error> {
    let fixture_list = fixtures(postulate);
    let mut outcome = CampaignOutcome {
        measure,
        postulate,
        budget,
        seed,
        holds: 0,
        violated: 0,
        inapplicable: 0,
        first_violation: None,
    };
    for index in 0..budget {
        let instance = match fixture_list.get(index) {
            Some(fixture) => fixture.clone(),
            None => {
                let instance_seed = seed.wrapping_add(index as u64);
                let base = generate(&GeneratorConfig {
                    seed: instance_seed,
                    ..shape.clone()
                })?;
                derive_instance(postulate, base, instance_seed, shape, limits)?
            }
        };
        match run_instance(measure, postulate, &instance, limits)? {
            None => outcome.inapplicable += 1,
            Some(check) => match check.verdict() {
                Verdict::Holds => outcome.holds += 1,
                Verdict::Inapplicable => outcome.inapplicable += 1,
                Verdict::Violated => {
                    outcome.violated += 1;
                    if outcome.first_violation.is_none() {
                        outcome.first_violation = Some((index, check));
                    }
                }
            },
        }
    }
    Ok(outcome)
}

/// The first violation found by [`run_campaign`], if any.
pub fn search_counterexample(
    measure: Measure,
    postulate: Postulate,
    budget: usize,
    seed: u64,
    shape: &GeneratorConfig,
    limits: &Limits,
) -> Result<Option<PostulateCheck>, Error> {
    Ok(
        run_campaign(measure, postulate, budget, seed, shape, limits)?
            .first_violation
            .map(|(_, check)| check),
    )
}

/// The fixed regression fixtures prepended to every campaign for the
/// postulate, in instance order.
fn fixtures(postulate: Postulate) -> Vec<Instance> {
    let parse = |text: &str| RuleBase::parse(text).expect("fixture parses");
    match postulate {
        // Two complementary facts: zero for rule-based measures, positive
        // for the originals.
        Postulate::RuleConsistency | Postulate::Consistency => {
            vec![Instance::base(parse("a. !a."))]
        }
        // A rule conflict next to an unrelated fact, then a lone fact: the
        // first separates the families, the second catches the drastic
        // measure (0 before, 1 after).
        Postulate::FactElision => vec![
            Instance {
                alpha: Some("c".parse().expect("literal parses")),
                ..Instance::base(parse("a. c. a -> b. a -> !b."))
            },
            Instance {
                alpha: Some("c".parse().expect("literal parses")),
                ..Instance::base(parse("c."))
            },
        ],
        // The two canonical witnesses: a self-defeating rule beside an
        // existing one, and a rule that bridges into a fact conflict.
        Postulate::RuleEmphasis => vec![
            Instance {
                element: Some("b -> !b".parse().expect("rule parses")),
                ..Instance::base(parse("a. b. a -> !a."))
            },
            Instance {
                element: Some("a -> b".parse().expect("rule parses")),
                ..Instance::base(parse("a. !c. b -> c."))
            },
        ],
        Postulate::Monotony => vec![Instance {
            companion: Some(parse("a. c. !c. a -> b. a -> !b.")),
            ..Instance::base(parse("a. a -> b. a -> !b."))
        }],
        Postulate::FreeFormulaIndependence => vec![Instance {
            element: Some("d.".parse().expect("rule parses")),
            ..Instance::base(parse("a. d. a -> b. a -> c."))
        }],
        _ => Vec::new(),
    }
}

/// Derive the postulate's remaining inputs from a generated base.
fn derive_instance(
    postulate: Postulate,
    base: RuleBase,
    instance_seed: u64,
    shape: &GeneratorConfig,
    limits: &Limits,
) -> Result<Instance, Error> {
    match postulate {
        Postulate::FactElision => {
            let alpha = select_fact_elision_literal(&base);
            Ok(Instance {
                alpha,
                ..Instance::base(base)
            })
        }
        Postulate::Monotony => {
            let extension = generate(&GeneratorConfig {
                seed: instance_seed.wrapping_add(EXTENSION_SEED_OFFSET),
                ..shape.clone()
            })?;
            let superset =
                RuleBase::new(base.elements().iter().chain(extension.elements()).cloned());
            Ok(Instance {
                companion: Some(superset),
                ..Instance::base(base)
            })
        }
        Postulate::FreeFormulaIndependence => {
            let element = free_formulas(&base, limits)?.into_iter().next();
            Ok(Instance {
                element,
                ..Instance::base(base)
            })
        }
        _ => Ok(Instance::base(base)),
    }
}

/// Run one instance; `None` means its precondition could not be met.
fn run_instance(
    measure: Measure,
    postulate: Postulate,
    instance: &Instance,
    limits: &Limits,
) -> Result<Option<PostulateCheck>, Error> {
    match postulate {
        Postulate::RuleConsistency => {
            check_rule_consistency(measure, &instance.base, limits).map(Some)
        }
        Postulate::Consistency => check_consistency(measure, &instance.base, limits).map(Some),
        Postulate::FactElision => match &instance.alpha {
            Some(alpha) => check_fact_elision(measure, &instance.base, alpha, limits).map(Some),
            None => Ok(None),
        },
        Postulate::RuleEmphasis => match &instance.element {
            Some(rule) => check_rule_emphasis(measure, &instance.base, rule, limits).map(Some),
            None => rule_emphasis_over_candidates(measure, &instance.base, limits),
        },
        Postulate::Monotony => match &instance.companion {
            Some(superset) if superset.len() <= limits.max_elements => {
                check_monotony(measure, &instance.base, superset, limits).map(Some)
            }
            _ => Ok(None),
        },
        Postulate::FreeFormulaIndependence => match &instance.element {
            Some(element) => {
                check_free_formula_independence(measure, &instance.base, element, limits).map(Some)
            }
            None => Ok(None),
        },
        _ => check_shapley_property(postulate, measure, &instance.base, limits).map(Some),
    }
}

/// The fact-elision literal for a generated base: the first signature
/// literal (per atom, negative before positive) such that no rule head
/// equals it, its complement feeds no rule body, and its complement is not
/// already a fact. Literals already present as facts are preferred, so the
/// added complement creates a fact conflict rather than nothing.
fn select_fact_elision_literal(base: &RuleBase) -> Option<Literal> {
    let candidates = base
        .signature()
        .into_iter()
        .flat_map(|atom| [Literal::negative(atom.clone()), Literal::positive(atom)]);
    let mut fallback = None;
    for alpha in candidates {
        let complement = alpha.complement();
        let head_blocked = base.rules_only().any(|r| r.head() == &alpha);
        let feeds_a_body = base.rules_only().any(|r| r.body().contains(&complement));
        let complement_is_fact = base.facts().any(|f| f.head() == &complement);
        if head_blocked || feeds_a_body || complement_is_fact {
            continue;
        }
        if base.facts().any(|f| f.head() == &alpha) {
            return Some(alpha);
        }
        fallback.get_or_insert(alpha);
    }
    fallback
}

/// Enumerate candidate rules for rule emphasis and check up to
/// [`RULE_EMPHASIS_CANDIDATE_CAP`] applicable ones; the first violation
/// wins, otherwise the first applicable verdict is returned.
///
/// Only candidates whose body atom occurs in the base exclusively as a
/// fact (never as a rule head, never negated as a fact) and differs from
/// the head atom are enumerated.  For such a candidate `B -> H`, every
/// conflict of the head-fact side that involves the fact `H` transfers to
/// the rule side intact: replacing `H` by `B -> H` plus the fact `B` keeps
/// the set minimal and keeps all of its rules, so the set of rules touched
/// by conflicts strictly grows.  Without the restriction the comparison
/// can tie for measures counting conflicting rules: firing the candidate
/// may shortcut a conflict and displace the rules it used (for the base
/// `!h. !z. h -> z.` and the candidate `!h -> h`, both sides involve
/// exactly one rule).  Explicit elements passed to [`check_rule_emphasis`]
/// are still checked as given.
fn rule_emphasis_over_candidates(
    measure: Measure,
    base: &RuleBase,
    limits: &Limits,
) -> Result<Option<PostulateCheck>, Error> {
    let atoms: Vec<_> = base.signature().into_iter().collect();
    let literals: Vec<Literal> = atoms
        .iter()
        .flat_map(|atom| {
            [
                Literal::negative(atom.clone()),
                Literal::positive(atom.clone()),
            ]
        })
        .collect();
    let mut applicable = 0;
    let mut first_checked = None;
    for body in &literals {
        for head in &literals {
            if body.atom() == head.atom() {
                continue;
            }
            let body_atom_heads_a_rule = base.rules_only().any(|r| r.head().atom() == body.atom());
            let body_complement_is_fact = base.facts().any(|f| f.head() == &body.complement());
            if body_atom_heads_a_rule || body_complement_is_fact {
                continue;
            }
            let candidate = Rule::new([body.clone()], head.clone());
            if base.contains(&candidate) {
                continue;
            }
            let check = check_rule_emphasis(measure, base, &candidate, limits)?;
            match check.verdict() {
                Verdict::Inapplicable => continue,
                Verdict::Violated => return Ok(Some(check)),
                Verdict::Holds => {
                    applicable += 1;
                    first_checked.get_or_insert(check);
                    if applicable == RULE_EMPHASIS_CANDIDATE_CAP {
                        return Ok(first_checked);
                    }
                }
            }
        }
    }
    Ok(first_checked)
}
