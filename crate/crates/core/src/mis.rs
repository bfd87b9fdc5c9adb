//! Minimal inconsistent subsets and free formulas.
//!
//! A subset M of a rule base is *minimal inconsistent* when M is inconsistent
//! and every proper subset of M is consistent. Fact-only conflicts (a fact
//! together with its complementary fact) can be filtered out to focus on
//! conflicts that involve at least one rule.

use crate::error::Error;
use crate::index::{iter_mask, BaseIndex};
use crate::model::{Rule, RuleBase};
use crate::Limits;

/// The family of minimal inconsistent subsets of a rule base.
///
/// Members are themselves rule bases (canonically ordered element sets); the
/// family is an antichain and is listed deterministically, ascending by
/// cardinality and by element position within each cardinality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiFamily {
    members: Vec<RuleBase>,
}

impl MiFamily {
    /// The members, in deterministic order.
    pub fn members(&self) -> &[RuleBase] {
        &self.members
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// True when there are no members (the base is consistent, or has no
    /// rule-involving conflict for the filtered family).
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The union of all members, as a rule base.
    pub fn union(&self) -> RuleBase {
        RuleBase::new(
            self.members
                .iter()
                .flat_map(|m| m.elements().iter().cloned()),
        )
    }

    /// True when `rule` occurs in at least one member.
    pub fn involves(&self, rule: &Rule) -> bool {
        self.members.iter().any(|m| m.contains(rule))
    }
}

/// True when `set` is non-empty and consists of facts only. Within a family
/// of minimal inconsistent subsets this singles out exactly the complementary
/// fact pairs {a., !a.}.
pub fn is_pure_fact_set(set: &RuleBase) -> bool {
    !set.is_empty() && set.rules_only().next().is_none()
}

/// Enumerates all minimal inconsistent subsets of `base`.
pub fn minimal_inconsistent_subsets(base: &RuleBase, limits: &Limits) -> Result<MiFamily, Error> {
    let idx = BaseIndex::new(base, limits)?;
    Ok(family_from_masks(
        &idx,
        idx.minimal_inconsistent_masks(),
        false,
    ))
}

/// Enumerates the minimal inconsistent subsets of `base` that involve at
/// least one rule, i.e. drops the pure fact pairs.
pub fn minimal_inconsistent_subsets_without_facts(
    base: &RuleBase,
    limits: &Limits,
) -> Result<MiFamily, Error> {
    let idx = BaseIndex::new(base, limits)?;
    Ok(family_from_masks(
        &idx,
        idx.minimal_inconsistent_masks(),
        true,
    ))
}

/// The elements of `base` that occur in no minimal inconsistent subset.
pub fn free_formulas(base: &RuleBase, limits: &Limits) -> Result<Vec<Rule>, Error> {
    let idx = BaseIndex::new(base, limits)?;
    let involved = idx
        .minimal_inconsistent_masks()
        .into_iter()
        .fold(0u64, |acc, m| acc | m);
    let free = idx.full_mask() & !involved;
    Ok(iter_mask(free).map(|i| idx.elements()[i].clone()).collect())
}

fn family_from_masks(idx: &BaseIndex, masks: Vec<u64>, drop_pure_fact_sets: bool) -> MiFamily {
    MiFamily {
        members: masks
            .into_iter()
            .filter(|&m| !(drop_pure_fact_sets && idx.all_facts(m)))
            .map(|m| idx.sub_base(m))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(text: &str) -> RuleBase {
        RuleBase::parse(text).unwrap()
    }

    fn mi(text: &str) -> MiFamily {
        minimal_inconsistent_subsets(&base(text), &Limits::default()).unwrap()
    }

    fn mi_rb(text: &str) -> MiFamily {
        minimal_inconsistent_subsets_without_facts(&base(text), &Limits::default()).unwrap()
    }

    fn texts(family: &MiFamily) -> Vec<Vec<String>> {
        family
            .members()
            .iter()
            .map(|m| m.elements().iter().map(ToString::to_string).collect())
            .collect()
    }

    #[test]
    fn consistent_bases_have_no_members() {
        assert!(mi("a. d. a -> b. a -> c.").is_empty());
        assert!(mi("").is_empty());
    }

    #[test]
    fn fact_pair_is_the_only_member() {
        assert_eq!(texts(&mi("a. !a.")), [["!a.", "a."]]);
        assert!(mi_rb("a. !a.").is_empty());
    }

    #[test]
    fn rule_conflicts_include_the_involved_rules() {
        assert_eq!(
            texts(&mi("a. a -> b. a -> !b.")),
            [["a.", "a -> !b.", "a -> b."]]
        );
        assert_eq!(texts(&mi("a. !b. a -> b.")), [["a.", "!b.", "a -> b."]]);
    }

    #[test]
    fn families_are_antichains_with_all_conflicts() {
        let family = mi("a. !a. a -> b. a -> !b. c. !c.");
        assert_eq!(family.len(), 3);
        for (i, m) in family.members().iter().enumerate() {
            for (j, other) in family.members().iter().enumerate() {
                if i != j {
                    assert!(!m.is_subset_of(other));
                }
            }
        }
        let filtered = mi_rb("a. !a. a -> b. a -> !b. c. !c.");
        assert_eq!(texts(&filtered), [["a.", "a -> !b.", "a -> b."]]);
    }

    #[test]
    fn pure_fact_sets_are_fact_only_sets() {
        assert!(is_pure_fact_set(&base("a. !a.")));
        assert!(is_pure_fact_set(&base("a.")));
        assert!(!is_pure_fact_set(&base("a. a -> b.")));
        assert!(!is_pure_fact_set(&RuleBase::empty()));
    }

    #[test]
    fn free_formulas_are_the_uninvolved_elements() {
        let free = free_formulas(&base("a. !b. a -> b. c."), &Limits::default()).unwrap();
        assert_eq!(
            free.iter().map(ToString::to_string).collect::<Vec<_>>(),
            ["c."]
        );
        let none = free_formulas(&base("a. !b. a -> b."), &Limits::default()).unwrap();
        assert!(none.is_empty());
        let all = free_formulas(&base("a. d. a -> b. a -> c."), &Limits::default()).unwrap();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn members_are_listed_deterministically() {
        let family = mi("a. !a. c. !c. a -> b. a -> !b.");
        // Fact pairs (size 2) come before the rule conflict (size 3).
        let sizes: Vec<usize> = family.members().iter().map(RuleBase::len).collect();
        assert_eq!(sizes, [2, 2, 3]);
    }
}
