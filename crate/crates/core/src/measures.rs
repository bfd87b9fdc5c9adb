//! Inconsistency measures.
//!
//! Eight measures share one registry. Four score every kind of conflict:
//!
//! - `drastic` — 1 iff the base is inconsistent;
//! - `mi` — number of minimal inconsistent subsets;
//! - `problematic` — size of the union of the minimal inconsistent subsets;
//! - `contension` — fewest atoms that must take the conflicting truth value
//!   in a three-valued interpretation satisfying the base.
//!
//! The other four restate those ideas for rule bases, where a conflict
//! between two facts is routine data noise but a conflict that *involves a
//! rule* points at broken logic:
//!
//! - `rb-drastic` — 1 iff some minimal inconsistent subset involves a rule;
//! - `rb-mi` — number of rule-involving minimal inconsistent subsets;
//! - `rb-problematic` — number of distinct rules in the union of those
//!   subsets;
//! - `rb-contension` — contension restricted to the union of the
//!   rule-involving subsets (0 when there are none).
//!
//! All measures return exact rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, LimitKind};
use crate::index::{iter_mask, mask_of_len, next_subset_of_same_size, BaseIndex};
use crate::model::RuleBase;
use crate::rational::int;
use crate::Limits;

/// One of the eight registered inconsistency measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Drastic,
    MiCount,
    Problematic,
    Contension,
    RbDrastic,
    RbMiCount,
    RbProblematic,
    RbContension,
}

impl Measure {
    /// Every registered measure, classical family first.
    pub const ALL: [Measure; 8] = [
        Measure::Drastic,
        Measure::MiCount,
        Measure::Problematic,
        Measure::Contension,
        Measure::RbDrastic,
        Measure::RbMiCount,
        Measure::RbProblematic,
        Measure::RbContension,
    ];

    /// The four measures that ignore where a conflict comes from.
    pub const CLASSICAL: [Measure; 4] = [
        Measure::Drastic,
        Measure::MiCount,
        Measure::Problematic,
        Measure::Contension,
    ];

    /// The four rule-base measures (rule-involving conflicts only).
    pub const RULE_BASED: [Measure; 4] = [
        Measure::RbDrastic,
        Measure::RbMiCount,
        Measure::RbProblematic,
        Measure::RbContension,
    ];

    /// The registry name.
    pub fn name(self) -> &'static str {
        match self {
            Measure::Drastic => "drastic",
            Measure::MiCount => "mi",
            Measure::Problematic => "problematic",
            Measure::Contension => "contension",
            Measure::RbDrastic => "rb-drastic",
            Measure::RbMiCount => "rb-mi",
            Measure::RbProblematic => "rb-problematic",
            Measure::RbContension => "rb-contension",
        }
    }

    /// Looks a measure up by registry name.
    pub fn from_name(name: &str) -> Result<Measure, Error> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == name)
            .ok_or_else(|| Error::UnknownMeasure {
                name: name.to_string(),
                known: Measure::ALL.map(Measure::name).join(", "),
            })
    }

    /// True for the rule-base family.
    pub fn is_rule_based(self) -> bool {
        matches!(
            self,
            Measure::RbDrastic
                | Measure::RbMiCount
                | Measure::RbProblematic
                | Measure::RbContension
        )
    }

    /// Evaluates the measure on `base`.
    pub fn evaluate(self, base: &RuleBase, limits: &Limits) -> Result<BigRational, Error> {
        let idx = BaseIndex::new(base, limits)?;
        evaluate_indexed(self, &idx, limits)
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Measure::from_name(s)
    }
}

/// Evaluates a measure against a prepared index.
pub(crate) fn evaluate_indexed(
    measure: Measure,
    idx: &BaseIndex,
    limits: &Limits,
) -> Result<BigRational, Error> {
    let value = match measure {
        Measure::Drastic => {
            if idx.consistent(idx.full_mask()) {
                BigRational::zero()
            } else {
                BigRational::one()
            }
        }
        Measure::MiCount => int(idx.minimal_inconsistent_masks().len() as i64),
        Measure::Problematic => {
            let union = union_of(idx.minimal_inconsistent_masks());
            int(union.count_ones() as i64)
        }
        Measure::Contension => int(contension(idx, idx.full_mask(), limits)? as i64),
        Measure::RbDrastic => {
            if rule_involving_masks(idx).next().is_some() {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }
        Measure::RbMiCount => int(rule_involving_masks(idx).count() as i64),
        Measure::RbProblematic => {
            let union = union_of(rule_involving_masks(idx));
            int((union & idx.rules_mask()).count_ones() as i64)
        }
        Measure::RbContension => {
            let union = union_of(rule_involving_masks(idx));
            if union == 0 {
                BigRational::zero()
            } else {
                int(contension(idx, union, limits)? as i64)
            }
        }
    };
    Ok(value)
}

fn union_of(masks: impl IntoIterator<Item = u64>) -> u64 {
    masks.into_iter().fold(0, |acc, m| acc | m)
}

fn rule_involving_masks(idx: &BaseIndex) -> impl Iterator<Item = u64> + '_ {
    idx.minimal_inconsistent_masks()
        .into_iter()
        .filter(move |&m| !idx.all_facts(m))
}

/// Atoms the exhaustive interpretation search can handle: the compact
/// per-search literal masks live in one word.
const CONTENSION_HARD_CAP: usize = 30;

/// The smallest number of atoms that must be assigned the conflicting value
/// so that some three-valued interpretation satisfies every element selected
/// by `element_mask`.
///
/// Searches conflict sets in ascending size; for each candidate set the
/// remaining atoms are assigned classically by exhaustive enumeration. The
/// search is bounded by the signature-size guard.
fn contension(idx: &BaseIndex, element_mask: u64, limits: &Limits) -> Result<usize, Error> {
    let atom_count = idx.atom_count();
    let limit = limits.max_atoms.min(CONTENSION_HARD_CAP);
    if atom_count > limit {
        return Err(Error::SizeLimitExceeded {
            kind: LimitKind::Atoms,
            actual: atom_count,
            limit,
        });
    }
    // Only atoms mentioned by the selected elements matter: any other atom
    // can be classically true without affecting satisfaction. Re-index the
    // mentioned atoms compactly, two bits per atom.
    let mut mentioned: Vec<u32> = iter_mask(element_mask)
        .flat_map(|i| {
            idx.body_literals(i)
                .iter()
                .copied()
                .chain(std::iter::once(idx.head_literal(i)))
        })
        .map(|lit| lit / 2)
        .collect();
    mentioned.sort_unstable();
    mentioned.dedup();
    let compact = |lit: u32| -> u64 {
        let pos = mentioned.binary_search(&(lit / 2)).expect("mentioned atom") as u64;
        1 << (2 * pos + u64::from(lit % 2 == 1))
    };
    // A rule is violated exactly when all its body literals and the
    // complement of its head are classically true; an atom holding the
    // conflicting value never makes a literal classically true, so a rule is
    // satisfied under an assignment iff its pattern is not fully true.
    let patterns: Vec<u64> = iter_mask(element_mask)
        .map(|i| {
            let complement = idx.head_literal(i) ^ 1;
            idx.body_literals(i)
                .iter()
                .map(|&l| compact(l))
                .fold(compact(complement), |acc, b| acc | b)
        })
        .collect();
    let m = mentioned.len();
    for conflict_size in 0..=m {
        let mut conflict_choice = mask_of_len(conflict_size);
        let last = conflict_choice << (m - conflict_size);
        loop {
            if satisfiable_with_conflicts(&patterns, m, conflict_choice) {
                return Ok(conflict_size);
            }
            if conflict_size == 0 || conflict_choice == last {
                break;
            }
            conflict_choice = next_subset_of_same_size(conflict_choice);
        }
    }
    unreachable!("assigning every atom the conflicting value satisfies any rule set")
}

/// Is there a classical assignment of the non-conflicting atoms under which
/// no pattern is fully true? `conflict_choice` selects conflicting atoms by
/// compact position out of `m` compact atoms.
fn satisfiable_with_conflicts(patterns: &[u64], m: usize, conflict_choice: u64) -> bool {
    let classical: Vec<usize> = (0..m).filter(|p| conflict_choice & (1 << p) == 0).collect();
    for assignment in 0u64..(1 << classical.len()) {
        let mut true_literals = 0u64;
        for (pos, &p) in classical.iter().enumerate() {
            let negative = assignment & (1 << pos) != 0;
            true_literals |= 1 << (2 * p + usize::from(negative));
        }
        if patterns.iter().all(|&pat| pat & !true_literals != 0) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn value(measure: &str, text: &str) -> BigRational {
        Measure::from_name(measure)
            .unwrap()
            .evaluate(&RuleBase::parse(text).unwrap(), &Limits::default())
            .unwrap()
    }

    #[test]
    fn registry_round_trips_names() {
        for m in Measure::ALL {
            assert_eq!(Measure::from_name(m.name()).unwrap(), m);
        }
        assert!(matches!(
            Measure::from_name("euclidean"),
            Err(Error::UnknownMeasure { .. })
        ));
    }

    #[test]
    fn consistent_bases_score_zero_everywhere() {
        for m in Measure::ALL {
            assert_eq!(
                m.evaluate(
                    &RuleBase::parse("a. d. a -> b. a -> c.").unwrap(),
                    &Limits::default()
                )
                .unwrap(),
                rat(0, 1),
                "{m}"
            );
            assert_eq!(
                m.evaluate(&RuleBase::empty(), &Limits::default()).unwrap(),
                rat(0, 1),
                "{m}"
            );
        }
    }

    #[test]
    fn fact_conflicts_count_classically_but_not_rule_based() {
        let text = "a. !a.";
        assert_eq!(value("drastic", text), rat(1, 1));
        assert_eq!(value("mi", text), rat(1, 1));
        assert_eq!(value("problematic", text), rat(2, 1));
        assert_eq!(value("contension", text), rat(1, 1));
        for m in Measure::RULE_BASED {
            assert_eq!(value(m.name(), text), rat(0, 1), "{m}");
        }
    }

    #[test]
    fn rule_conflicts_count_in_both_families() {
        let text = "a. a -> b. a -> !b.";
        assert_eq!(value("drastic", text), rat(1, 1));
        assert_eq!(value("mi", text), rat(1, 1));
        assert_eq!(value("problematic", text), rat(3, 1));
        assert_eq!(value("contension", text), rat(1, 1));
        assert_eq!(value("rb-drastic", text), rat(1, 1));
        assert_eq!(value("rb-mi", text), rat(1, 1));
        assert_eq!(value("rb-problematic", text), rat(2, 1));
        assert_eq!(value("rb-contension", text), rat(1, 1));
    }

    #[test]
    fn mixed_conflicts_split_by_family() {
        let text = "a. a -> b. a -> !b. c. !c.";
        assert_eq!(value("mi", text), rat(2, 1));
        assert_eq!(value("problematic", text), rat(5, 1));
        assert_eq!(value("contension", text), rat(2, 1));
        assert_eq!(value("rb-mi", text), rat(1, 1));
        assert_eq!(value("rb-problematic", text), rat(2, 1));
        assert_eq!(value("rb-contension", text), rat(1, 1));
    }

    #[test]
    fn contension_counts_forced_conflict_atoms() {
        // b must conflict; a can stay classically true.
        assert_eq!(value("contension", "a. a -> b. !b."), rat(1, 1));
        // Two independent fact conflicts force two atoms.
        assert_eq!(value("contension", "a. !a. b. !b."), rat(2, 1));
        // One conflicting atom can absorb several rules at once.
        assert_eq!(
            value("contension", "a. c. a -> b. c -> !b. !b -> d. b -> !d."),
            rat(1, 1)
        );
    }

    #[test]
    fn atom_limit_guards_contension() {
        let text: String = (0..15).map(|i| format!("x{i}. ")).collect();
        let base = RuleBase::parse(&text).unwrap();
        let err = Measure::Contension
            .evaluate(&base, &Limits::default())
            .unwrap_err();
        assert!(matches!(
            err,
            Error::SizeLimitExceeded {
                kind: LimitKind::Atoms,
                actual: 15,
                limit: 14
            }
        ));
        // The element guard can be relaxed explicitly.
        let relaxed = Limits {
            max_atoms: 15,
            ..Limits::default()
        };
        assert_eq!(
            Measure::Contension.evaluate(&base, &relaxed).unwrap(),
            rat(0, 1)
        );
    }
}
