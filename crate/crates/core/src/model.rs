//! Core data model: atoms, literals, rules, and rule bases.
//!
//! A *rule base* is a finite set of rules `l1, ..., lm -> l0` whose body and
//! head are literals over propositional atoms; a rule with an empty body is a
//! *fact*. Rule bases are kept in a canonical element order (facts first,
//! then proper rules, each group sorted by head literal and then body) so
//! that serialization, Shapley vectors, and rankings are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError};
use crate::parse;

/// A propositional atom, identified by an ASCII identifier
/// (`[A-Za-z_][A-Za-z0-9_]*`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    /// Creates an atom, validating the identifier pattern.
    pub fn new(name: impl Into<String>) -> Result<Self, Error> {
        let name = name.into();
        if is_valid_atom_name(&name) {
            Ok(Atom(name))
        } else {
            Err(Error::InvalidAtomName { name })
        }
    }

    /// The atom's identifier.
    pub fn name(&self) -> &str {
        &self.0
    }
}

/// Whether `name` matches `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Atom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Atom::new(s)
    }
}

/// An atom or its negation.
///
/// The derived ordering sorts by atom name and then puts the negative literal
/// before the positive one, which matches the canonical serialization order
/// (`!a.` precedes `a.`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    atom: Atom,
    positive: bool,
}

impl Literal {
    /// A positive literal over `atom`.
    pub fn positive(atom: Atom) -> Self {
        Literal {
            atom,
            positive: true,
        }
    }

    /// A negated literal over `atom`.
    pub fn negative(atom: Atom) -> Self {
        Literal {
            atom,
            positive: false,
        }
    }

    /// A literal with explicit polarity.
    pub fn new(atom: Atom, positive: bool) -> Self {
        Literal { atom, positive }
    }

    /// The underlying atom.
    pub fn atom(&self) -> &Atom {
        &self.atom
    }

    /// True for `a`, false for `!a`.
    pub fn is_positive(&self) -> bool {
        self.positive
    }

    /// The literal with opposite polarity. Applying this twice is the
    /// identity.
    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        write!(f, "{}", self.atom)
    }
}

impl FromStr for Literal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.strip_prefix('!') {
            Some(rest) => Ok(Literal::negative(Atom::new(rest)?)),
            None => Ok(Literal::positive(Atom::new(s)?)),
        }
    }
}

/// A rule `body -> head`; a fact when the body is empty.
///
/// The body is a *set* of literals: duplicates collapse and their written
/// order is irrelevant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    body: BTreeSet<Literal>,
    head: Literal,
}

impl Rule {
    /// A fact asserting `head`.
    pub fn fact(head: Literal) -> Self {
        Rule {
            body: BTreeSet::new(),
            head,
        }
    }

    /// A rule with the given body literals and head.
    pub fn new(body: impl IntoIterator<Item = Literal>, head: Literal) -> Self {
        Rule {
            body: body.into_iter().collect(),
            head,
        }
    }

    /// The body literals, in canonical order.
    pub fn body(&self) -> &BTreeSet<Literal> {
        &self.body
    }

    /// The head literal.
    pub fn head(&self) -> &Literal {
        &self.head
    }

    /// True when the body is empty.
    pub fn is_fact(&self) -> bool {
        self.body.is_empty()
    }

    /// Every literal of the rule: body first, head last.
    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.body.iter().chain(std::iter::once(&self.head))
    }

    /// Every atom occurring in the rule (with repetitions).
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.literals().map(Literal::atom)
    }
}

impl Ord for Rule {
    /// Canonical element order: facts before proper rules, then by head
    /// literal, then by body.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .is_fact()
            .cmp(&self.is_fact())
            .then_with(|| self.head.cmp(&other.head))
            .then_with(|| self.body.cmp(&other.body))
    }
}

impl PartialOrd for Rule {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_fact() {
            let mut first = true;
            for lit in &self.body {
                if !first {
                    f.write_str(", ")?;
                }
                write!(f, "{lit}")?;
                first = false;
            }
            f.write_str(" -> ")?;
        }
        write!(f, "{}.", self.head)
    }
}

impl FromStr for Rule {
    type Err = Error;

    /// Parses a single statement, e.g. `"a, b -> !c."` (the trailing period
    /// is optional here).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let text = if text.ends_with('.') {
            text.to_string()
        } else {
            format!("{text}.")
        };
        let base = RuleBase::parse(&text)?;
        match base.elements() {
            [single] => Ok(single.clone()),
            _ => Err(ParseError {
                line: 1,
                column: 1,
                message: "expected exactly one statement".to_string(),
            }
            .into()),
        }
    }
}

/// A finite set of rules in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RuleBase {
    elements: Vec<Rule>,
}

impl RuleBase {
    /// The empty rule base.
    pub fn empty() -> Self {
        RuleBase::default()
    }

    /// Builds a rule base from the given rules, deduplicating and sorting
    /// into canonical order.
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Self {
        let mut elements: Vec<Rule> = rules.into_iter().collect();
        elements.sort();
        elements.dedup();
        RuleBase { elements }
    }

    /// Reads a rule base from DSL text. Empty input (including
    /// whitespace/comments only) yields the empty base.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse::parse_rule_base(text)
    }

    /// The elements in canonical order.
    pub fn elements(&self) -> &[Rule] {
        &self.elements
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// True when there are no elements.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, rule: &Rule) -> bool {
        self.elements.binary_search(rule).is_ok()
    }

    /// Canonical position of `rule`, if it is a member.
    pub fn position(&self, rule: &Rule) -> Option<usize> {
        self.elements.binary_search(rule).ok()
    }

    /// The facts of the base (elements with empty bodies).
    pub fn facts(&self) -> impl Iterator<Item = &Rule> {
        self.elements.iter().filter(|r| r.is_fact())
    }

    /// The proper rules of the base (elements with non-empty bodies).
    /// Together with [`RuleBase::facts`] this partitions the base.
    pub fn rules_only(&self) -> impl Iterator<Item = &Rule> {
        self.elements.iter().filter(|r| !r.is_fact())
    }

    /// The atoms occurring anywhere in the base, sorted.
    pub fn signature(&self) -> BTreeSet<Atom> {
        self.elements
            .iter()
            .flat_map(|r| r.atoms().cloned())
            .collect()
    }

    /// This base extended with `rule` (no-op if already present).
    pub fn with_element(&self, rule: Rule) -> RuleBase {
        let mut elements = self.elements.clone();
        if let Err(pos) = elements.binary_search(&rule) {
            elements.insert(pos, rule);
        }
        RuleBase { elements }
    }

    /// This base with `rule` removed (no-op if absent).
    pub fn without_element(&self, rule: &Rule) -> RuleBase {
        let mut elements = self.elements.clone();
        if let Ok(pos) = elements.binary_search(rule) {
            elements.remove(pos);
        }
        RuleBase { elements }
    }

    /// True when every element of `self` is an element of `other`.
    pub fn is_subset_of(&self, other: &RuleBase) -> bool {
        self.elements.iter().all(|r| other.contains(r))
    }

    /// Canonical serialization: one statement per line, each line terminated
    /// by `.` and a newline, elements in canonical order. The empty base
    /// serializes to the empty string. `parse` of the result reproduces the
    /// base exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for rule in &self.elements {
            out.push_str(&rule.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for RuleBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for RuleBase {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleBase::parse(s)
    }
}

impl FromIterator<Rule> for RuleBase {
    fn from_iter<T: IntoIterator<Item = Rule>>(iter: T) -> Self {
        RuleBase::new(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> Literal {
        s.parse().unwrap()
    }

    #[test]
    fn atom_names_are_validated() {
        assert!(Atom::new("a").is_ok());
        assert!(Atom::new("_x9").is_ok());
        assert!(Atom::new("creditWorthy").is_ok());
        assert!(Atom::new("").is_err());
        assert!(Atom::new("9a").is_err());
        assert!(Atom::new("a-b").is_err());
        assert!(Atom::new("naïve").is_err());
    }

    #[test]
    fn complement_is_involutive() {
        let l = lit("!creditWorthy");
        assert_eq!(l.complement().complement(), l);
        assert_ne!(l.complement(), l);
    }

    #[test]
    fn literal_order_puts_negative_first() {
        assert!(lit("!a") < lit("a"));
        assert!(lit("a") < lit("!b"));
        assert!(lit("!b") < lit("b"));
    }

    #[test]
    fn canonical_order_facts_first_then_heads() {
        let base = RuleBase::parse("a -> b. !c. a.").unwrap();
        let rendered: Vec<String> = base.elements().iter().map(|r| r.to_string()).collect();
        assert_eq!(rendered, ["a.", "!c.", "a -> b."]);
    }

    #[test]
    fn rule_body_is_a_set() {
        let r1: Rule = "a, b -> c".parse().unwrap();
        let r2: Rule = "b, a, b -> c".parse().unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.to_string(), "a, b -> c.");
    }

    #[test]
    fn base_deduplicates() {
        let base = RuleBase::parse("a. a. a -> b. a -> b.").unwrap();
        assert_eq!(base.len(), 2);
    }

    #[test]
    fn facts_and_rules_partition_the_base() {
        let base = RuleBase::parse("a. !b. a -> b.").unwrap();
        let facts: Vec<_> = base.facts().map(ToString::to_string).collect();
        let rules: Vec<_> = base.rules_only().map(ToString::to_string).collect();
        assert_eq!(facts, ["a.", "!b."]);
        assert_eq!(rules, ["a -> b."]);
        assert_eq!(facts.len() + rules.len(), base.len());
    }

    #[test]
    fn signature_is_exactly_the_occurring_atoms() {
        let base = RuleBase::parse("a. b, !c -> d.").unwrap();
        let names: Vec<_> = base
            .signature()
            .iter()
            .map(|a| a.name().to_string())
            .collect();
        assert_eq!(names, ["a", "b", "c", "d"]);
    }

    #[test]
    fn two_complementary_facts_serialize_negative_first() {
        let base = RuleBase::parse("a. !a.").unwrap();
        assert_eq!(base.to_text(), "!a.\na.\n");
    }

    #[test]
    fn with_and_without_element() {
        let base = RuleBase::parse("a.").unwrap();
        let r: Rule = "a -> b".parse().unwrap();
        let bigger = base.with_element(r.clone());
        assert_eq!(bigger.len(), 2);
        assert!(bigger.contains(&r));
        assert_eq!(bigger.without_element(&r), base);
        assert_eq!(base.without_element(&r), base);
    }
}
