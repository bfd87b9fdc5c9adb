//! Inconsistency analysis for business rule bases.
//!
//! A rule base is a finite set of facts and rules over propositional
//! literals. This crate parses rule bases from a small textual format,
//! computes their minimal models, enumerates minimal inconsistent subsets,
//! evaluates a family of inconsistency measures (including rule-based
//! variants that discount conflicts caused by facts alone), attributes
//! blame to individual elements via classical and adjusted Shapley values,
//! and checks rationality properties of the measures on concrete and
//! randomly generated rule bases.
//!
//! All measure and attribution values are exact rationals; every API is
//! deterministic, including random generation, which is driven by an
//! explicitly seeded PRNG.

mod error;
mod index;

pub mod campaign;
pub mod generate;
pub mod measures;
pub mod mis;
pub mod model;
pub mod parse;
pub mod postulates;
pub mod rational;
pub mod report;
pub mod semantics;
pub mod shapley;

pub use error::{Error, LimitKind, ParseError};
pub use model::{Atom, Literal, Rule, RuleBase};

/// Caps on exhaustive search, since subset enumeration is exponential in the
/// number of elements and model search is exponential in the number of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of elements a base may have for subset enumeration
    /// (minimal inconsistent subsets, Shapley sweeps).
    pub max_elements: usize,
    /// Maximum number of atoms a base may mention for three-valued model
    /// search.
    pub max_atoms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 22,
            max_atoms: 14,
        }
    }
}

impl Limits {
    /// Limits with the given element cap and the default atom cap.
    pub fn with_max_elements(max_elements: usize) -> Self {
        Limits {
            max_elements,
            ..Limits::default()
        }
    }
}
