//! Error types shared across the crate.

use thiserror::Error;

/// Position-annotated failure while reading the rule DSL.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    /// 1-based line of the offending token or character.
    pub line: usize,
    /// 1-based column of the offending token or character.
    pub column: usize,
    /// What was found and what would have been accepted instead.
    pub message: String,
}

/// Which configurable guard a too-large input tripped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    /// Number of rule-base elements (bounds subset enumeration).
    Elements,
    /// Number of signature atoms (bounds interpretation search).
    Atoms,
}

impl LimitKind {
    fn noun(self) -> &'static str {
        match self {
            LimitKind::Elements => "element",
            LimitKind::Atoms => "atom",
        }
    }
}

/// Any failure produced by the analysis operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input text did not conform to the rule DSL.
    #[error(transparent)]
    Parse(#[from] ParseError),

    /// An atom name outside `[A-Za-z_][A-Za-z0-9_]*` was supplied
    /// programmatically.
    #[error("invalid atom name {name:?}: expected an ASCII identifier")]
    InvalidAtomName { name: String },

    /// The input is larger than an enumeration guard allows.
    #[error(
        "size limit exceeded: {actual} {}s, limit is {limit} (raise the limit \
         explicitly to force the exhaustive search)",
        kind.noun()
    )]
    SizeLimitExceeded {
        kind: LimitKind,
        actual: usize,
        limit: usize,
    },

    /// An interpretation was asked about an atom outside its signature.
    #[error("atom {name:?} is not in the interpretation's signature")]
    UnknownAtom { name: String },

    /// An element-level operation was handed an element that is not a member
    /// of the rule base (or coalition) it refers to.
    #[error("element \"{element}\" is not a member of the rule base")]
    ElementNotInBase { element: String },

    /// A rule-only operation was handed a fact.
    #[error("element \"{element}\" is a fact; this operation applies to rules")]
    NotARule { element: String },

    /// A measure name not present in the registry.
    #[error("unknown measure {name:?} (known: {known})")]
    UnknownMeasure { name: String, known: String },

    /// A postulate name not present in the registry.
    #[error("unknown postulate {name:?} (known: {known})")]
    UnknownPostulate { name: String, known: String },

    /// The generator cannot produce the requested number of distinct
    /// elements with the given shape parameters.
    #[error("infeasible shape: requested {requested} distinct {what}, but only {available} are possible")]
    ShapeInfeasible {
        what: &'static str,
        requested: usize,
        available: usize,
    },
}
