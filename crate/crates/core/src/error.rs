use thiserror::Error;

/// Errors produced by the reasoning engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed formula or query text. `position` is a byte offset.
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    /// Malformed knowledge-base line.
    #[error("line {line}: {message}")]
    KbSyntax { line: usize, message: String },

    #[error(
        "duplicate default `{default}` on line {second_line} (first seen on line {first_line})"
    )]
    DuplicateDefault {
        default: String,
        first_line: usize,
        second_line: usize,
    },

    #[error("variable `{0}` is not assigned in the world")]
    UnassignedVariable(String),

    #[error("{what} cap exceeded: {count} > {cap}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        count: usize,
    },

    #[error("default #{0} does not belong to the knowledge base")]
    ForeignDefault(usize),

    #[error("seriousness tuples have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    /// The ranked-model route for rational closure only covers antecedents of finite rank.
    #[error("antecedent `{0}` has no rank; the ranked-model route is undefined for it")]
    NoRankAntecedent(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two routes that must agree produced different answers. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
