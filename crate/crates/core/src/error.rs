use alloc::string::String;

use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: argument `{name}` is not declared")]
    UndeclaredArgument { line: usize, name: String },

    #[error("line {line}: argument `{name}` is declared twice")]
    DuplicateArgument { line: usize, name: String },

    #[error("line {line}: attack `{from} -> {to}` is declared twice")]
    DuplicateAttack {
        line: usize,
        from: String,
        to: String,
    },

    #[error("unknown argument `{0}`")]
    UnknownArgument(String),

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("labelling does not cover the framework: expected {expected} labels, got {got}")]
    LabellingSize { expected: usize, got: usize },

    #[error("labelling is not legal: {0}")]
    IllegalLabelling(String),

    #[error("framework has {size} arguments, above the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("pinned value for `{0}` must be 0 or 1")]
    InvalidPin(String),

    #[error("no seed converged (best residual {best_residual:e})")]
    NoConvergence { best_residual: f64 },

    #[error("distribution is not legitimate for this framework")]
    IllegitimateDistribution,

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{0}")]
    Realization(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
