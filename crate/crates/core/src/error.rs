use std::path::PathBuf;

use thiserror::Error;

/// A descriptor field that violates its invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid `{field}`: {message}")]
pub struct SpecError {
    pub field: String,
    pub message: String,
}

impl SpecError {
    pub fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        SpecError {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Spec(#[from] SpecError),

    #[error("no peak compute rate for {bits}-bit precision on `{hardware}` (available: {available:?})")]
    UnknownPrecision {
        hardware: String,
        bits: u32,
        available: Vec<u32>,
    },

    #[error("operational intensity must be positive, got {0}")]
    NonPositiveOi(f64),

    #[error("expected a {expected:?} operating point, got {actual:?}")]
    PhaseMismatch {
        expected: crate::metrics::Phase,
        actual: crate::metrics::Phase,
    },

    #[error("empty sweep: {0}")]
    EmptySweep(&'static str),

    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Failure to load or validate a declarative config file.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read `{}`: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("`{origin}`: {message}")]
    Parse { origin: String, message: String },

    #[error("`{origin}`: unknown key `{key}`")]
    UnknownKey { origin: String, key: String },

    #[error("`{origin}`: {source}")]
    Invalid { origin: String, source: SpecError },

    #[error("no {kind} named `{name}` (built-in: {available})")]
    NotFound {
        kind: &'static str,
        name: String,
        available: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
