use std::io;

use thiserror::Error;

/// Errors raised by the decision-theory routines and the data loaders.
#[derive(Debug, Error)]
pub enum QdtError {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("basis mismatch: states live in different mind spaces")]
    BasisMismatch,

    #[error("impossible decision outcome: prospect has zero overlap with the strategic state")]
    ImpossibleOutcome,

    /// The uncertainty factor needs both joint probabilities to be positive.
    /// The attraction factor is still well defined and is carried along.
    #[error("uncertainty factor undefined: zero joint probability (q = {q})")]
    UndefinedFactor { q: f64 },

    #[error("inconsistent data: uncertainty factor {phi} lies outside [-1, 1]")]
    InconsistentData { phi: f64 },

    #[error("sign convention violated: attraction factor for acting under uncertainty must be <= 0, got {q}")]
    SignConvention { q: f64 },

    #[error("empty dataset{}", location(.line, None))]
    EmptyDataset { line: Option<usize> },

    #[error("parse error{}: {message}", location(.line, Some(.field)))]
    Parse {
        line: Option<usize>,
        field: String,
        message: String,
    },

    #[error("range error{}: {value} is outside [0, 1]", location(.line, Some(.field)))]
    Range {
        line: Option<usize>,
        field: String,
        value: f64,
    },

    #[error("schema error: missing or invalid field `{field}`{}", location(.line, None))]
    Schema { line: Option<usize>, field: String },

    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

fn location(line: &Option<usize>, field: Option<&String>) -> String {
    match (line, field) {
        (Some(l), Some(f)) => format!(" at line {l}, field `{f}`"),
        (Some(l), None) => format!(" at line {l}"),
        (None, Some(f)) => format!(" in field `{f}`"),
        (None, None) => String::new(),
    }
}

impl QdtError {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        QdtError::Validation(msg.into())
    }

    /// Usage and IO failures, as opposed to problems with the data itself.
    pub fn is_usage_or_io(&self) -> bool {
        matches!(self, QdtError::Usage(_) | QdtError::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, QdtError>;

/// Checks that `value` is a probability, reporting `field` on failure.
pub(crate) fn check_probability(value: f64, field: &str, line: Option<usize>) -> Result<f64> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(QdtError::Range {
            line,
            field: field.to_string(),
            value,
        });
    }
    Ok(value)
}
