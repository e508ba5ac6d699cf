use thiserror::Error;

use crate::gauss_code::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at `{token}`: {message}")]
    Syntax { token: String, message: String },

    #[error("invalid code: {}", join_violations(.0))]
    Validation(Vec<Violation>),

    #[error("diagram is not Cheng colorable (component imbalances {imbalances:?})")]
    Uncolorable { imbalances: Vec<i64> },

    #[error("unknown crossing {0}")]
    UnknownCrossing(u32),

    #[error("expected a one-component code, found {0} components")]
    NotAKnot(usize),

    #[error("coloring does not satisfy the labeling rule")]
    InvalidColoring,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("move site no longer matches the code: {0}")]
    StaleSite(String),

    #[error("{value} is not a unit modulo {modulus}")]
    NonUnit { value: i64, modulus: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Uncolorable { .. } => 3,
            Error::Internal(_) => 4,
            _ => 2,
        }
    }
}
