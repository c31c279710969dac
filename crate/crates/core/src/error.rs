use thiserror::Error;

/// Errors raised by constructors and by the enumeration machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature mismatch: symbol `{0}` is missing or has the wrong arity")]
    SignatureMismatch(String),

    #[error("malformed map: {0}")]
    MalformedMap(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("enumeration budget exceeded: {what} needs {required} candidates, budget is {budget}")]
    Budget {
        what: String,
        required: u128,
        budget: u64,
    },

    #[error("vacuous check: {0}")]
    Vacuous(String),

    #[error("directionality error: {0}")]
    Directionality(String),

    #[error("law violation: {0}")]
    LawViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
