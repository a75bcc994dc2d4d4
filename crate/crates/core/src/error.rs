use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("{0} is not a prime below 2^31")]
    InvalidModulus(u64),

    #[error("parse error in {input:?}: {message}")]
    Parse { input: String, message: String },

    #[error(
        "negative exponent in {0:?}: Laurent monomials are not written directly; \
         multiply the entry by a monomial (loci are saturated at t1*...*tN)"
    )]
    NegativeExponent(String),

    #[error("coordinate {0} of the point is zero; characters live on the torus")]
    ZeroCoordinate(usize),

    #[error("coefficient domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("integer coefficients: reduce coefficients first")]
    IntegerCoefficients,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("shape mismatch at degree {degree}: {message}")]
    ShapeMismatch { degree: i64, message: String },

    #[error("complex condition violated: d^{} * d^{degree} != 0", degree + 1)]
    ComplexConditionViolated { degree: i64 },

    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(input: &str, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}
