use thiserror::Error;

/// Library-wide error type. Arithmetic never panics on user input: every
/// failure mode (division by zero, mixed fields, bad parses, blown deadlines)
/// surfaces as a variant here.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    /// Division in Q[x]/(f) hit a zero divisor: f is reducible and the gcd
    /// below is a proper factor. The modulus is caller-asserted irreducible,
    /// so this names the witness instead of guessing.
    #[error("element not invertible: modulus has factor {factor}")]
    NotInvertible { factor: String },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{name}`")]
    UnknownVariable { name: String },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("deadline exceeded during {0}")]
    DeadlineExceeded(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }

    /// True when the failure is deadline exhaustion rather than a wrong input
    /// or a genuinely failed check; callers report the two differently.
    pub fn is_deadline(&self) -> bool {
        matches!(self, Error::DeadlineExceeded(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
