use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live over different variable tables")]
    VarTableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` is neither mapped nor present in the target table")]
    UnmappedVariable(String),
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("desk-scale exceeded after {steps} reduction steps")]
    DeskScaleExceeded { steps: u64 },
    #[error("inconsistent weight constraints: {0}")]
    InconsistentWeights(String),
    #[error("enumeration cap reached for target {0}")]
    CapReached(String),
    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
