use thiserror::Error;

use crate::equation::ValidationReport;
use crate::parser::ParseError;
use crate::QPoly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("resultant of two zero polynomials is undefined")]
    BothZero,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("separation bound requires degree >= 2 (got {0})")]
    DegreeTooSmall(usize),
    #[error("minimal polynomial is reducible over the rationals: factor {factor}")]
    Reducible { factor: QPoly },
    #[error("root hint is not strictly closer to one root than to all others")]
    AmbiguousHint,
    #[error("invalid minimal polynomial: {0}")]
    InvalidMinPoly(String),
    #[error("irreducibility check supports degree <= 8 (got {0})")]
    UnsupportedDegree(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("zero test needs {required_bits} bits of precision, limit is {max_bits}")]
    PrecisionExhausted { required_bits: u64, max_bits: u64 },
    #[error("precondition failed: {reason}")]
    PreconditionFailed {
        reason: String,
        validation: Option<ValidationReport>,
    },
    #[error("structure mismatch: {0}")]
    StructureMismatch(String),
    #[error("internal consistency failure: {0}")]
    InternalInconsistency(String),
    #[error("root isolation failed: {0}")]
    RootIsolation(String),
    #[error("parse error at {0}")]
    Parse(ParseError),
}

impl Error {
    pub(crate) fn precondition(reason: impl Into<String>) -> Self {
        Error::PreconditionFailed {
            reason: reason.into(),
            validation: None,
        }
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}
