use std::io;

use thiserror::Error;

/// Everything that can go wrong while evaluating, parsing or auditing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("division by an enclosure containing zero")]
    DivisionByZeroEnclosure,

    #[error("argument encloses a pole: {0}")]
    PoleEnclosure(String),

    #[error("precision exhausted: target radius {target} not reached within {cap} bits")]
    PrecisionExhausted { target: String, cap: u32 },

    #[error("line {line}: malformed entry {text:?}")]
    MalformedLine { line: usize, text: String },

    #[error("line {line}: ordinate does not exceed the previous one")]
    NonMonotonicOrdinates { line: usize },

    #[error("line {line}: ordinate {value} is not above 2*pi")]
    OrdinateTooSmall { line: usize, value: String },

    #[error("ordinate {0} does not bracket a sign change of xi on the critical line")]
    NoSignChange(String),

    #[error("height {requested} lies beyond the catalog cutoff {cutoff}")]
    TBeyondCatalog { requested: String, cutoff: String },

    #[error("height {0} is below the validated tail envelope (T >= 100)")]
    TTooSmall(String),

    #[error("catalog is empty")]
    EmptyCatalog,

    #[error("catalog contains off-line zeros; direct sums need an on-line catalog")]
    OffLineZeros,

    #[error("counting-function slack check failed at T = {at}: |N(T) - main| = {deviation} > {allowed}")]
    TailValidation {
        at: String,
        deviation: String,
        allowed: String,
    },

    #[error("catalog file version mismatch: {0}")]
    VersionMismatch(String),

    #[error("catalog file checksum mismatch")]
    ChecksumMismatch,

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_)
            | Error::MalformedLine { .. }
            | Error::VersionMismatch(_)
            | Error::ChecksumMismatch
            | Error::Io(_) => 2,
            Error::DomainViolation(_)
            | Error::DivisionByZeroEnclosure
            | Error::PoleEnclosure(_)
            | Error::TBeyondCatalog { .. }
            | Error::TTooSmall(_)
            | Error::EmptyCatalog
            | Error::OffLineZeros => 3,
            Error::PrecisionExhausted { .. } => 4,
            Error::NonMonotonicOrdinates { .. }
            | Error::OrdinateTooSmall { .. }
            | Error::NoSignChange(_)
            | Error::TailValidation { .. } => 5,
        }
    }
}
