use thiserror::Error;

use crate::exactalg::Field;

/// Errors raised by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("polynomials live in different rings ({0} vs {1} variables)")]
    VariableMismatch(usize, usize),
    #[error("polynomial is not divisible by {divisor}")]
    NotDivisible { divisor: String },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("characteristic must be 0 or an odd prime, got {0}")]
    InvalidCharacteristic(u64),
    #[error("unsupported Cartan type {label}{rank}")]
    UnsupportedType { label: String, rank: usize },
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("edge label {0} vanishes over the chosen field")]
    ZeroLabel(String),
    #[error("vertex set is not downward closed at {0}")]
    IncompleteInterval(String),
    #[error("word {0} is not reduced")]
    NotReduced(String),
    #[error("moment graph fails the GKM property over {field}: {witness}")]
    NonGkmInput { field: Field, witness: String },
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error("closed form not applicable: {0}")]
    NotApplicable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::VariableMismatch(..) => "VariableMismatch",
            Error::NotDivisible { .. } => "NotDivisible",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::InvalidCharacteristic(_) => "InvalidCharacteristic",
            Error::UnsupportedType { .. } => "UnsupportedType",
            Error::InvalidWord(_) => "InvalidWord",
            Error::ZeroLabel(_) => "ZeroLabel",
            Error::IncompleteInterval(_) => "IncompleteInterval",
            Error::NotReduced(_) => "NotReduced",
            Error::NonGkmInput { .. } => "NonGKMInput",
            Error::InternalInvariant(_) => "InternalInvariant",
            Error::NotApplicable(_) => "NotApplicable",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
