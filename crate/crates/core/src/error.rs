use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every domain error the library can raise.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed rational: denominator is zero")]
    ZeroDenominator,

    #[error("context mismatch: `{left}` vs `{right}`")]
    ContextMismatch { left: String, right: String },

    #[error("coalgebra `{0}` has no star operation")]
    StarUndefined(String),

    #[error("key {key} is out of range for `{context}`")]
    KeyOutOfRange { key: String, context: String },

    #[error("monomial {key} does not belong to coalgebra `{context}`")]
    WrongCoalgebra { key: String, context: String },

    #[error("invalid weight domain: {0}")]
    InvalidWeightDomain(String),

    #[error("form `{form}` cannot be bound to coalgebra `{coalgebra}`")]
    FormMismatch { form: String, coalgebra: String },

    #[error("element not in the projected subcoalgebra; offending keys: {}", keys.join(", "))]
    NotInSubcoalgebra { keys: Vec<String> },

    #[error("coalgebra `{0}` has no degree function")]
    NoDegree(String),

    #[error("matrix is not hermitian")]
    NotHermitian,

    #[error("matrix is not square")]
    NotSquare,

    #[error("operator is not diagonal on the window: {0}")]
    NotDiagonal(String),

    #[error("holomorphic classification undefined for `{0}`")]
    Unclassified(String),

    #[error("window error: {0}")]
    InvalidWindow(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown spec `{0}`")]
    UnknownSpec(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable machine-readable name, used in structured diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::ZeroDenominator => "ZeroDenominator",
            Error::ContextMismatch { .. } => "ContextMismatch",
            Error::StarUndefined(_) => "StarUndefined",
            Error::KeyOutOfRange { .. } => "KeyOutOfRange",
            Error::WrongCoalgebra { .. } => "WrongCoalgebra",
            Error::InvalidWeightDomain(_) => "InvalidWeightDomain",
            Error::FormMismatch { .. } => "FormMismatch",
            Error::NotInSubcoalgebra { .. } => "NotInSubcoalgebra",
            Error::NoDegree(_) => "NoDegree",
            Error::NotHermitian => "NotHermitian",
            Error::NotSquare => "NotSquare",
            Error::NotDiagonal(_) => "NotDiagonal",
            Error::Unclassified(_) => "Unclassified",
            Error::InvalidWindow(_) => "InvalidWindow",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownSpec(_) => "UnknownSpec",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}
