use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite feature value at row {row}, column {col}")]
    NonFiniteFeature { row: usize, col: usize },

    #[error("class {class} has no samples")]
    EmptyClass { class: usize },

    #[error("row {row} has {found} features, expected {expected}")]
    DimensionMismatch { row: usize, expected: usize, found: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("wrong matrix kind: expected {expected}, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },

    #[error("priors have {found} entries but the matrix has {expected} classes")]
    PriorMismatch { expected: usize, found: usize },

    #[error("value out of range: {0}")]
    RangeError(String),

    #[error("bad configuration: {0}")]
    BadConfig(String),

    #[error("internal invariant violated: {0}")]
    InvariantBreach(String),
}

impl Error {
    /// Stable identifier used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonFiniteFeature { .. } => "NonFiniteFeature",
            Error::EmptyClass { .. } => "EmptyClass",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::WrongKind { .. } => "WrongKind",
            Error::PriorMismatch { .. } => "PriorMismatch",
            Error::RangeError(_) => "RangeError",
            Error::BadConfig(_) => "BadConfig",
            Error::InvariantBreach(_) => "InvariantBreach",
        }
    }
}
