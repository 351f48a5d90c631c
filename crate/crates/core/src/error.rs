use thiserror::Error;

/// Every failure the library reports.
///
/// Variants split into two families: malformed input (syntax, arity, bad
/// ranges) and mathematical preconditions that the caller's data does not
/// satisfy. [`ArtinError::is_input_error`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArtinError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("element does not belong to this ring context: {0}")]
    ContextMismatch(String),
    #[error("element is not a unit (valuation {0})")]
    NotAUnit(u32),
    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("coefficient not in ring: {0}")]
    CoefficientNotInRing(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("bad subset: {0}")]
    BadSubset(String),
    #[error("malformed colon data: {0}")]
    MalformedColonData(String),
    #[error("variable name collision: {0}")]
    VariableCollision(String),
    #[error("inconsistent algebra presentation: {0}")]
    PresentationInconsistent(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("Jacobian determinant is not a unit (valuation {0})")]
    JacobianNotUnit(u32),
    #[error("no progress: residual valuation stuck at {0}")]
    NoProgress(u32),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("enumeration budget exceeded: {needed} points > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("unsupported system kind: {0}")]
    UnsupportedKind(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

impl ArtinError {
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            ArtinError::InvalidRing(_)
                | ArtinError::ContextMismatch(_)
                | ArtinError::OutOfRange { .. }
                | ArtinError::Syntax { .. }
                | ArtinError::UnknownVariable(_)
                | ArtinError::CoefficientNotInRing(_)
                | ArtinError::ArityMismatch { .. }
                | ArtinError::BadSubset(_)
                | ArtinError::MalformedColonData(_)
                | ArtinError::VariableCollision(_)
                | ArtinError::PresentationInconsistent(_)
                | ArtinError::InvalidInput(_)
                | ArtinError::UnsupportedKind(_)
                | ArtinError::UnknownSuite(_)
        )
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            ArtinError::InvalidRing(_) => "InvalidRing",
            ArtinError::ContextMismatch(_) => "ContextMismatch",
            ArtinError::NotAUnit(_) => "NotAUnit",
            ArtinError::OutOfRange { .. } => "OutOfRange",
            ArtinError::Syntax { .. } => "SyntaxError",
            ArtinError::UnknownVariable(_) => "UnknownVariable",
            ArtinError::CoefficientNotInRing(_) => "CoefficientNotInRing",
            ArtinError::ArityMismatch { .. } => "ArityMismatch",
            ArtinError::BadSubset(_) => "BadSubset",
            ArtinError::MalformedColonData(_) => "MalformedColonData",
            ArtinError::VariableCollision(_) => "VariableCollision",
            ArtinError::PresentationInconsistent(_) => "PresentationInconsistent",
            ArtinError::InvalidInput(_) => "InvalidInput",
            ArtinError::JacobianNotUnit(_) => "JacobianNotUnit",
            ArtinError::NoProgress(_) => "NoProgress",
            ArtinError::HypothesisNotMet(_) => "HypothesisNotMet",
            ArtinError::PrecisionExhausted(_) => "PrecisionExhausted",
            ArtinError::NoSolution(_) => "NoSolution",
            ArtinError::BudgetExceeded { .. } => "BudgetExceeded",
            ArtinError::UnsupportedKind(_) => "UnsupportedKind",
            ArtinError::UnknownSuite(_) => "UnknownSuite",
        }
    }
}

pub type Result<T> = std::result::Result<T, ArtinError>;
