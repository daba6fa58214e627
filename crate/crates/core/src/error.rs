use thiserror::Error;

/// Errors raised by the algebra and decomposition engine.
///
/// Mathematical verdicts (inconsistency, a missing algebraic solution, a
/// simplicity violation) are values, not errors. Errors are reserved for
/// precondition failures and exhausted resource caps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a divisor variable: {0}")]
    NotADivisorVariable(String),
    #[error("both inputs are zero")]
    BothZero,
    #[error("irreducible pair: {0}")]
    IrreduciblePair(String),
    #[error("factorization cap exceeded: {0}")]
    FactorizationCap(String),
    #[error("extension cap exceeded: degree {degree} > {cap}")]
    ExtensionCap { degree: usize, cap: usize },
    #[error("fuel exhausted after {0} iterations at {1}")]
    FuelExhausted(usize, String),
    #[error("singular initial datum: {0}")]
    SingularInitialDatum(String),
    #[error("initial datum cap: {0}")]
    InitialDatumCap(String),
    #[error("incompatible expansion points")]
    IncompatiblePoints,
    #[error("dimension precondition violated: expected {expected}, found {found}")]
    Dimension { expected: String, found: String },
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("raise order: {0}")]
    RaiseOrder(String),
    #[error("symbolic shift rejected: {0}")]
    SymbolicShift(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("{message} (line {line}, column {column})")]
    Parse {
        message: String,
        line: usize,
        column: usize,
    },
}

impl Error {
    /// True for errors caused by an exhausted degree, extension or fuel cap.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::FactorizationCap(_)
                | Error::ExtensionCap { .. }
                | Error::FuelExhausted(..)
                | Error::InitialDatumCap(_)
                | Error::RaiseOrder(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
