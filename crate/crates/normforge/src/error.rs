use thiserror::Error;

/// Unified error type for the whole crate.
///
/// Numerical code here follows one rule: a failed decomposition or a violated
/// precondition is reported as an explicit error, never as silent garbage in
/// the output. Callers that batch thousands of random instances rely on that.
#[derive(Debug, Error)]
pub enum Error {
    /// Shapes don't line up (ragged block grid, congruence size mismatch, ...).
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An SVD/eigendecomposition failed to converge or its cross-check failed.
    #[error("decomposition failed: {0}")]
    Decomposition(String),

    /// A matrix was handed to an operation whose class contract it violates
    /// (e.g. a non-PSD matrix passed to a PSD-only function calculus).
    #[error("matrix class violation: {0}")]
    Class(String),

    /// A scalar function was evaluated outside its domain, or a parameter is
    /// out of its legal range (negative input, Schatten p < 1, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Declared function flags disagree with numerically measured ones.
    #[error("registry integrity: {0}")]
    Registry(String),

    /// A statement id that is not in the catalog.
    #[error("unknown statement: {0}")]
    UnknownStatement(String),

    /// An instance does not satisfy the hypothesis signature of the statement
    /// it is being checked against. Names the predicate that failed.
    #[error("hypothesis violation for {statement}: {predicate}")]
    Hypothesis { statement: String, predicate: String },

    /// Non-finite value (NaN/Inf) where a finite one is required.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// Bad run configuration (CLI arguments, selector strings, ranges).
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn hypothesis(statement: impl Into<String>, predicate: impl Into<String>) -> Self {
        Error::Hypothesis { statement: statement.into(), predicate: predicate.into() }
    }
}
