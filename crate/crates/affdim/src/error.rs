use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated an operation precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An enumeration or rasterization request exceeded its budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A bisection could not reach the requested tolerance because the
    /// series enclosures stayed too wide even at maximal precision.
    #[error("tolerance not reached: {0}")]
    ToleranceNotReached(String),

    /// Reading or writing an artifact file failed.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code matching the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::Io(_) => 1,
            Error::BudgetExceeded(_) => 2,
            Error::ToleranceNotReached(_) => 3,
        }
    }
}
