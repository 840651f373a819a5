use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A surface or point specification that cannot be realized.
    #[error("malformed surface specification: {0}")]
    Structure(String),

    #[error("divisor classes live on different models: {0}")]
    ModelMismatch(String),

    /// Caller supplied arguments outside an operation's domain.
    #[error("invalid input: {0}")]
    Usage(String),

    /// A linear or quadratic system without a unique solution.
    #[error("system not uniquely solvable: {0}")]
    Unsolvable(String),

    /// A certificate or criterion was checked and failed.
    #[error("refuted: {0}")]
    Refuted(String),

    /// Two independent computation routes disagree.
    #[error("cross-check disagreement: {0}")]
    CrossCheck(String),

    #[error("scenario: {0}")]
    Scenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
