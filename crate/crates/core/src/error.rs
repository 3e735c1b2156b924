use thiserror::Error;

/// Errors produced by solvers and constructors in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("utility at position {index} is negative ({value}); utilities must be positive")]
    NegativeUtility { index: usize, value: String },

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("epsilon must be positive with integral 1/eps, got {0}")]
    InvalidEpsilon(String),

    #[error(
        "grid precondition violated: good {good} has utility {utility} >= mean valuation {mu}; \
         preprocess the instance first"
    )]
    GridPrecondition {
        good: usize,
        utility: u64,
        mu: String,
    },

    #[error("{0}")]
    CapacityExceeded(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("number out of supported range: {0}")]
    NumberRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
