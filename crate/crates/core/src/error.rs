use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid tree shape: {0}")]
    InvalidShape(String),

    #[error("vertex (generation {generation}, offset {offset}) is outside the tree")]
    VertexOutOfRange { generation: usize, offset: usize },

    #[error("descending {steps} generations from generation {generation} exceeds depth {depth}")]
    DepthOverflow {
        generation: usize,
        steps: usize,
        depth: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dense size {rows} exceeds cap {cap}")]
    CapExceeded { rows: usize, cap: usize },

    #[error("grid of {grid} points is too coarse, need at least {required}")]
    GridTooCoarse { grid: usize, required: usize },

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operation requires uniform weights")]
    NonUniformWeights,

    #[error("kernel rejected: eigenvalue {eigenvalue} outside [0, 1]")]
    KernelRejected { eigenvalue: f64 },

    #[error("too few samples: {got} < {min}")]
    TooFewSamples { got: usize, min: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigensolver did not converge")]
    NoConvergence,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
