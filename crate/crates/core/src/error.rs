use thiserror::Error;

pub type Result<T> = std::result::Result<T, HurstError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HurstError {
    #[error("non-positive price {price} at index {index}")]
    NonPositivePrice { index: usize, price: f64 },

    #[error("series too short: need at least {needed} points, got {got}")]
    SeriesTooShort { needed: usize, got: usize },

    #[error("series has {dates} dates but {values} values")]
    LengthMismatch { dates: usize, values: usize },

    #[error("dates must be strictly increasing (index {index})")]
    UnorderedDates { index: usize },

    #[error("degenerate regression: {0}")]
    DegenerateRegression(String),

    #[error("non-finite regression input at point {0}")]
    NonFiniteInput(usize),

    #[error("signal is identically zero")]
    ZeroSignal,

    #[error("invalid estimator configuration: {0}")]
    InvalidConfig(String),

    #[error("H must lie in (0, 1), got {0}")]
    InvalidH(f64),

    #[error("fBm generation failed: {0}")]
    EmbeddingFailure(String),

    #[error("empty universe")]
    EmptyUniverse,

    #[error("too few observations: need {needed}, got {got}")]
    TooFewObservations { needed: usize, got: usize },
}
