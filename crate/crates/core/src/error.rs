use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("attribute `{0}` has zero variance")]
    ZeroVariance(String),

    #[error("correlation matrix is singular (condition number {condition:e}); enable ridge_fallback to regularize")]
    SingularCorrelation { condition: f64 },

    #[error("no factor retained: largest eigenvalue {largest:.6} is below the threshold {threshold}")]
    NoFactorRetained { threshold: f64, largest: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("incomplete composite definition: {0}")]
    IncompleteDefinition(String),

    #[error("alpha {0} is outside [0, 1]")]
    AlphaRange(f64),

    #[error("k = {k} is outside [1, {max}]")]
    KRange { k: usize, max: usize },

    #[error("region `{0}` has all-zero factor scores")]
    ZeroDenominator(String),

    #[error("unknown region `{0}`")]
    UnknownRegion(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
