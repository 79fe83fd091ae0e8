use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    LowerExceedsUpper { lower: f64, upper: f64 },
    #[error("interval bounds must be finite (got [{lower}, {upper}])")]
    NonFiniteBound { lower: f64, upper: f64 },
    #[error("a sample needs at least one interval")]
    EmptySample,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coordinate {coordinate} has zero dispersion but the intervals differ there")]
    ZeroDispersion { coordinate: usize },
    #[error("k = {k} exceeds the number of distinct items ({distinct})")]
    KTooLarge { k: usize, distinct: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("no central-interval solver for {metric} with exponent {exponent}")]
    UnsupportedPairing { metric: String, exponent: String },
    #[error("infeasible rectangle: mu in [{m_minus}, {m_plus}], lambda in [{l_minus}, {l_plus}]")]
    InfeasibleRectangle {
        m_minus: f64,
        m_plus: f64,
        l_minus: f64,
        l_plus: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
