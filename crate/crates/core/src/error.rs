use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("axis {axis} out of range for rank {rank}")]
    AxisOutOfRange { axis: usize, rank: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polynomial is not divisible by the linear form")]
    NotDivisible,
    #[error("linear form is zero")]
    ZeroLinearForm,
    #[error("unsupported root system family: {0}")]
    UnsupportedFamily(String),
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: String, rank: usize },
    #[error("group closure exceeded {0} elements")]
    ClosureCap(usize),
    #[error("invalid multiplicity: {0}")]
    InvalidMultiplicity(String),
    #[error("singular matrix")]
    Singular,
    #[error("time parameter must be nonzero")]
    ZeroTime,
    #[error("time parameter must be positive")]
    NonPositiveTime,
    #[error("inputs must be homogeneous of a common degree (got degrees {0} and {1})")]
    NotHomogeneous(i64, i64),
    #[error("series did not reach tolerance {tolerance:e} within degree {max_degree} (tail bound {tail:e})")]
    CapExceeded { max_degree: u32, tolerance: f64, tail: f64 },
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
