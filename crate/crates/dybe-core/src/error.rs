use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("t = {power} is not coprime to N = {order}; the root would not be primitive")]
    NotPrimitive { order: u64, power: i64 },
    #[error("root of order {order} does not live in the cyclotomic field of order {field}")]
    RootOutsideField { order: u64, field: u64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("{0} does not converge: {1}")]
    NoConvergence(String, String),
}

pub type Result<T> = std::result::Result<T, Error>;
