use thiserror::Error;

/// Errors raised by the calculators and the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid pmf: {0}")]
    InvalidPmf(String),

    #[error("alphabet size mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("parameter `{name}` out of domain: {detail}")]
    Domain { name: &'static str, detail: String },

    #[error("Renyi entropy of order {order} is infinite on a pmf with zero entries")]
    InfiniteRenyi { order: f64 },

    #[error("enumeration refused: {count} types exceeds the guard of {limit}")]
    EnumerationGuard { count: f64, limit: u64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(name: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        name,
        detail: detail.into(),
    }
}
