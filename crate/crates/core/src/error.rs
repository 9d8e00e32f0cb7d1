use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no irreducible root system of type {family}{rank}")]
    InvalidType { family: String, rank: usize },

    #[error("{what} has {size} elements, above the configured cap of {cap}")]
    CapExceeded { what: String, size: u128, cap: u128 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no hard Lefschetz property: {0}")]
    NoHlp(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
