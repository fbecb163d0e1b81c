use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in the golden field")]
    DivisionByZero,

    #[error("argument outside the domain of {function}: {value}")]
    Domain { function: &'static str, value: f64 },

    #[error("point ({a}, {b}) is not in the section")]
    OutsideSection { a: f64, b: f64 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot parse golden number from {0:?}")]
    Parse(String),

    #[error("empty sample")]
    EmptySample,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
