use thiserror::Error;

/// Errors produced by the simulator and the analytic evaluators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("gains must be ordered: strong gain {strong} is below weak gain {weak}")]
    UnorderedGains { strong: f64, weak: f64 },

    #[error("exponential integral is undefined at x = 0")]
    EiDomain,

    #[error("series of {terms} terms exceeds the supported limit of {limit}")]
    SeriesTooLarge { terms: u128, limit: u128 },

    #[error("quadrature did not converge: estimated error {achieved:e} exceeds tolerance {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
