use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The distribution has no mass on positive degrees, so neighbor-degree
    /// statistics are undefined.
    #[error("degenerate distribution: {0}")]
    DegenerateDistribution(String),

    #[error("pathological distribution: {0}")]
    PathologicalDistribution(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("{stage}: no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence {
        stage: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("{0}: the degree distribution is below the phase transition (no giant component)")]
    BelowTransition(&'static str),

    #[error("no data: {0}")]
    NoData(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    /// True for failures of the numerical pipeline rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Convergence { .. }
                | Error::BelowTransition(_)
                | Error::DegenerateDistribution(_)
                | Error::PathologicalDistribution(_)
                | Error::InvariantViolation(_)
        )
    }
}
