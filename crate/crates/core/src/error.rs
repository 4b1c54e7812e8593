use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}` = {value}: {reason}")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("parameters are not symmetric: {0}")]
    NotSymmetric(String),

    #[error("dynamics are not stable (max Im λ = {max_im:e}); no steady state exists")]
    Unstable { max_im: f64 },

    #[error("linear system is singular: {0}")]
    Singular(String),

    #[error("eigenvalue iteration did not converge for {dim}x{dim} matrix ({context})")]
    EigenFailure { dim: usize, context: String },

    #[error("cannot bracket the stability boundary: {0}")]
    Bracket(String),

    #[error("spin current without pump is {0:e}; enhancement ratio is undefined")]
    ZeroDenominator(f64),

    #[error("unknown sweep axis `{0}`")]
    UnknownAxis(String),

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

impl Error {
    /// Coarse classification used by front ends to pick exit codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidParameter { .. }
            | Error::NotSymmetric(_)
            | Error::UnknownAxis(_)
            | Error::UnknownMetric(_)
            | Error::InvalidGrid(_) => ErrorKind::Input,
            Error::Unstable { .. } | Error::Bracket(_) | Error::ZeroDenominator(_) => {
                ErrorKind::Domain
            }
            Error::Singular(_) | Error::EigenFailure { .. } => ErrorKind::Numerical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Domain,
    Numerical,
}
