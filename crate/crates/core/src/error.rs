use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unit error: cannot convert {from} to {to}")]
    Unit { from: String, to: String },

    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("calibration error: {0}")]
    Calibration(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("pole proximity: {0}")]
    PoleProximity(String),

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("unsolvable: {0}")]
    Unsolvable(String),

    #[error("linear algebra failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for errors that come from the numerics (poles, missing roots,
    /// failed decompositions) rather than from bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::PoleProximity(_)
                | Error::NoRoot(_)
                | Error::Unsolvable(_)
                | Error::Numerical(_)
                | Error::Calibration(_)
        )
    }
}
