use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("{what} exceeds the enumeration limit ({size} > {limit})")]
    Scale {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("singular point: {0}")]
    Singular(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("sparsification failed: {0}")]
    Sparsification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// Process exit code: 2 for anything the caller can fix, 3 for solver trouble.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Scale { .. } | Error::Io(_) | Error::Json(_) | Error::Csv(_) => 2,
            _ => 3,
        }
    }
}
