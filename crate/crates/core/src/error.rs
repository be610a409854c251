use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad user input: parameters, profiles, flags.
    #[error("{0}")]
    InvalidInput(String),

    /// Evaluation requested at a point where the formula is singular.
    #[error("singular evaluation: {0}")]
    SingularPoint(String),

    #[error("degenerate kernel: {0}")]
    DegenerateKernel(String),

    /// Zero data fall outside the implemented case taxonomy.
    #[error("classification failed: {0}")]
    Classification(String),

    #[error("no admissible root: {0}")]
    NoAdmissibleRoot(String),

    /// A logarithm would need a branch other than the principal one.
    #[error("branch error: {0}")]
    Branch(String),

    /// The Riemann-Hilbert linear system is singular (blow-up point).
    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by the caller's configuration rather than the numerics.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::Io(_) | Error::Csv(_) | Error::Json(_)
        )
    }
}
