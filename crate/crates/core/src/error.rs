use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A state failed its normalization contract.
    #[error("normalization: {0}")]
    Norm(String),

    /// Iterative eigensolver ran out of its iteration budget.
    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:.3e}, tol {tol:.3e})")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        tol: f64,
    },

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// Linear fit on degenerate data (too few points or constant abscissae).
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("malformed data: {0}")]
    Parse(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
