use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("grid error: {0}")]
    Grid(String),

    #[error("{what} did not converge: achieved {achieved:.3e}, required {required:.3e}")]
    Convergence {
        what: String,
        achieved: f64,
        required: f64,
    },

    #[error("bracket not found: {0}")]
    Bracket(String),

    #[error("tail fit failed: {0}")]
    Fit(String),

    #[error("eigensolver error: {0}")]
    Eigen(String),

    #[error("linear solve failed: {0}")]
    Linear(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn grid(msg: impl Into<String>) -> Self {
        Error::Grid(msg.into())
    }
}
