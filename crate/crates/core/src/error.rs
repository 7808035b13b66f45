use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid body: {0}")]
    InvalidBody(String),

    /// The body is well formed but its complement in the orthant is unbounded,
    /// so the singularity at the origin is not isolated.
    #[error("complement of the body in the nonnegative orthant is unbounded")]
    UnboundedComplement,

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("point is not on the boundary of the body: {0}")]
    NotOnBoundary(String),

    #[error("weight must be nonzero with nonnegative finite coordinates")]
    InvalidWeight,

    #[error("the diagonal never enters the body")]
    DiagonalMiss,

    #[error("slice profile rejected: {0}")]
    Profile(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("monte carlo estimate rejected: {0}")]
    MonteCarlo(String),

    #[error("trend series rejected: {0}")]
    Trend(String),

    /// Two independent criteria that are proven equivalent returned different answers.
    #[error("routes disagree: {0}")]
    RouteDisagreement(String),

    #[error("body spec: {0}")]
    Spec(String),
}
