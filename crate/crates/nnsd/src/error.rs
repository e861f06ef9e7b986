use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed configuration or arguments (bad grids, empty samples, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// Adaptive quadrature hit its subdivision limit before reaching the
    /// requested tolerance. Carries the partial value and the error bound
    /// it did reach.
    #[error("quadrature did not converge: value ~ {value:e}, error estimate {err_est:e}")]
    Quadrature { value: f64, err_est: f64 },

    /// A numerical procedure failed (non-convergence, rank deficiency,
    /// non-finite intermediate).
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// A self-consistency check on the data failed (e.g. a density whose
    /// norm is nowhere near one).
    #[error("integrity check failed: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
