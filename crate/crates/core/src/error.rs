use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A power series did not reach its tolerance within the term budget.
    #[error("series did not converge after {terms} terms (z = {z})")]
    Convergence { terms: usize, z: f64 },

    /// The argument lies in the region where the Legendre series is not
    /// evaluated (close to the antipode of the expansion point).
    #[error("argument outside the convergent series region: z = {z} > {limit}")]
    SeriesRegion { z: f64, limit: f64 },

    #[error("evanescent regime: k_eff^2 = {0} <= 0")]
    Evanescent(f64),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("eigensolver did not converge: {0}")]
    Eigensolver(String),

    /// A collective decay rate came out negative beyond round-off.
    #[error("passivity violation: collective decay rate {gamma:e} is negative")]
    Passivity { gamma: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
