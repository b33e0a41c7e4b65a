//! Independent verification engines.
//!
//! Nothing here calls into `specfun`, `greens` or `collective`: each oracle
//! reaches its answer by a different route so that agreement between the two
//! is meaningful.

mod circulant;
mod double_double;
mod residual;
mod series;

pub use circulant::{circulant_eigenvalues, CirculantRow};
pub use double_double::DoubleDouble;
pub use residual::helmholtz_residual;
pub use series::{highprec_series, HighPrecValue, SeriesKind};
