//! Photon-mediated dipole-dipole interactions and collective super/subradiant
//! states for rings of normally oriented emitters embedded in thin planar and
//! locally spherical waveguides.
//!
//! All lengths are measured in units of the free-space wavelength, so the
//! free-space wavenumber is `2π`. Collective spectra are reported in units of
//! the single-emitter decay rate inside the structure.

pub mod cli;
pub mod collective;
pub mod error;
pub mod greens;
pub mod oracle;
pub mod specfun;
pub mod surface;

pub use error::{Error, Result};
