//! Real special functions used by the surface Green functions.
//!
//! Everything here is implemented from scratch: Bessel `J0`, `Y0` and the
//! Hankel function `H0^(1)`, the Gauss series `2F1(a, b; 1; z)`, and the
//! Ferrers (on-the-cut) Legendre functions `P_ν`, `Q_ν` of arbitrary real
//! degree together with their derivatives.

mod bessel;
mod digamma;
mod hypergeometric;
mod legendre;

pub use bessel::{bessel_j0, bessel_y0, hankel1_0, BESSEL_CROSSOVER};
pub use digamma::{digamma, EULER_GAMMA};
pub use hypergeometric::hyp2f1_unit_c;
pub use legendre::{
    legendre_p, legendre_p_prime, legendre_pq_theta, legendre_q, legendre_q_prime, LegendreValues,
    MAX_SERIES_Z,
};
pub(crate) use legendre::values_at_z;

use crate::error::{Error, Result};

/// Truncation control for the power series in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    max_terms: usize,
    rel_tol: f64,
}

impl SeriesControl {
    pub fn new(max_terms: usize, rel_tol: f64) -> Result<Self> {
        if max_terms < 50 {
            return Err(Error::InvalidParameter(format!(
                "max_terms must be at least 50, got {max_terms}"
            )));
        }
        if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must lie in (0, 1e-3], got {rel_tol}"
            )));
        }
        Ok(Self { max_terms, rel_tol })
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 10_000,
            rel_tol: 1e-12,
        }
    }
}

/// Degree `ν ≥ 0` of a Legendre function.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Degree(f64);

impl Degree {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Legendre degree must be finite and non-negative, got {nu}"
            )));
        }
        Ok(Self(nu))
    }

    /// Non-negative root of `ν(ν+1) = k² R²`.
    ///
    /// Written as `2k²R² / (1 + sqrt(1 + 4k²R²))` so that small `kR` does not
    /// cancel.
    pub fn from_wavenumber(k_eff: f64, radius: f64) -> Result<Self> {
        if !(k_eff >= 0.0 && k_eff.is_finite()) || !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "need k_eff >= 0 and radius > 0, got k_eff = {k_eff}, radius = {radius}"
            )));
        }
        let kr2 = (k_eff * radius).powi(2);
        Self::new(2.0 * kr2 / (1.0 + (1.0 + 4.0 * kr2).sqrt()))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `Some(n)` when the degree is exactly the integer `n`.
    pub fn as_integer(self) -> Option<u64> {
        (self.0.fract() == 0.0 && self.0 < 2f64.powi(52)).then_some(self.0 as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_control_bounds() {
        assert!(SeriesControl::new(49, 1e-12).is_err());
        assert!(SeriesControl::new(50, 2e-3).is_err());
        assert!(SeriesControl::new(50, 0.0).is_err());
        let ctl = SeriesControl::new(50, 1e-3).unwrap();
        assert_eq!(ctl.max_terms(), 50);
        let d = SeriesControl::default();
        assert_eq!((d.max_terms(), d.rel_tol()), (10_000, 1e-12));
    }

    #[test]
    fn degree_validation() {
        assert!(Degree::new(-0.1).is_err());
        assert!(Degree::new(f64::NAN).is_err());
        assert_eq!(Degree::new(3.0).unwrap().as_integer(), Some(3));
        assert_eq!(Degree::new(3.5).unwrap().as_integer(), None);
    }

    #[test]
    fn degree_from_wavenumber_solves_quadratic() {
        for &(k, r) in &[(1.0, 0.5), (2.0 * std::f64::consts::PI, 1.0), (5.0, 1.0), (1e-4, 1.0)] {
            let nu = Degree::from_wavenumber(k, r).unwrap().value();
            let kr2: f64 = (k * r) * (k * r);
            assert!((nu * (nu + 1.0) - kr2).abs() <= 1e-12 * kr2.max(1e-300));
        }
        // large radius: ν → kR − 1/2
        let nu = Degree::from_wavenumber(2.0, 1e4).unwrap().value();
        assert!((nu - (2e4 - 0.5)).abs() < 1e-4);
    }
}
