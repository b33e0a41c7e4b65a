//! Finite-difference check that a radially symmetric function solves the
//! source-free Helmholtz equation on a surface.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::surface::{SurfaceDescriptor, SurfaceKind};

/// Interior points sampled across the window.
const SAMPLES: usize = 101;
/// Central angles beyond this are too close to the antipode.
const ANTIPODE_EXCLUSION: f64 = 160.0 * PI / 180.0;

/// Largest `|(Δ + k²) G| / (k² |G|)` over `window`.
///
/// `window` holds separations: distances on the plane, central angles in
/// radians on the sphere. The Laplace–Beltrami operator for a function of
/// separation alone is `G'' + G'/r` on the plane and
/// `(G'' + cot θ G') / R²` on the sphere; both are discretized with second
/// order central differences of step `h`.
pub fn helmholtz_residual<F>(
    green: F,
    surface: &SurfaceDescriptor,
    k_eff: f64,
    window: (f64, f64),
    h: f64,
) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let (lo, hi) = window;
    if !(k_eff >= 0.0 && k_eff.is_finite()) {
        return Err(Error::Domain(format!("k_eff must be finite and >= 0, got {k_eff}")));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Domain(format!("empty window [{lo}, {hi}]")));
    }
    if !(h > 0.0) || lo - h <= 0.0 {
        return Err(Error::Domain(format!(
            "window [{lo}, {hi}] with step {h} reaches the source"
        )));
    }
    // step measured as a length on the surface
    let arc_scale = match surface.kind() {
        SurfaceKind::Plane => 1.0,
        SurfaceKind::SpherePatch { radius } => {
            if hi + h >= ANTIPODE_EXCLUSION {
                return Err(Error::Domain(format!(
                    "window end {:.2}° enters the antipode exclusion zone",
                    hi.to_degrees()
                )));
            }
            radius
        }
        SurfaceKind::Free3D => {
            return Err(Error::Domain("residual check needs a 2D surface".into()));
        }
    };
    if k_eff > 0.0 && h * arc_scale > TAU / k_eff / 100.0 {
        return Err(Error::Domain(format!(
            "step {h} is coarser than a hundredth of the wavelength"
        )));
    }

    let mut worst = 0.0f64;
    for i in 0..SAMPLES {
        let s = lo + (hi - lo) * i as f64 / (SAMPLES - 1) as f64;
        let g0 = green(s)?;
        let gp = green(s + h)?;
        let gm = green(s - h)?;
        let d2 = (gp - g0 * 2.0 + gm) / (h * h);
        let d1 = (gp - gm) / (2.0 * h);
        let laplacian = match surface.kind() {
            SurfaceKind::Plane => d2 + d1 / s,
            _ => (d2 + d1 / s.tan()) / (arc_scale * arc_scale),
        };
        let num = (laplacian + g0 * (k_eff * k_eff)).norm();
        if num == 0.0 {
            continue;
        }
        worst = worst.max(num / (k_eff * k_eff * g0.norm()));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_with_zero_wavenumber() {
        let r = helmholtz_residual(
            |_| Ok(Complex64::new(2.0, -1.0)),
            &SurfaceDescriptor::plane(),
            0.0,
            (0.5, 2.0),
            1e-3,
        )
        .unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn detects_a_non_solution() {
        // e^{ikr} is not a 2D radial solution: the G'/r term is left over
        let k = 3.0;
        let r = helmholtz_residual(
            |r| Ok(Complex64::new(0.0, k * r).exp()),
            &SurfaceDescriptor::plane(),
            k,
            (1.0, 3.0),
            1e-3,
        )
        .unwrap();
        assert!(r > 0.05);
    }

    #[test]
    fn spherical_zonal_harmonic() {
        // P_2(cos θ) on the unit sphere: Δ P_2 = −6 P_2, so k² = 6
        let k = 6f64.sqrt();
        let p2 = |t: f64| Ok(Complex64::new(1.5 * t.cos().powi(2) - 0.5, 0.0));
        let s = SurfaceDescriptor::sphere(1.0).unwrap();
        let r = helmholtz_residual(p2, &s, k, (0.3, 0.8), 1e-3).unwrap();
        assert!(r < 1e-5, "residual {r}");
    }

    #[test]
    fn preconditions() {
        let f = |_: f64| Ok(Complex64::new(1.0, 0.0));
        let plane = SurfaceDescriptor::plane();
        assert!(helmholtz_residual(f, &plane, 1.0, (0.0, 1.0), 1e-3).is_err());
        assert!(helmholtz_residual(f, &plane, 1.0, (2.0, 1.0), 1e-3).is_err());
        assert!(helmholtz_residual(f, &plane, 100.0, (1.0, 2.0), 1e-2).is_err());
        let s = SurfaceDescriptor::sphere(1.0).unwrap();
        assert!(helmholtz_residual(f, &s, 1.0, (0.5, 2.9), 1e-3).is_err());
        let free = SurfaceDescriptor::free3d();
        assert!(helmholtz_residual(f, &free, 1.0, (0.5, 1.0), 1e-3).is_err());
    }
}
