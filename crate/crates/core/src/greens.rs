//! Scalar surface Green functions for the normal field component, and the
//! free-space `zz` dyadic component used as a baseline.
//!
//! | family       | `G(separation)`                                   |
//! |--------------|---------------------------------------------------|
//! | plane        | `(i/4) H0^(1)(k r)`                               |
//! | sphere, open | `(1/2π) Q_ν(cos θ) + (i/4) P_ν(cos θ)`            |
//! | sphere, closed | `(1/2π) P_ν(−cos θ)` (real, standing wave)      |
//! | free 3D `zz` | `e^{ikr}/(4πr) (1 + (ikr − 1)/(kr)²)`             |
//!
//! with `ν(ν+1) = k_eff² R²`. The open-sphere form reduces to the plane form
//! as `R → ∞` at fixed arc length and diverges toward the antipode, so it is
//! only evaluated for central angles below [`THETA_MAX`].

use std::f64::consts::{FRAC_1_PI, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{self, hankel1_0, Degree, SeriesControl};
use crate::surface::{effective_wavenumber, OpticalParams, SurfaceDescriptor, SurfaceKind};

/// Largest central angle at which the open-sphere Green function is used.
pub const THETA_MAX: f64 = 160.0 * PI / 180.0;

/// `lim Im G` at coincidence for the plane and open-sphere functions.
pub const SURFACE_COINCIDENCE_IM: f64 = 0.25;

/// `lim Im G_zz` at coincidence in free space: `k/(6π)`.
pub fn free3d_coincidence_im(k: f64) -> f64 {
    k / (6.0 * PI)
}

/// One tabulated Green-function value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenSample {
    /// Distance, or central angle in radians on the sphere.
    pub separation: f64,
    pub value: Complex64,
}

/// `(i/4) H0^(1)(k_eff r)`.
pub fn green_plane(r: f64, k_eff: f64) -> Result<Complex64> {
    check_positive("separation", r)?;
    check_positive("k_eff", k_eff)?;
    Ok(Complex64::new(0.0, 0.25) * hankel1_0(k_eff * r)?)
}

/// Radiating Green function on a locally spherical patch of radius `R`.
pub fn green_sphere_open(theta: f64, radius: f64, k_eff: f64) -> Result<Complex64> {
    check_positive("radius", radius)?;
    check_positive("k_eff", k_eff)?;
    let degree = Degree::from_wavenumber(k_eff, radius)?;
    sphere_open_with_degree(theta, degree)
}

fn sphere_open_with_degree(theta: f64, degree: Degree) -> Result<Complex64> {
    if !(theta > 0.0 && theta < THETA_MAX) {
        return Err(Error::Domain(format!(
            "open-sphere Green function needs 0 < θ < {:.0}°, got {:.4}°",
            THETA_MAX.to_degrees(),
            theta.to_degrees()
        )));
    }
    let v = specfun::legendre_pq_theta(degree, theta, &SeriesControl::default())?;
    Ok(Complex64::new(0.5 * FRAC_1_PI * v.q, 0.25 * v.p))
}

/// Standing-wave Green function of the closed sphere, `(1/2π) P_ν(−cos θ)`.
///
/// Finite at the antipode; the series for `P_ν(−cos θ)` is not evaluated
/// near `θ = 0`, where this function diverges logarithmically.
pub fn green_sphere_closed(theta: f64, radius: f64, k_eff: f64) -> Result<f64> {
    check_positive("radius", radius)?;
    check_positive("k_eff", k_eff)?;
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::Domain(format!(
            "closed-sphere Green function needs 0 < θ <= π, got {theta}"
        )));
    }
    let degree = Degree::from_wavenumber(k_eff, radius)?;
    // −cos θ = 1 − 2 cos²(θ/2)
    let z = (0.5 * theta).cos().powi(2);
    let v = specfun::values_at_z(degree, z, false, &SeriesControl::default())?;
    Ok(0.5 * FRAC_1_PI * v.p)
}

/// `zz` component of the free-space dyadic Green function for two `z`
/// dipoles separated in the `xy` plane.
pub fn green_free3d_zz(r: f64, k: f64) -> Result<Complex64> {
    check_positive("separation", r)?;
    check_positive("k", k)?;
    let u = k * r;
    let (s, c) = u.sin_cos();
    let u2 = u * u;
    // e^{iu} (u² − 1 + iu) / (4π r u²)
    let re = c * (u2 - 1.0) - u * s;
    let im = if u < 0.5 {
        small_u_imag(u)
    } else {
        s * (u2 - 1.0) + u * c
    };
    Ok(Complex64::new(re, im) / (4.0 * PI * r * u2))
}

/// `(u² − 1) sin u + u cos u = Σ_{j≥1} (−1)^{j+1} 4j² u^{2j+1} / (2j+1)!`
fn small_u_imag(u: f64) -> f64 {
    let u2 = u * u;
    let mut power = u; // u^{2j+1} / (2j+1)!
    let mut sum = 0.0;
    for j in 1..12 {
        let jf = j as f64;
        power *= u2 / ((2.0 * jf) * (2.0 * jf + 1.0));
        let term = 4.0 * jf * jf * power;
        sum += if j % 2 == 1 { term } else { -term };
        if term < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Emitter-emitter propagator for one surface, with its parameters resolved
/// once so a whole matrix can be filled cheaply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GreenKernel {
    Plane { k_eff: f64 },
    SphereOpen { radius: f64, k_eff: f64, degree: Degree },
    Free3D { k: f64 },
}

impl GreenKernel {
    pub fn for_surface(surface: &SurfaceDescriptor, optics: &OpticalParams) -> Result<Self> {
        let k_eff = effective_wavenumber(optics, surface)?;
        Ok(match surface.kind() {
            SurfaceKind::Plane => Self::Plane { k_eff },
            SurfaceKind::SpherePatch { radius } => Self::SphereOpen {
                radius,
                k_eff,
                degree: Degree::from_wavenumber(k_eff, radius)?,
            },
            SurfaceKind::Free3D => Self::Free3D { k: k_eff },
        })
    }

    /// Value at geodesic distance `d` (arc length on the sphere).
    pub fn at_distance(&self, d: f64) -> Result<Complex64> {
        match *self {
            Self::Plane { k_eff } => green_plane(d, k_eff),
            Self::SphereOpen { radius, degree, .. } => sphere_open_with_degree(d / radius, degree),
            Self::Free3D { k } => green_free3d_zz(d, k),
        }
    }

    /// `lim_{d→0} Im G`, the single-emitter decay normalization.
    pub fn coincidence_im(&self) -> f64 {
        match *self {
            Self::Plane { .. } | Self::SphereOpen { .. } => SURFACE_COINCIDENCE_IM,
            Self::Free3D { k } => free3d_coincidence_im(k),
        }
    }

    pub fn wavenumber(&self) -> f64 {
        match *self {
            Self::Plane { k_eff } | Self::SphereOpen { k_eff, .. } => k_eff,
            Self::Free3D { k } => k,
        }
    }
}
