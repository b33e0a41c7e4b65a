//! Surfaces, optical parameters, effective wavenumber and emitter placement.
//!
//! Lengths are in units of the free-space wavelength `λ0`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::greens::THETA_MAX;

/// Free-space wavenumber in units of `1/λ0`.
pub const K0: f64 = TAU;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceKind {
    Plane,
    SpherePatch { radius: f64 },
    /// Emitters in homogeneous 3D space; no surface confinement.
    Free3D,
}

/// A surface together with its Gaussian (`K`) and mean (`H`) curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceDescriptor {
    kind: SurfaceKind,
    gaussian_curvature: f64,
    mean_curvature: f64,
}

impl SurfaceDescriptor {
    pub fn plane() -> Self {
        Self {
            kind: SurfaceKind::Plane,
            gaussian_curvature: 0.0,
            mean_curvature: 0.0,
        }
    }

    pub fn sphere(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sphere radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Self {
            kind: SurfaceKind::SpherePatch { radius },
            gaussian_curvature: 1.0 / (radius * radius),
            mean_curvature: 1.0 / radius,
        })
    }

    pub fn free3d() -> Self {
        Self {
            kind: SurfaceKind::Free3D,
            gaussian_curvature: 0.0,
            mean_curvature: 0.0,
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn radius(&self) -> Option<f64> {
        match self.kind {
            SurfaceKind::SpherePatch { radius } => Some(radius),
            _ => None,
        }
    }

    pub fn gaussian_curvature(&self) -> f64 {
        self.gaussian_curvature
    }

    pub fn mean_curvature(&self) -> f64 {
        self.mean_curvature
    }

    /// `K − 3H²`, the curvature shift of `k_eff²`. Equals `−2/R²` on a sphere.
    pub fn curvature_shift(&self) -> f64 {
        self.gaussian_curvature - 3.0 * self.mean_curvature * self.mean_curvature
    }
}

/// Free-space wavenumber, waveguide index and perpendicular momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalParams {
    k0: f64,
    n0: f64,
    k_perp: f64,
}

impl OpticalParams {
    pub fn new(k0: f64, n0: f64, k_perp: f64) -> Result<Self> {
        if !(k0 > 0.0 && k0.is_finite()) {
            return Err(Error::InvalidParameter(format!("k0 must be positive, got {k0}")));
        }
        if !(n0 >= 1.0 && n0.is_finite()) {
            return Err(Error::InvalidParameter(format!("n0 must be >= 1, got {n0}")));
        }
        if !(k_perp >= 0.0 && k_perp < k0 * n0) {
            return Err(Error::InvalidParameter(format!(
                "k_perp must lie in [0, k0 n0) = [0, {}), got {k_perp}",
                k0 * n0
            )));
        }
        Ok(Self { k0, n0, k_perp })
    }

    /// `k0 = 2π` with `k_perp` given as a fraction of `k0 n0`.
    pub fn with_perp_fraction(n0: f64, k_perp_frac: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&k_perp_frac) {
            return Err(Error::InvalidParameter(format!(
                "k_perp fraction must lie in [0, 1), got {k_perp_frac}"
            )));
        }
        Self::new(K0, n0, k_perp_frac * K0 * n0)
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn n0(&self) -> f64 {
        self.n0
    }

    pub fn k_perp(&self) -> f64 {
        self.k_perp
    }

    /// Wavenumber in the bulk medium, `k0 n0`.
    pub fn k_medium(&self) -> f64 {
        self.k0 * self.n0
    }
}

/// `k_eff = sqrt(k0² n0² − k_perp² + K − 3H²)`.
///
/// For [`SurfaceKind::Free3D`] there is no guided mode and the bulk
/// wavenumber `k0 n0` is returned.
pub fn effective_wavenumber(optics: &OpticalParams, surface: &SurfaceDescriptor) -> Result<f64> {
    if surface.kind() == SurfaceKind::Free3D {
        return Ok(optics.k_medium());
    }
    let k2 = optics.k_medium().powi(2) - optics.k_perp().powi(2) + surface.curvature_shift();
    if k2 > 0.0 {
        Ok(k2.sqrt())
    } else {
        Err(Error::Evanescent(k2))
    }
}

/// Emitter position in the coordinates of its surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Plane([f64; 2]),
    /// Colatitude and azimuth in radians.
    Sphere { colatitude: f64, azimuth: f64 },
    Cartesian([f64; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Layout {
    /// Regular ring with adjacent geodesic spacing `a`; central angle / chord
    /// by index offset is known in closed form.
    Ring { spacing: f64, ring_param: f64 },
    Explicit,
}

/// Positions of `N ≥ 2` emitters on one surface. Dipoles are normal to the
/// surface (along `z` for [`SurfaceKind::Free3D`]).
#[derive(Debug, Clone, PartialEq)]
pub struct EmitterArray {
    surface: SurfaceDescriptor,
    points: Vec<Point>,
    layout: Layout,
}

impl EmitterArray {
    /// Arbitrary positions. Point variants must match the surface kind.
    pub fn new(surface: SurfaceDescriptor, points: Vec<Point>) -> Result<Self> {
        let array = Self {
            surface,
            points,
            layout: Layout::Explicit,
        };
        array.validate()?;
        Ok(array)
    }

    pub fn surface(&self) -> &SurfaceDescriptor {
        &self.surface
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Adjacent spacing when the array is a regular ring.
    pub fn ring_spacing(&self) -> Option<f64> {
        match self.layout {
            Layout::Ring { spacing, .. } => Some(spacing),
            Layout::Explicit => None,
        }
    }

    /// Same emitters in a different order.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::InvalidParameter("permutation length mismatch".into()));
        }
        let mut seen = vec![false; order.len()];
        for &i in order {
            if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        Ok(Self {
            surface: self.surface,
            points: order.iter().map(|&i| self.points[i]).collect(),
            layout: Layout::Explicit,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.points.len() < 2 {
            return Err(Error::Geometry(format!(
                "need at least 2 emitters, got {}",
                self.points.len()
            )));
        }
        for p in &self.points {
            let ok = match (self.surface.kind(), p) {
                (SurfaceKind::Plane, Point::Plane(c)) => c.iter().all(|v| v.is_finite()),
                (SurfaceKind::SpherePatch { .. }, Point::Sphere { colatitude, azimuth }) => {
                    colatitude.is_finite() && azimuth.is_finite()
                }
                (SurfaceKind::Free3D, Point::Cartesian(c)) => c.iter().all(|v| v.is_finite()),
                _ => false,
            };
            if !ok {
                return Err(Error::Geometry(format!(
                    "position {p:?} does not match surface {:?}",
                    self.surface.kind()
                )));
            }
        }
        let d = distance_matrix(self);
        for i in 0..d.len() {
            for j in 0..i {
                if !(d.get(i, j) > 0.0) {
                    return Err(Error::Geometry(format!("emitters {j} and {i} coincide")));
                }
                if let Some(r) = self.surface.radius() {
                    let angle = d.get(i, j) / r;
                    if angle >= THETA_MAX {
                        return Err(Error::Geometry(format!(
                            "emitters {j} and {i} are {:.2}° apart, beyond the {:.0}° exclusion bound",
                            angle.to_degrees(),
                            THETA_MAX.to_degrees()
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `N` emitters on a circle of circumference `N a` in the plane.
pub fn ring_on_plane(n: usize, spacing: f64) -> Result<EmitterArray> {
    ring_flat(SurfaceDescriptor::plane(), n, spacing)
}

/// Same ring as [`ring_on_plane`], placed in the `z = 0` plane of free space.
pub fn ring_in_free_space(n: usize, spacing: f64) -> Result<EmitterArray> {
    ring_flat(SurfaceDescriptor::free3d(), n, spacing)
}

fn ring_flat(surface: SurfaceDescriptor, n: usize, spacing: f64) -> Result<EmitterArray> {
    check_ring_args(n, spacing)?;
    let radius = n as f64 * spacing / TAU;
    let points = (0..n)
        .map(|m| {
            let phi = TAU * m as f64 / n as f64;
            let (s, c) = phi.sin_cos();
            match surface.kind() {
                SurfaceKind::Free3D => Point::Cartesian([radius * c, radius * s, 0.0]),
                _ => Point::Plane([radius * c, radius * s]),
            }
        })
        .collect();
    let array = EmitterArray {
        surface,
        points,
        layout: Layout::Ring {
            spacing,
            ring_param: radius,
        },
    };
    array.validate()?;
    Ok(array)
}

/// `N` emitters on a small circle of a sphere with adjacent arc length `a`.
///
/// The common colatitude solves
/// `cos(a/R) = cos²θ_c + sin²θ_c cos(2π/N)`, i.e.
/// `sin θ_c = sin(a/2R) / sin(π/N)`.
pub fn ring_on_sphere(n: usize, spacing: f64, radius: f64) -> Result<EmitterArray> {
    check_ring_args(n, spacing)?;
    let surface = SurfaceDescriptor::sphere(radius)?;
    let sin_colat = (0.5 * spacing / radius).sin() / (PI / n as f64).sin();
    if !(sin_colat <= 1.0) || spacing / radius > PI {
        return Err(Error::Geometry(format!(
            "a ring of {n} emitters with arc spacing {spacing} does not fit on a sphere of radius {radius}"
        )));
    }
    let colatitude = sin_colat.asin();
    let points = (0..n)
        .map(|m| Point::Sphere {
            colatitude,
            azimuth: TAU * m as f64 / n as f64,
        })
        .collect();
    let array = EmitterArray {
        surface,
        points,
        layout: Layout::Ring {
            spacing,
            ring_param: sin_colat,
        },
    };
    array.validate()?;
    Ok(array)
}

fn check_ring_args(n: usize, spacing: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::Geometry(format!("a ring needs at least 2 emitters, got {n}")));
    }
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(Error::Geometry(format!("spacing must be positive, got {spacing}")));
    }
    Ok(())
}

/// Symmetric matrix of geodesic separations: Euclidean in the plane and in
/// free space, arc length `R α` on the sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.d
    }
}

pub fn distance_matrix(array: &EmitterArray) -> DistanceMatrix {
    let n = array.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..i {
            let v = match array.layout {
                Layout::Ring { ring_param, .. } => {
                    ring_separation(array.surface(), n, i - j, ring_param)
                }
                Layout::Explicit => pair_separation(array.surface(), &array.points[i], &array.points[j]),
            };
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    DistanceMatrix { n, d }
}

/// Separation by ring index offset, folded so that offsets `m` and `N − m`
/// give bit-identical values.
fn ring_separation(surface: &SurfaceDescriptor, n: usize, offset: usize, ring_param: f64) -> f64 {
    let m = offset.min(n - offset);
    let half_angle = (PI * m as f64 / n as f64).sin();
    match surface.kind() {
        SurfaceKind::SpherePatch { radius } => radius * 2.0 * (ring_param * half_angle).asin(),
        _ => 2.0 * ring_param * half_angle,
    }
}

fn pair_separation(surface: &SurfaceDescriptor, a: &Point, b: &Point) -> f64 {
    match (surface.kind(), a, b) {
        (_, Point::Plane(p), Point::Plane(q)) => (p[0] - q[0]).hypot(p[1] - q[1]),
        (_, Point::Cartesian(p), Point::Cartesian(q)) => {
            let dx = p[0] - q[0];
            let dy = p[1] - q[1];
            let dz = p[2] - q[2];
            (dx * dx + dy * dy + dz * dz).sqrt()
        }
        (
            SurfaceKind::SpherePatch { radius },
            Point::Sphere {
                colatitude: t1,
                azimuth: p1,
            },
            Point::Sphere {
                colatitude: t2,
                azimuth: p2,
            },
        ) => radius * central_angle(*t1, *p1, *t2, *p2),
        _ => f64::NAN,
    }
}

/// Central angle between two points given by colatitude/azimuth (haversine).
pub fn central_angle(colat1: f64, az1: f64, colat2: f64, az2: f64) -> f64 {
    let hav_colat = (0.5 * (colat1 - colat2)).sin().powi(2);
    let hav_az = (0.5 * (az1 - az2)).sin().powi(2);
    let h = (hav_colat + colat1.sin() * colat2.sin() * hav_az).clamp(0.0, 1.0);
    2.0 * h.sqrt().asin()
}
