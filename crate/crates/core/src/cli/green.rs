//! Green-function tables for the `green` subcommand.

use super::config::{GeometryKind, RunConfig, SphereVariant};
use crate::error::{Error, Result};
use crate::greens::{green_free3d_zz, green_plane, green_sphere_closed, green_sphere_open};
use crate::surface::effective_wavenumber;

#[derive(Debug, Clone, PartialEq)]
pub struct GreenRows {
    pub family: &'static str,
    pub k_eff: f64,
    /// Value columns after `separation`.
    pub columns: Vec<&'static str>,
    pub rows: Vec<(f64, Vec<f64>)>,
}

/// Evaluate the configured family at each separation. The first failing
/// separation aborts the table, and the error names it.
pub fn green_table(cfg: &RunConfig, separations: &[f64]) -> Result<GreenRows> {
    let surface = cfg.surface()?;
    let k = effective_wavenumber(&cfg.optical_params()?, &surface)?;
    let variant = cfg.green.as_ref().map(|g| g.variant).unwrap_or_default();
    let (family, columns): (_, Vec<&'static str>) = match cfg.geometry.kind {
        GeometryKind::Plane => ("plane", vec!["re", "im"]),
        GeometryKind::Free3d => ("free3d", vec!["re", "im"]),
        GeometryKind::Sphere => match variant {
            SphereVariant::Both => ("sphere", vec!["open_re", "open_im", "closed_re", "closed_im"]),
            SphereVariant::Open => ("sphere-open", vec!["re", "im"]),
            SphereVariant::Closed => ("sphere-closed", vec!["re", "im"]),
        },
    };
    let radius = surface.radius();
    let rows = separations
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let values = match (cfg.geometry.kind, radius) {
                (GeometryKind::Plane, _) => green_plane(s, k).map(|g| vec![g.re, g.im]),
                (GeometryKind::Free3d, _) => green_free3d_zz(s, k).map(|g| vec![g.re, g.im]),
                (GeometryKind::Sphere, Some(r)) => match variant {
                    SphereVariant::Open => green_sphere_open(s, r, k).map(|g| vec![g.re, g.im]),
                    SphereVariant::Closed => green_sphere_closed(s, r, k).map(|c| vec![c, 0.0]),
                    SphereVariant::Both => green_sphere_open(s, r, k).and_then(|g| {
                        Ok(vec![g.re, g.im, green_sphere_closed(s, r, k)?, 0.0])
                    }),
                },
                (GeometryKind::Sphere, None) => unreachable!("sphere surfaces carry a radius"),
            };
            values
                .map(|v| (s, v))
                .map_err(|e| Error::Domain(format!("row {} (separation {s}): {e}", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GreenRows {
        family,
        k_eff: k,
        columns,
        rows,
    })
}
