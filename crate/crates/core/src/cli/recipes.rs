//! Canned configurations that regenerate the data behind each figure.

use std::f64::consts::PI;

use super::config::{
    ConfigError, Emitters, Format, Geometry, GeometryKind, GreenTable, Layout, Optics, Output,
    RunConfig, Scale, SphereVariant, Sweep, SweepParam, DEFAULT_PRECISION,
};

pub const RECIPE_NAMES: [&str; 5] = ["fig2a", "fig2b", "fig3", "fig4b", "fig4c"];

/// Ring size used by every recipe.
pub const DEFAULT_RING_SIZE: usize = 8;

const RING_SIZE_NOTE: &str =
    "ring size N = 8 is an assumed default; the source figures do not state N";

pub fn recipe(name: &str) -> Result<RunConfig, ConfigError> {
    let ring = |spacing: f64| {
        Some(Emitters {
            layout: Layout::Ring,
            n: Some(DEFAULT_RING_SIZE),
            spacing: Some(spacing),
            positions: None,
        })
    };
    let optics = |k_perp_frac: f64| Optics { n0: 1.0, k_perp_frac };
    let spacing_sweep = Some(Sweep {
        param: SweepParam::Spacing,
        from: 0.1,
        to: 1.0,
        steps: 90,
        scale: Scale::Linear,
    });
    let base = |kind: GeometryKind, radius: Option<f64>| RunConfig {
        notes: Some(RING_SIZE_NOTE.into()),
        geometry: Geometry { kind, radius },
        emitters: None,
        optics: Optics::default(),
        sweep: None,
        outer: None,
        green: None,
        output: Output {
            format: Format::Csv,
            path: None,
            precision: DEFAULT_PRECISION,
        },
        workers: None,
    };

    let cfg = match name {
        // collective spectrum vs spacing, free space
        "fig2a" => RunConfig {
            emitters: ring(0.2),
            sweep: spacing_sweep,
            ..base(GeometryKind::Free3d, None)
        },
        // same, planar waveguide at k_perp = 0.9 k0 n0
        "fig2b" => RunConfig {
            emitters: ring(0.2),
            optics: optics(0.9),
            sweep: spacing_sweep,
            ..base(GeometryKind::Plane, None)
        },
        "fig3" => RunConfig {
            emitters: ring(0.6),
            sweep: Some(Sweep {
                param: SweepParam::KPerpFrac,
                from: 0.0,
                to: 0.95,
                steps: 96,
                scale: Scale::Linear,
            }),
            ..base(GeometryKind::Plane, None)
        },
        // open vs closed sphere Green function, 20°..159° in 1° steps
        "fig4b" => RunConfig {
            notes: None,
            optics: optics(0.9),
            green: Some(GreenTable {
                separations: (20..160).map(|d| d as f64 * PI / 180.0).collect(),
                variant: SphereVariant::Both,
            }),
            ..base(GeometryKind::Sphere, Some(1.0))
        },
        "fig4c" => RunConfig {
            emitters: ring(0.1),
            optics: optics(0.9),
            sweep: Some(Sweep {
                param: SweepParam::Radius,
                from: 0.6,
                to: 10.0,
                steps: 60,
                scale: Scale::Log,
            }),
            ..base(GeometryKind::Sphere, Some(1.0))
        },
        other => {
            return Err(ConfigError(format!(
                "unknown recipe '{other}' (expected one of {})",
                RECIPE_NAMES.join(", ")
            )))
        }
    };
    cfg.validate()?;
    Ok(cfg)
}
