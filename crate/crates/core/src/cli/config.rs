//! JSON run configuration.

use serde::{Deserialize, Serialize};

use crate::surface::{
    ring_in_free_space, ring_on_plane, ring_on_sphere, EmitterArray, OpticalParams, Point,
    SurfaceDescriptor,
};

/// Problems with a configuration, reported with exit status 2.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("configuration error: {0}")]
pub struct ConfigError(pub String);

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Free text copied into output headers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub geometry: Geometry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub emitters: Option<Emitters>,
    #[serde(default)]
    pub optics: Optics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    /// Second sweep axis; every outer value runs the full inner sweep.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<Sweep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub green: Option<GreenTable>,
    #[serde(default)]
    pub output: Output,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryKind {
    Plane,
    Sphere,
    Free3d,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Geometry {
    pub kind: GeometryKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    Ring,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Emitters {
    pub layout: Layout,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing: Option<f64>,
    /// `[x, y]` on the plane, `[colatitude, azimuth]` in radians on the
    /// sphere, `[x, y, z]` in free space.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Optics {
    #[serde(default = "one")]
    pub n0: f64,
    #[serde(default)]
    pub k_perp_frac: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for Optics {
    fn default() -> Self {
        Self {
            n0: 1.0,
            k_perp_frac: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    Spacing,
    KPerpFrac,
    Radius,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            Self::Spacing => "spacing",
            Self::KPerpFrac => "k_perp_frac",
            Self::Radius => "radius",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl Sweep {
    /// Sample points, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.from + (self.to - self.from) * t,
                    Scale::Log => (self.from.ln() + (self.to.ln() - self.from.ln()) * t).exp(),
                }
            })
            .collect()
    }

    fn validate(&self, which: &str) -> Result<(), ConfigError> {
        if self.steps < 2 {
            return Err(bad(format!("{which}.steps must be at least 2, got {}", self.steps)));
        }
        if !(self.from.is_finite() && self.to.is_finite() && self.from < self.to) {
            return Err(bad(format!(
                "{which} needs finite from < to, got {} .. {}",
                self.from, self.to
            )));
        }
        if self.scale == Scale::Log && self.from <= 0.0 {
            return Err(bad(format!("{which} on a log scale needs from > 0")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GreenTable {
    /// Distances, or central angles in radians on the sphere.
    pub separations: Vec<f64>,
    /// Which sphere Green functions to tabulate.
    #[serde(default)]
    pub variant: SphereVariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SphereVariant {
    /// Open and closed side by side.
    #[default]
    Both,
    Open,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default = "default_precision")]
    pub precision: usize,
}

pub const DEFAULT_PRECISION: usize = 12;

fn default_precision() -> usize {
    DEFAULT_PRECISION
}

impl Default for Output {
    fn default() -> Self {
        Self {
            format: Format::Csv,
            path: None,
            precision: DEFAULT_PRECISION,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        match (self.geometry.kind, self.geometry.radius) {
            (GeometryKind::Sphere, Some(r)) if r > 0.0 && r.is_finite() => {}
            (GeometryKind::Sphere, Some(r)) => {
                return Err(bad(format!("geometry.radius must be positive, got {r}")))
            }
            (GeometryKind::Sphere, None) => {
                return Err(bad("geometry.radius is required for a sphere"))
            }
            (_, Some(_)) => return Err(bad("geometry.radius is only allowed for a sphere")),
            (_, None) => {}
        }
        if !(self.optics.n0 > 0.0 && self.optics.n0.is_finite()) {
            return Err(bad(format!("optics.n0 must be positive, got {}", self.optics.n0)));
        }
        if !(0.0..1.0).contains(&self.optics.k_perp_frac) {
            return Err(bad(format!(
                "optics.k_perp_frac must lie in [0, 1), got {}",
                self.optics.k_perp_frac
            )));
        }
        if let Some(e) = &self.emitters {
            self.validate_emitters(e)?;
        }
        if let Some(s) = &self.sweep {
            s.validate("sweep")?;
            self.validate_param(s.param, "sweep")?;
        }
        if let Some(o) = &self.outer {
            o.validate("outer")?;
            self.validate_param(o.param, "outer")?;
            match &self.sweep {
                None => return Err(bad("outer needs a sweep block")),
                Some(s) if s.param == o.param => {
                    return Err(bad("outer and sweep must vary different parameters"))
                }
                _ => {}
            }
        }
        if let Some(g) = &self.green {
            if g.separations.iter().any(|s| !s.is_finite()) {
                return Err(bad("green.separations must be finite"));
            }
        }
        if !(1..=17).contains(&self.output.precision) {
            return Err(bad(format!(
                "output.precision must lie in 1..=17, got {}",
                self.output.precision
            )));
        }
        if self.workers == Some(0) {
            return Err(bad("workers must be at least 1"));
        }
        Ok(())
    }

    fn validate_emitters(&self, e: &Emitters) -> Result<(), ConfigError> {
        match e.layout {
            Layout::Ring => {
                let n = e.n.ok_or_else(|| bad("emitters.n is required for a ring"))?;
                if n < 2 {
                    return Err(bad(format!("emitters.n must be at least 2, got {n}")));
                }
                let a = e.spacing.ok_or_else(|| bad("emitters.spacing is required for a ring"))?;
                if !(a > 0.0 && a.is_finite()) {
                    return Err(bad(format!("emitters.spacing must be positive, got {a}")));
                }
                if e.positions.is_some() {
                    return Err(bad("emitters.positions is only allowed for an explicit layout"));
                }
            }
            Layout::Explicit => {
                let pos = e
                    .positions
                    .as_ref()
                    .ok_or_else(|| bad("emitters.positions is required for an explicit layout"))?;
                let dim = match self.geometry.kind {
                    GeometryKind::Free3d => 3,
                    _ => 2,
                };
                if let Some((i, _)) = pos.iter().enumerate().find(|(_, p)| p.len() != dim) {
                    return Err(bad(format!("emitters.positions[{i}] needs {dim} coordinates")));
                }
                if let Some(n) = e.n {
                    if n != pos.len() {
                        return Err(bad(format!(
                            "emitters.n = {n} disagrees with {} positions",
                            pos.len()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_param(&self, p: SweepParam, which: &str) -> Result<(), ConfigError> {
        match p {
            SweepParam::Radius if self.geometry.kind != GeometryKind::Sphere => {
                Err(bad(format!("{which} over radius needs a sphere")))
            }
            SweepParam::Spacing
                if self.emitters.as_ref().map(|e| e.layout) != Some(Layout::Ring) =>
            {
                Err(bad(format!("{which} over spacing needs a ring layout")))
            }
            SweepParam::KPerpFrac if self.geometry.kind == GeometryKind::Free3d => {
                Err(bad(format!("{which} over k_perp_frac has no effect in free space")))
            }
            _ => Ok(()),
        }
    }

    /// Copy with one parameter replaced.
    pub fn with_param(&self, p: SweepParam, value: f64) -> Self {
        let mut c = self.clone();
        match p {
            SweepParam::Spacing => {
                if let Some(e) = c.emitters.as_mut() {
                    e.spacing = Some(value);
                }
            }
            SweepParam::KPerpFrac => c.optics.k_perp_frac = value,
            SweepParam::Radius => c.geometry.radius = Some(value),
        }
        c
    }

    pub fn ring_size(&self) -> Option<usize> {
        let e = self.emitters.as_ref()?;
        e.n.or_else(|| e.positions.as_ref().map(Vec::len))
    }

    pub fn surface(&self) -> crate::Result<SurfaceDescriptor> {
        Ok(match self.geometry.kind {
            GeometryKind::Plane => SurfaceDescriptor::plane(),
            GeometryKind::Free3d => SurfaceDescriptor::free3d(),
            GeometryKind::Sphere => SurfaceDescriptor::sphere(self.geometry.radius.unwrap_or(f64::NAN))?,
        })
    }

    pub fn optical_params(&self) -> crate::Result<OpticalParams> {
        OpticalParams::with_perp_fraction(self.optics.n0, self.optics.k_perp_frac)
    }

    pub fn emitter_array(&self) -> crate::Result<EmitterArray> {
        let e = self
            .emitters
            .as_ref()
            .ok_or_else(|| crate::Error::InvalidParameter("no emitters configured".into()))?;
        match e.layout {
            Layout::Ring => {
                let n = e.n.unwrap_or(0);
                let a = e.spacing.unwrap_or(f64::NAN);
                match self.geometry.kind {
                    GeometryKind::Plane => ring_on_plane(n, a),
                    GeometryKind::Free3d => ring_in_free_space(n, a),
                    GeometryKind::Sphere => {
                        ring_on_sphere(n, a, self.geometry.radius.unwrap_or(f64::NAN))
                    }
                }
            }
            Layout::Explicit => {
                let pts = e
                    .positions
                    .iter()
                    .flatten()
                    .map(|p| match self.geometry.kind {
                        GeometryKind::Plane => Point::Plane([p[0], p[1]]),
                        GeometryKind::Sphere => Point::Sphere {
                            colatitude: p[0],
                            azimuth: p[1],
                        },
                        GeometryKind::Free3d => Point::Cartesian([p[0], p[1], p[2]]),
                    })
                    .collect();
                EmitterArray::new(self.surface()?, pts)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> RunConfig {
        RunConfig::from_json(
            r#"{"geometry": {"kind": "plane"},
                "emitters": {"layout": "ring", "n": 4, "spacing": 0.3}}"#,
        )
        .unwrap()
    }

    #[test]
    fn defaults_fill_in() {
        let c = base();
        assert_eq!(c.optics, Optics::default());
        assert_eq!(c.output.precision, 12);
        assert_eq!(c.output.format, Format::Csv);
        assert_eq!(RunConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_blocks() {
        let cases = [
            r#"{"geometry": {"kind": "sphere"}}"#,
            r#"{"geometry": {"kind": "plane", "radius": 1.0}}"#,
            r#"{"geometry": {"kind": "plane"}, "optics": {"k_perp_frac": 1.0}}"#,
            r#"{"geometry": {"kind": "plane"}, "emitters": {"layout": "ring", "n": 1, "spacing": 0.2}}"#,
            r#"{"geometry": {"kind": "plane"}, "emitters": {"layout": "ring", "n": 3, "spacing": -0.2}}"#,
            r#"{"geometry": {"kind": "plane"}, "emitters": {"layout": "ring", "n": 3, "spacing": 0.2},
                "sweep": {"param": "spacing", "from": 0.5, "to": 0.1, "steps": 4}}"#,
            r#"{"geometry": {"kind": "plane"}, "emitters": {"layout": "ring", "n": 3, "spacing": 0.2},
                "sweep": {"param": "spacing", "from": 0.1, "to": 0.5, "steps": 1}}"#,
            r#"{"geometry": {"kind": "plane"}, "emitters": {"layout": "ring", "n": 3, "spacing": 0.2},
                "sweep": {"param": "radius", "from": 1, "to": 2, "steps": 3}}"#,
            r#"{"geometry": {"kind": "plane"}, "bogus": 1}"#,
            r#"{"geometry": {"kind": "plane"}, "emitters": {"layout": "explicit", "positions": [[0, 0, 1]]}}"#,
        ];
        for c in cases {
            assert!(RunConfig::from_json(c).is_err(), "{c}");
        }
    }

    #[test]
    fn sweep_values_hit_endpoints() {
        let s = Sweep {
            param: SweepParam::Radius,
            from: 0.5,
            to: 8.0,
            steps: 5,
            scale: Scale::Log,
        };
        let v = s.values();
        assert_eq!(v.len(), 5);
        assert!((v[0] - 0.5).abs() < 1e-15 && (v[4] - 8.0).abs() < 1e-14);
        assert!((v[2] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn explicit_positions_build_arrays() {
        let c = RunConfig::from_json(
            r#"{"geometry": {"kind": "sphere", "radius": 2.0},
                "emitters": {"layout": "explicit", "positions": [[0.1, 0.0], [0.3, 1.0], [0.5, 2.0]]}}"#,
        )
        .unwrap();
        assert_eq!(c.emitter_array().unwrap().len(), 3);
        assert_eq!(c.ring_size(), Some(3));
    }
}
