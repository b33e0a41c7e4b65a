//! Parameter sweeps with mode tracking.

use rayon::prelude::*;

use super::config::{ConfigError, RunConfig, SweepParam};
use crate::collective::{spectrum, track_sweep, CollectiveSpectrum};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeRecord {
    /// Position in the descending-decay ordering at this point.
    pub mode: usize,
    pub track_id: usize,
    pub shift: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub outer: Option<f64>,
    pub param: f64,
    pub outcome: Result<Vec<ModeRecord>, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub param: SweepParam,
    pub outer_param: Option<SweepParam>,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.outcome.is_err()).count()
    }
}

pub fn evaluate(cfg: &RunConfig) -> crate::Result<CollectiveSpectrum> {
    spectrum(&cfg.emitter_array()?, &cfg.optical_params()?)
}

/// The configured point on its own, reported against its ring spacing.
pub fn single_point(cfg: &RunConfig) -> crate::Result<SweepResult> {
    let s = evaluate(cfg)?;
    let spacing = cfg
        .emitters
        .as_ref()
        .and_then(|e| e.spacing)
        .unwrap_or(f64::NAN);
    let modes = s
        .modes()
        .iter()
        .enumerate()
        .map(|(i, m)| ModeRecord {
            mode: i,
            track_id: i,
            shift: m.shift,
            gamma: m.decay,
        })
        .collect();
    Ok(SweepResult {
        param: SweepParam::Spacing,
        outer_param: None,
        rows: vec![SweepRow {
            outer: None,
            param: spacing,
            outcome: Ok(modes),
        }],
    })
}

/// Evaluate every sweep point on up to `workers` threads. Rows come back in
/// sweep order regardless of the worker count.
pub fn run_sweep(cfg: &RunConfig, workers: usize) -> Result<SweepResult, ConfigError> {
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| ConfigError("the sweep command needs a sweep block".into()))?;
    if cfg.emitters.is_none() {
        return Err(ConfigError("the sweep command needs an emitters block".into()));
    }
    let outer_values: Vec<Option<f64>> = match &cfg.outer {
        Some(o) => o.values().into_iter().map(Some).collect(),
        None => vec![None],
    };
    let inner_values = sweep.values();
    let points: Vec<(Option<f64>, f64)> = outer_values
        .iter()
        .flat_map(|&o| inner_values.iter().map(move |&v| (o, v)))
        .collect();

    let eval = |&(o, v): &(Option<f64>, f64)| {
        let mut c = cfg.with_param(sweep.param, v);
        if let (Some(outer), Some(ov)) = (&cfg.outer, o) {
            c = c.with_param(outer.param, ov);
        }
        evaluate(&c)
    };
    let spectra: Vec<crate::Result<CollectiveSpectrum>> = if workers <= 1 {
        points.iter().map(eval).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| ConfigError(format!("cannot start {workers} workers: {e}")))?;
        pool.install(|| points.par_iter().map(eval).collect())
    };

    let mut rows = Vec::with_capacity(points.len());
    for (chunk_pts, chunk_spec) in points
        .chunks(inner_values.len())
        .zip(spectra.chunks(inner_values.len()))
    {
        let eigen: Vec<_> = chunk_spec
            .iter()
            .map(|s| s.as_ref().ok().map(CollectiveSpectrum::eigenvalues))
            .collect();
        let tracks = track_sweep(&eigen);
        for ((&(outer, param), spec), ids) in chunk_pts.iter().zip(chunk_spec).zip(tracks) {
            let outcome = match (spec, ids) {
                (Ok(s), Some(ids)) => Ok(s
                    .modes()
                    .iter()
                    .zip(ids)
                    .enumerate()
                    .map(|(i, (m, t))| ModeRecord {
                        mode: i,
                        track_id: t,
                        shift: m.shift,
                        gamma: m.decay,
                    })
                    .collect()),
                (Err(e), _) => Err(e.to_string()),
                (Ok(_), None) => unreachable!("successful points are always tracked"),
            };
            rows.push(SweepRow {
                outer,
                param,
                outcome,
            });
        }
    }
    Ok(SweepResult {
        param: sweep.param,
        outer_param: cfg.outer.as_ref().map(|o| o.param),
        rows,
    })
}
