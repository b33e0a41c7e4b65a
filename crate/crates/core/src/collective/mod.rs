//! Interaction matrix assembly and collective spectra.
//!
//! The matrix is normalized so that an eigenvalue `λ` carries the collective
//! shift `Re λ` and decay rate `2 Im λ`, both in units of the single-emitter
//! decay rate inside the structure.

mod eigen;
mod tracking;

pub use eigen::{eigen_decomposition, eigenvalues, ComplexMatrix};
pub use tracking::{assign_tracks, track_sweep};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::greens::GreenKernel;
use crate::surface::{distance_matrix, EmitterArray, OpticalParams};

/// Round-off allowance below zero for a collective decay rate.
pub const DECAY_CLAMP_TOL: f64 = 1e-10;

const HALF_I: Complex64 = Complex64::new(0.0, 0.5);

/// Complex-symmetric interaction matrix with diagonal `i/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionMatrix(ComplexMatrix);

impl InteractionMatrix {
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    /// First row, which determines a circulant matrix completely.
    pub fn first_row(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|j| self.get(0, j)).collect()
    }
}

/// Fill `m_ij = G(d_ij) / (2 Im G(0))` for every emitter pair.
pub fn build_matrix(array: &EmitterArray, optics: &OpticalParams) -> Result<InteractionMatrix> {
    let kernel = GreenKernel::for_surface(array.surface(), optics)?;
    let dist = distance_matrix(array);
    let n = dist.len();
    let scale = 0.5 / kernel.coincidence_im();
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        m.set(i, i, HALF_I);
        for j in i + 1..n {
            let g = kernel.at_distance(dist.get(i, j))? * scale;
            if !(g.re.is_finite() && g.im.is_finite()) {
                return Err(Error::Domain(format!(
                    "non-finite coupling between emitters {i} and {j}"
                )));
            }
            m.set(i, j, g);
            m.set(j, i, g);
        }
    }
    Ok(InteractionMatrix(m))
}

/// Whether a mode decays faster or slower than a lone emitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Superradiant,
    Subradiant,
}

impl Classification {
    pub fn of(decay: f64) -> Self {
        if decay > 1.0 {
            Self::Superradiant
        } else {
            Self::Subradiant
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectiveMode {
    pub shift: f64,
    pub decay: f64,
    pub class: Classification,
}

impl CollectiveMode {
    /// The eigenvalue `shift + i decay/2` this mode was built from (after
    /// clamping).
    pub fn eigenvalue(&self) -> Complex64 {
        Complex64::new(self.shift, 0.5 * self.decay)
    }
}

/// Collective modes sorted by descending decay rate.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveSpectrum {
    modes: Vec<CollectiveMode>,
}

impl CollectiveSpectrum {
    /// Convert raw eigenvalues, clamping round-off negativity in the decay.
    pub fn from_eigenvalues(values: &[Complex64]) -> Result<Self> {
        let mut modes = values
            .iter()
            .map(|l| {
                let mut decay = 2.0 * l.im;
                if decay < 0.0 {
                    if decay < -DECAY_CLAMP_TOL {
                        return Err(Error::Passivity { gamma: decay });
                    }
                    decay = 0.0;
                }
                Ok(CollectiveMode {
                    shift: l.re,
                    decay,
                    class: Classification::of(decay),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        modes.sort_by(|a, b| b.decay.total_cmp(&a.decay).then(a.shift.total_cmp(&b.shift)));
        Ok(Self { modes })
    }

    pub fn modes(&self) -> &[CollectiveMode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn max_decay(&self) -> f64 {
        self.modes.first().map_or(f64::NAN, |m| m.decay)
    }

    pub fn min_decay(&self) -> f64 {
        self.modes.last().map_or(f64::NAN, |m| m.decay)
    }

    pub fn total_decay(&self) -> f64 {
        self.modes.iter().map(|m| m.decay).sum()
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.modes.iter().map(CollectiveMode::eigenvalue).collect()
    }
}

pub fn spectrum(array: &EmitterArray, optics: &OpticalParams) -> Result<CollectiveSpectrum> {
    let m = build_matrix(array, optics)?;
    CollectiveSpectrum::from_eigenvalues(&eigenvalues(m.matrix())?)
}
