//! Eigenvalues of circulant matrices by direct discrete Fourier transform.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// First row of a circulant matrix built from a symmetric ring, so that
/// `row[m] == row[N − m]` for `m >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantRow(Vec<Complex64>);

impl CirculantRow {
    /// Accepts the row when the ring symmetry holds to `1e-12` relative to
    /// the largest entry.
    pub fn new(row: Vec<Complex64>) -> Result<Self> {
        let n = row.len();
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "circulant row needs at least 2 entries, got {n}"
            )));
        }
        let scale = row.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for m in 1..n {
            if (row[m] - row[n - m]).norm() > 1e-12 * scale {
                return Err(Error::InvalidParameter(format!(
                    "row is not ring-symmetric: entry {m} = {} but entry {} = {}",
                    row[m],
                    n - m,
                    row[n - m]
                )));
            }
        }
        Ok(Self(row))
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `λ_k = Σ_m row[m] exp(−2πi k m / N)` for `k = 0..N`.
pub fn circulant_eigenvalues(row: &CirculantRow) -> Vec<Complex64> {
    let r = row.as_slice();
    let n = r.len();
    (0..n)
        .map(|k| {
            r.iter()
                .enumerate()
                .map(|(m, &c)| {
                    // reduce k·m first so the angle stays in [0, 2π)
                    let angle = TAU * ((k * m) % n) as f64 / n as f64;
                    c * Complex64::from_polar(1.0, -angle)
                })
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_row() {
        let c = Complex64::new(0.3, -1.2);
        let mut row = vec![Complex64::default(); 5];
        row[0] = c;
        let ev = circulant_eigenvalues(&CirculantRow::new(row).unwrap());
        assert!(ev.iter().all(|&l| l == c));
    }

    #[test]
    fn two_by_two() {
        let half_i = Complex64::new(0.0, 0.5);
        let b = Complex64::new(0.2, 0.1);
        let ev = circulant_eigenvalues(&CirculantRow::new(vec![half_i, b]).unwrap());
        assert!((ev[0] - (half_i + b)).norm() < 1e-16);
        assert!((ev[1] - (half_i - b)).norm() < 1e-16);
    }

    #[test]
    fn rejects_asymmetric_rows() {
        let one = Complex64::new(1.0, 0.0);
        let two = Complex64::new(2.0, 0.0);
        assert!(CirculantRow::new(vec![one, one, two]).is_err());
        assert!(CirculantRow::new(vec![one]).is_err());
    }
}
