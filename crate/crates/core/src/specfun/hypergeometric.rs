use super::SeriesControl;
use crate::error::{Error, Result};

/// `2F1(a, b; 1; z) = Σ_k (a)_k (b)_k / (k!)² z^k` for `z ∈ [0, 1)`.
pub fn hyp2f1_unit_c(a: f64, b: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "2F1 parameters must be finite, got a = {a}, b = {b}"
        )));
    }
    let settled_after = (-a).max(-b).max(0.0);
    unit_c_series(a, b, z, settled_after, ctl).map(|s| s.value)
}

/// Partial sums of the `c = 1` series that the Legendre functions need.
#[derive(Debug, Clone, Copy)]
pub(crate) struct UnitCSums {
    /// `Σ T_k`
    pub value: f64,
    /// `d/dz Σ T_k`
    pub d_value: f64,
    /// `Σ T_k H_k`, `H_k` the k-th harmonic number
    pub harmonic: f64,
    /// `d/dz Σ T_k H_k`
    pub d_harmonic: f64,
}

/// Sums the series together with its derivative and the harmonic-weighted
/// companion series.
///
/// `settled_after` is an index past which the term ratio
/// `|(a+k)(b+k)| z / (k+1)²` no longer increases once it has dropped below
/// one; the truncation test is only trusted beyond it.
pub(crate) fn unit_c_series(
    a: f64,
    b: f64,
    z: f64,
    settled_after: f64,
    ctl: &SeriesControl,
) -> Result<UnitCSums> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::Domain(format!("2F1 series needs z in [0, 1), got {z}")));
    }
    let mut sums = UnitCSums {
        value: 1.0,
        d_value: 0.0,
        harmonic: 0.0,
        d_harmonic: 0.0,
    };
    if z == 0.0 {
        sums.d_value = a * b;
        sums.d_harmonic = a * b;
        return Ok(sums);
    }

    let tol = ctl.rel_tol();
    let mut coef = 1.0; // (a)_k (b)_k / (k!)²
    let mut z_pow = 1.0; // z^(k-1)
    let mut harmonic_k = 0.0;
    let (mut scale, mut d_scale, mut h_scale, mut dh_scale) = (1.0, 0.0, 0.0, 0.0);

    for k in 1..=ctl.max_terms() {
        let kf = k as f64;
        coef *= (a + kf - 1.0) * (b + kf - 1.0) / (kf * kf);
        harmonic_k += 1.0 / kf;
        let d_term = kf * coef * z_pow;
        z_pow *= z;
        let term = coef * z_pow;

        sums.value += term;
        sums.d_value += d_term;
        sums.harmonic += term * harmonic_k;
        sums.d_harmonic += d_term * harmonic_k;
        scale += term.abs();
        d_scale += d_term.abs();
        h_scale += (term * harmonic_k).abs();
        dh_scale += (d_term * harmonic_k).abs();

        if coef == 0.0 {
            return Ok(sums);
        }
        let ratio = ((a + kf) * (b + kf)).abs() * z / ((kf + 1.0) * (kf + 1.0));
        if kf >= settled_after && ratio < 1.0 {
            let r = ratio.max(z);
            let tail = r / (1.0 - r);
            // relative to the running sum, floored at the rounding level
            // that cancellation between terms already imposes
            let small = |t: f64, sum: f64, abs_sum: f64| {
                (t * tail).abs() <= (tol * sum.abs()).max(f64::EPSILON * abs_sum) || t == 0.0
            };
            if small(term, sums.value, scale)
                && small(d_term, sums.d_value, d_scale)
                && small(term * harmonic_k, sums.harmonic, h_scale)
                && small(d_term * harmonic_k, sums.d_harmonic, dh_scale)
            {
                return Ok(sums);
            }
        }
    }
    Err(Error::Convergence {
        terms: ctl.max_terms(),
        z,
    })
}
