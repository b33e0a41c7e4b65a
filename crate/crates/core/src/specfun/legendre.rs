//! Ferrers functions `P_ν(x)`, `Q_ν(x)` on `(−1, 1)` for real `ν ≥ 0`.
//!
//! With `z = (1 − x)/2`:
//!
//! * `P_ν(x) = 2F1(−ν, ν+1; 1; z)`
//! * `Q_ν(x) = P_ν(x) [½ ln((1−z)/z) − γ − ψ(ν+1)] + Σ_k T_k H_k`, where
//!   `T_k` are the terms of the `P_ν` series and `H_k` harmonic numbers.
//!   Integer degrees use the closed forms `Q_0 = artanh x`,
//!   `Q_1 = x artanh x − 1` and the three-term recurrence.
//!
//! The series are summed directly while `ν √z` is moderate. Beyond that the
//! individual terms grow like `exp(2ν√z)` and the sum cancels, so the value
//! is instead carried up from degrees `ν − ⌊ν⌋` and `ν − ⌊ν⌋ + 1` by the
//! degree recurrence, which is neutrally stable on the cut.

use super::digamma::{digamma, EULER_GAMMA};
use super::hypergeometric::unit_c_series;
use super::{Degree, SeriesControl};
use crate::error::{Error, Result};

/// Largest `z = (1 − x)/2` at which the series are evaluated. Corresponds to
/// a central angle of about 160° from the expansion point.
pub const MAX_SERIES_Z: f64 = 0.97;

/// Above this value of `ν √z` the degree recurrence replaces direct summation.
const RECURRENCE_THRESHOLD: f64 = 4.0;

/// `P_ν`, `Q_ν` and their `x`-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreValues {
    pub p: f64,
    pub q: f64,
    pub dp: f64,
    pub dq: f64,
}

/// `P_ν(x)` for `x ∈ (−1, 1]`.
pub fn legendre_p(nu: Degree, x: f64) -> Result<f64> {
    let z = z_of_x(x, true)?;
    Ok(evaluate(nu.value(), z, false, &SeriesControl::default())?.p)
}

/// `dP_ν/dx`.
pub fn legendre_p_prime(nu: Degree, x: f64) -> Result<f64> {
    let z = z_of_x(x, true)?;
    Ok(evaluate(nu.value(), z, false, &SeriesControl::default())?.dp)
}

/// `Q_ν(x)` for `x ∈ (−1, 1)`.
pub fn legendre_q(nu: Degree, x: f64) -> Result<f64> {
    let z = z_of_x(x, false)?;
    Ok(evaluate(nu.value(), z, true, &SeriesControl::default())?.q)
}

/// `dQ_ν/dx`.
pub fn legendre_q_prime(nu: Degree, x: f64) -> Result<f64> {
    let z = z_of_x(x, false)?;
    Ok(evaluate(nu.value(), z, true, &SeriesControl::default())?.dq)
}

/// All four values at `x = cos θ`, `θ ∈ (0, π)`.
///
/// Takes the angle rather than `x` so that `1 − x = 2 sin²(θ/2)` keeps full
/// relative precision at small angles.
pub fn legendre_pq_theta(nu: Degree, theta: f64, ctl: &SeriesControl) -> Result<LegendreValues> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::Domain(format!(
            "central angle must lie in (0, π), got {theta}"
        )));
    }
    let z = (0.5 * theta).sin().powi(2);
    check_region(z)?;
    evaluate(nu.value(), z, true, ctl)
}

/// Values at `z = (1 − x)/2` given directly, for callers that can form `z`
/// without cancellation. `Q` is skipped (NaN) unless `with_q` is set.
pub(crate) fn values_at_z(
    nu: Degree,
    z: f64,
    with_q: bool,
    ctl: &SeriesControl,
) -> Result<LegendreValues> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::Domain(format!("z must lie in [0, 1), got {z}")));
    }
    check_region(z)?;
    evaluate(nu.value(), z, with_q, ctl)
}

fn z_of_x(x: f64, closed_at_one: bool) -> Result<f64> {
    let ok = if closed_at_one {
        x > -1.0 && x <= 1.0
    } else {
        x > -1.0 && x < 1.0
    };
    if !ok {
        let interval = if closed_at_one { "(-1, 1]" } else { "(-1, 1)" };
        return Err(Error::Domain(format!("x must lie in {interval}, got {x}")));
    }
    let z = 0.5 * (1.0 - x);
    check_region(z)?;
    Ok(z)
}

fn check_region(z: f64) -> Result<()> {
    if z > MAX_SERIES_Z {
        Err(Error::SeriesRegion {
            z,
            limit: MAX_SERIES_Z,
        })
    } else {
        Ok(())
    }
}

fn evaluate(nu: f64, z: f64, with_q: bool, ctl: &SeriesControl) -> Result<LegendreValues> {
    if nu >= 2.0 && nu * z.sqrt() > RECURRENCE_THRESHOLD {
        by_recurrence(nu, z, with_q, ctl)
    } else {
        by_series(nu, z, with_q, ctl)
    }
}

fn by_series(nu: f64, z: f64, with_q: bool, ctl: &SeriesControl) -> Result<LegendreValues> {
    let s = unit_c_series(-nu, nu + 1.0, z, 0.0, ctl)?;
    let p = s.value;
    let dp = -0.5 * s.d_value;
    if !with_q {
        return Ok(LegendreValues {
            p,
            q: f64::NAN,
            dp,
            dq: f64::NAN,
        });
    }
    if z == 0.0 {
        return Err(Error::Domain("Q_ν is singular at x = 1".into()));
    }
    let (q, dq) = if nu.fract() == 0.0 {
        integer_q(nu as u64, z)
    } else {
        let log_part = 0.5 * ((1.0 - z) / z).ln() - EULER_GAMMA - digamma(nu + 1.0)?;
        let one_minus_x2 = 4.0 * z * (1.0 - z);
        (
            p * log_part + s.harmonic,
            dp * log_part + p / one_minus_x2 - 0.5 * s.d_harmonic,
        )
    };
    Ok(LegendreValues { p, q, dp, dq })
}

/// `Q_n` and `Q_n'` for integer `n` by upward recurrence from `artanh`.
fn integer_q(n: u64, z: f64) -> (f64, f64) {
    let x = 1.0 - 2.0 * z;
    let one_minus_x2 = 4.0 * z * (1.0 - z);
    let q0 = 0.5 * ((1.0 - z) / z).ln();
    if n == 0 {
        return (q0, 1.0 / one_minus_x2);
    }
    let (mut prev, mut cur) = (q0, x * q0 - 1.0);
    for d in 1..n {
        let d = d as f64;
        let next = ((2.0 * d + 1.0) * x * cur - d * prev) / (d + 1.0);
        prev = cur;
        cur = next;
    }
    let nf = n as f64;
    (cur, nf * (prev - x * cur) / one_minus_x2)
}

fn by_recurrence(nu: f64, z: f64, with_q: bool, ctl: &SeriesControl) -> Result<LegendreValues> {
    let x = 1.0 - 2.0 * z;
    let base = nu - nu.floor();
    let lo = by_series(base, z, with_q, ctl)?;
    let hi = by_series(base + 1.0, z, with_q, ctl)?;

    let (mut p_prev, mut p_cur) = (lo.p, hi.p);
    let (mut q_prev, mut q_cur) = (lo.q, hi.q);
    let mut d = base + 1.0;
    while d + 0.5 < nu {
        let a = (2.0 * d + 1.0) * x / (d + 1.0);
        let b = d / (d + 1.0);
        let p_next = a * p_cur - b * p_prev;
        p_prev = p_cur;
        p_cur = p_next;
        if with_q {
            let q_next = a * q_cur - b * q_prev;
            q_prev = q_cur;
            q_cur = q_next;
        }
        d += 1.0;
    }
    // (1 − x²) f'_ν = ν (f_{ν−1} − x f_ν)
    let one_minus_x2 = 4.0 * z * (1.0 - z);
    let dp = nu * (p_prev - x * p_cur) / one_minus_x2;
    let (q, dq) = if with_q {
        (q_cur, nu * (q_prev - x * q_cur) / one_minus_x2)
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(LegendreValues {
        p: p_cur,
        q,
        dp,
        dq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(nu: f64) -> Degree {
        Degree::new(nu).unwrap()
    }

    #[test]
    fn p_at_one_and_low_degrees() {
        for &nu in &[0.0, 0.3, 1.0, 2.6, 17.2] {
            assert_eq!(legendre_p(deg(nu), 1.0).unwrap(), 1.0);
        }
        assert!((legendre_p(deg(1.0), 0.7).unwrap() - 0.7).abs() < 1e-15);
        let p2 = legendre_p(deg(2.0), 0.3).unwrap();
        assert!((p2 - 0.5 * (3.0 * 0.09 - 1.0)).abs() < 1e-15);
        assert_eq!(legendre_p_prime(deg(1.0), 0.2).unwrap(), 1.0);
    }

    #[test]
    fn q_closed_forms() {
        let q0 = legendre_q(deg(0.0), 0.5).unwrap();
        assert!((q0 - 0.549_306_144_334_054_8).abs() < 1e-15);
        let q1 = legendre_q(deg(1.0), 0.5).unwrap();
        assert!((q1 + 0.725_346_927_832_972_6).abs() < 1e-15);
        let dq0 = legendre_q_prime(deg(0.0), 0.3).unwrap();
        assert!((dq0 - 1.0 / (1.0 - 0.09)).abs() < 1e-14);
    }

    #[test]
    fn reference_values() {
        // 40-digit references
        let p = legendre_p(deg(2.6), 0.4).unwrap();
        assert!((p + 0.441_513_477_135_744_053_2).abs() < 1e-13);
        let q = legendre_q(deg(1.5), 0.3).unwrap();
        assert!((q + 0.882_726_090_491_828_036_8).abs() < 1e-13);
        let dp = legendre_p_prime(deg(2.6), 0.4).unwrap();
        assert!((dp - 0.450_197_235_744_380_608_1).abs() < 1e-12);
    }

    #[test]
    fn domain_and_exclusion() {
        assert!(matches!(legendre_p(deg(1.5), -1.0), Err(Error::Domain(_))));
        assert!(matches!(legendre_p(deg(1.5), 1.1), Err(Error::Domain(_))));
        assert!(matches!(legendre_q(deg(1.5), 1.0), Err(Error::Domain(_))));
        assert!(matches!(
            legendre_p(deg(1.5), -0.95),
            Err(Error::SeriesRegion { .. })
        ));
        assert!(legendre_p(deg(1.5), -0.93).is_ok());
    }

    #[test]
    fn recurrence_branch_matches_series_at_handover() {
        // Both routes must agree around ν√z = threshold.
        let ctl = SeriesControl::default();
        for &nu in &[7.3, 25.6, 120.25] {
            let z = (RECURRENCE_THRESHOLD / nu).powi(2);
            let a = by_series(nu, z, true, &ctl).unwrap();
            let b = by_recurrence(nu, z, true, &ctl).unwrap();
            let scale = a.p.abs().max(a.q.abs());
            assert!((a.p - b.p).abs() < 1e-11 * scale, "P at ν = {nu}");
            assert!((a.q - b.q).abs() < 1e-11 * scale, "Q at ν = {nu}");
            let dscale = a.dp.abs().max(a.dq.abs());
            assert!((a.dp - b.dp).abs() < 1e-10 * dscale, "P' at ν = {nu}");
            assert!((a.dq - b.dq).abs() < 1e-10 * dscale, "Q' at ν = {nu}");
        }
    }

    #[test]
    fn integer_path_matches_log_series() {
        // The log series is regular at integer degree; compare it against
        // the artanh recurrence just off the integer.
        let ctl = SeriesControl::default();
        for &n in &[2.0, 3.0, 6.0] {
            for &z in &[0.05, 0.3, 0.8] {
                let exact = by_series(n, z, true, &ctl).unwrap();
                let near = by_series(n + 1e-9, z, true, &ctl).unwrap();
                assert!((exact.q - near.q).abs() < 1e-7, "n = {n}, z = {z}");
            }
        }
    }

    #[test]
    fn near_integer_p_is_continuous() {
        for &n in &[1.0, 2.0, 5.0] {
            for &x in &[-0.5, 0.1, 0.7] {
                let exact = legendre_p(deg(n), x).unwrap();
                for &eps in &[1e-7, -1e-7] {
                    let near = legendre_p(deg(n + eps), x).unwrap();
                    assert!((near - exact).abs() < 1e-5);
                }
            }
        }
    }
}
