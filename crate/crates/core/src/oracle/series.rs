//! Direct power-series evaluation in double-double precision.
//!
//! These routines share no code with `specfun`: Legendre `Q` of non-integer
//! degree goes through the connection formula rather than the logarithmic
//! series, and integer degrees use the Christoffel sum.

use super::double_double::DoubleDouble as Dd;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 200_000;
/// Relative rounding allowance per accumulated term magnitude.
const ROUNDING: f64 = 1e-30;
const TARGET: f64 = 1e-33;

/// Function evaluated by [`highprec_series`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesKind {
    /// Ferrers `P_ν(x)`, `-1 < x <= 1`.
    LegendreP { nu: f64 },
    /// Ferrers `Q_ν(x)`, `-1 < x < 1`.
    LegendreQ { nu: f64 },
    J0,
    Y0,
    /// Gauss `2F1(a, b; c; x)`, `|x| < 1`.
    Hyp2F1 { a: f64, b: f64, c: f64 },
}

/// Oracle value with a conservative absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HighPrecValue {
    pub value: Dd,
    pub error_bound: f64,
}

impl HighPrecValue {
    pub fn to_f64(self) -> f64 {
        self.value.to_f64()
    }
}

pub fn highprec_series(kind: SeriesKind, x: f64) -> Result<HighPrecValue> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("argument must be finite, got {x}")));
    }
    match kind {
        SeriesKind::J0 => {
            check(x.abs() <= 40.0, "J0 oracle needs |x| <= 40")?;
            j0(Dd::new(x))
        }
        SeriesKind::Y0 => {
            check(x > 0.0 && x <= 40.0, "Y0 oracle needs 0 < x <= 40")?;
            y0(x)
        }
        SeriesKind::Hyp2F1 { a, b, c } => {
            check(x.abs() < 1.0, "2F1 oracle needs |x| < 1")?;
            check(
                !(c <= 0.0 && c.fract() == 0.0),
                "2F1 oracle needs c not a non-positive integer",
            )?;
            hyp2f1(Dd::new(a), Dd::new(b), Dd::new(c), Dd::new(x))
        }
        SeriesKind::LegendreP { nu } => {
            check_degree(nu)?;
            check(x > -1.0 && x <= 1.0, "P oracle needs -1 < x <= 1")?;
            legendre_p(nu, x)
        }
        SeriesKind::LegendreQ { nu } => {
            check_degree(nu)?;
            check(x > -1.0 && x < 1.0, "Q oracle needs -1 < x < 1")?;
            if nu.fract() == 0.0 {
                Ok(integer_q(nu as usize, x))
            } else {
                connection_q(nu, x)
            }
        }
    }
}

fn check(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(msg.into()))
    }
}

fn check_degree(nu: f64) -> Result<()> {
    check(nu.is_finite() && (0.0..=1e4).contains(&nu), "oracle degree must lie in [0, 1e4]")
}

/// Σ (−x²/4)^k / (k!)²
fn j0(x: Dd) -> Result<HighPrecValue> {
    let q = x.sqr() / 4.0;
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut abs_sum = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term = -term * q / (kf * kf);
        sum = sum + term;
        abs_sum += term.hi.abs();
        // terms decrease monotonically once k² > q
        if kf * kf > q.hi && term.hi.abs() <= TARGET * abs_sum {
            let next = term.hi.abs() * q.hi / ((kf + 1.0) * (kf + 1.0));
            return Ok(HighPrecValue {
                value: sum,
                error_bound: next + ROUNDING * abs_sum,
            });
        }
    }
    Err(Error::Convergence {
        terms: MAX_TERMS,
        z: x.hi,
    })
}

/// (2/π) [(ln(x/2) + γ) J0(x) + Σ_{k≥1} (−1)^{k+1} H_k (x²/4)^k / (k!)²]
fn y0(x: f64) -> Result<HighPrecValue> {
    let xd = Dd::new(x);
    let j = j0(xd)?;
    let q = xd.sqr() / 4.0;
    let mut term = Dd::ONE;
    let mut harmonic = Dd::ZERO;
    let mut sum = Dd::ZERO;
    let mut abs_sum = 0.0;
    let mut converged = None;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term = -term * q / (kf * kf);
        harmonic = harmonic + Dd::ONE / kf;
        let t = -term * harmonic;
        sum = sum + t;
        abs_sum += t.hi.abs();
        if kf * kf > 2.0 * q.hi && t.hi.abs() <= TARGET * abs_sum.max(1e-300) {
            converged = Some(t.hi.abs());
            break;
        }
    }
    let Some(last) = converged else {
        return Err(Error::Convergence { terms: MAX_TERMS, z: x });
    };
    let log_term = (xd / 2.0).ln() + Dd::EULER_GAMMA;
    let two_over_pi = Dd::new(2.0) / Dd::PI;
    let value = (log_term * j.value + sum) * two_over_pi;
    let bound = (log_term.abs().hi * j.error_bound + last + ROUNDING * abs_sum) * two_over_pi.hi;
    Ok(HighPrecValue {
        value,
        error_bound: bound + ROUNDING * value.abs().hi,
    })
}

fn hyp2f1(a: Dd, b: Dd, c: Dd, z: Dd) -> Result<HighPrecValue> {
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut abs_sum = 1.0;
    let settle = a.hi.abs().max(b.hi.abs()).max(c.hi.abs()) + 2.0;
    let za = z.hi.abs();
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio_num = (a + kf) * (b + kf) * z;
        let ratio_den = (c + kf) * (kf + 1.0);
        term = term * ratio_num / ratio_den;
        if term.hi == 0.0 {
            // terminating series
            return Ok(HighPrecValue {
                value: sum,
                error_bound: ROUNDING * abs_sum,
            });
        }
        sum = sum + term;
        abs_sum += term.hi.abs();
        if kf > settle {
            let k1 = kf + 1.0;
            let r = (((a.hi + k1) * (b.hi + k1)) / ((c.hi + k1) * (k1 + 1.0))).abs() * za;
            let r = r.max(za);
            let tail = term.hi.abs() * r / (1.0 - r);
            if tail <= TARGET * abs_sum {
                return Ok(HighPrecValue {
                    value: sum,
                    error_bound: tail + ROUNDING * abs_sum,
                });
            }
        }
    }
    Err(Error::Convergence {
        terms: MAX_TERMS,
        z: z.hi,
    })
}

/// `P_ν(x) = 2F1(−ν, ν+1; 1; (1−x)/2)`
fn legendre_p(nu: f64, x: f64) -> Result<HighPrecValue> {
    let z = (Dd::ONE - x) / 2.0;
    let nu = Dd::new(nu);
    hyp2f1(-nu, nu + 1.0, Dd::ONE, z)
}

/// `Q_ν(x) = (π/2) [cos(νπ) P_ν(x) − P_ν(−x)] / sin(νπ)`
fn connection_q(nu: f64, x: f64) -> Result<HighPrecValue> {
    let p = legendre_p(nu, x)?;
    let pm = legendre_p(nu, -x)?;
    let (s, c) = Dd::sin_cos_pi(nu);
    let scale = Dd::PI / (s * 2.0);
    let value = (c * p.value - pm.value) * scale;
    let bound = (c.abs().hi * p.error_bound + pm.error_bound) * scale.abs().hi;
    Ok(HighPrecValue {
        value,
        error_bound: bound + ROUNDING * value.abs().hi,
    })
}

/// Integer degree: `Q_n = P_n artanh x − Σ_{k=1}^{n} P_{k−1} P_{n−k} / k`.
fn integer_q(n: usize, x: f64) -> HighPrecValue {
    let xd = Dd::new(x);
    let mut p = Vec::with_capacity(n + 1);
    p.push(Dd::ONE);
    if n >= 1 {
        p.push(xd);
    }
    for m in 1..n {
        let mf = m as f64;
        let next = (xd * p[m] * (2.0 * mf + 1.0) - p[m - 1] * mf) / (mf + 1.0);
        p.push(next);
    }
    let artanh = ((Dd::ONE + xd) / (Dd::ONE - xd)).ln() / 2.0;
    let mut w = Dd::ZERO;
    let mut abs_sum = 0.0;
    for k in 1..=n {
        let t = p[k - 1] * p[n - k] / k as f64;
        w = w + t;
        abs_sum += t.hi.abs();
    }
    let value = p[n] * artanh - w;
    HighPrecValue {
        value,
        error_bound: ROUNDING * (abs_sum + (p[n] * artanh).abs().hi) * (n as f64 + 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bessel_anchors() {
        let j = highprec_series(SeriesKind::J0, 1.0).unwrap();
        assert!((j.to_f64() - 0.765_197_686_557_966_6).abs() < 1e-16);
        assert!(j.error_bound < 1e-25);
        let y = highprec_series(SeriesKind::Y0, 1.0).unwrap();
        assert!((y.to_f64() - 0.088_256_964_215_676_96).abs() < 1e-16);
        // first zero of J0
        let z = highprec_series(SeriesKind::J0, 2.404_825_557_695_773).unwrap();
        assert!(z.to_f64().abs() < 1e-15);
        assert!(highprec_series(SeriesKind::Y0, 0.0).is_err());
    }

    #[test]
    fn trivial_cross_checks() {
        let p = highprec_series(SeriesKind::LegendreP { nu: 1.0 }, 0.7).unwrap();
        assert!((p.to_f64() - 0.7).abs() < 1e-15);
        let q = highprec_series(SeriesKind::LegendreQ { nu: 0.0 }, 0.5).unwrap();
        assert!((q.to_f64() - 0.5f64.atanh()).abs() < 1e-15);
        // Q_1(x) = x artanh x − 1
        let q = highprec_series(SeriesKind::LegendreQ { nu: 1.0 }, 0.3).unwrap();
        assert!((q.to_f64() - (0.3 * 0.3f64.atanh() - 1.0)).abs() < 1e-15);
        let h = highprec_series(SeriesKind::Hyp2F1 { a: 1.0, b: 1.0, c: 2.0 }, 0.5).unwrap();
        // 2F1(1,1;2;z) = −ln(1−z)/z
        assert!((h.to_f64() - 2.0 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn connection_formula_is_continuous_in_degree() {
        // non-integer route approaches the Christoffel value
        let exact = highprec_series(SeriesKind::LegendreQ { nu: 2.0 }, 0.4).unwrap().to_f64();
        let near = highprec_series(SeriesKind::LegendreQ { nu: 2.0 + 1e-9 }, 0.4).unwrap().to_f64();
        assert!((exact - near).abs() < 1e-8);
    }

    #[test]
    fn domain_checks() {
        assert!(highprec_series(SeriesKind::LegendreP { nu: 1.5 }, -1.0).is_err());
        assert!(highprec_series(SeriesKind::LegendreQ { nu: -1.0 }, 0.2).is_err());
        assert!(highprec_series(SeriesKind::Hyp2F1 { a: 1.0, b: 1.0, c: -2.0 }, 0.2).is_err());
        assert!(highprec_series(SeriesKind::Hyp2F1 { a: 1.0, b: 1.0, c: 2.0 }, 1.0).is_err());
    }
}
