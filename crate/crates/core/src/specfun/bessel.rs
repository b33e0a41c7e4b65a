use std::f64::consts::{FRAC_2_PI, FRAC_PI_4, PI};

use num_complex::Complex64;

use super::digamma::EULER_GAMMA;
use crate::error::{Error, Result};

/// Hankel asymptotic expansion above this argument.
///
/// At 12 the optimally truncated expansion is good to about 1e-11; at 8 it is
/// only good to a few parts in 1e9.
pub const BESSEL_CROSSOVER: f64 = 12.0;

/// Ascending series below this argument, backward recurrence from here up to
/// the crossover. The ascending series loses digits like `I0(x)` through
/// cancellation, which matters once second differences are taken.
const MILLER_FROM: f64 = 2.0;

const SERIES_MAX_TERMS: usize = 200;

/// Bessel function of the first kind, order zero. Even in `x`.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x < MILLER_FROM {
        j0_series(x)
    } else if x <= BESSEL_CROSSOVER {
        miller(x).0
    } else {
        hankel_asymptotic(x).0
    }
}

/// Bessel function of the second kind, order zero.
pub fn bessel_y0(x: f64) -> Result<f64> {
    check_positive(x)?;
    Ok(if x < MILLER_FROM {
        y0_series(x)
    } else if x <= BESSEL_CROSSOVER {
        miller(x).1
    } else {
        hankel_asymptotic(x).1
    })
}

/// Hankel function of the first kind, order zero: `J0(x) + i Y0(x)`.
pub fn hankel1_0(x: f64) -> Result<Complex64> {
    check_positive(x)?;
    let (j, y) = if x < MILLER_FROM {
        (j0_series(x), y0_series(x))
    } else if x <= BESSEL_CROSSOVER {
        miller(x)
    } else {
        hankel_asymptotic(x)
    };
    Ok(Complex64::new(j, y))
}

fn check_positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "Y0/H0 need a finite positive argument, got {x}"
        )))
    }
}

fn j0_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..SERIES_MAX_TERMS {
        term *= q / (k * k) as f64;
        sum += term;
        if term.abs() < f64::EPSILON * 1e-2 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn y0_series(x: f64) -> f64 {
    // Y0 = (2/π) [ (ln(x/2) + γ) J0(x) + Σ_{k≥1} (-1)^{k+1} H_k (x²/4)^k / (k!)² ]
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut j0 = 1.0;
    let mut tail = 0.0;
    for k in 1..SERIES_MAX_TERMS {
        term *= q / (k * k) as f64;
        harmonic += 1.0 / k as f64;
        j0 += term;
        tail -= term * harmonic;
        if term.abs() * harmonic < f64::EPSILON * 1e-2 * (j0.abs() + tail.abs()).max(1e-300) {
            break;
        }
    }
    FRAC_2_PI * (((0.5 * x).ln() + EULER_GAMMA) * j0 + tail)
}

/// `(J0, Y0)` by Miller's backward recurrence `J_{n-1} = (2n/x) J_n − J_{n+1}`,
/// normalized with `J0 + 2 Σ J_2k = 1`, and Neumann's series
/// `Y0 = (2/π) [(ln(x/2) + γ) J0 − 2 Σ_{k≥1} (−1)^k J_2k / k]`.
fn miller(x: f64) -> (f64, f64) {
    // even start index well past x; the neglected J_n are below 1e-17
    let start = 2 * ((x + 25.0 + (20.0 * x).sqrt()) as usize / 2);
    let mut next = 0.0; // J_{n+1}
    let mut cur = 1e-300; // J_n
    let mut norm = 0.0;
    let mut neumann = 0.0;
    for n in (1..=start).rev() {
        let prev = 2.0 * n as f64 / x * cur - next;
        next = cur;
        cur = prev;
        // cur now holds J_{n-1}
        let m = n - 1;
        if m > 0 && m % 2 == 0 {
            norm += 2.0 * cur;
            let k = (m / 2) as f64;
            neumann += if (m / 2) % 2 == 0 { cur / k } else { -cur / k };
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            neumann *= 1e-250;
        }
    }
    norm += cur;
    let j0 = cur / norm;
    let y0 = FRAC_2_PI * (((0.5 * x).ln() + EULER_GAMMA) * j0 - 2.0 * neumann / norm);
    (j0, y0)
}

/// Hankel's expansion `J0 = sqrt(2/πx) (P cos χ − Q sin χ)`,
/// `Y0 = sqrt(2/πx) (P sin χ + Q cos χ)`, `χ = x − π/4`, truncated at the
/// smallest term.
fn hankel_asymptotic(x: f64) -> (f64, f64) {
    let inv8x = 1.0 / (8.0 * x);
    let mut p = 1.0;
    let mut q = 0.0;
    // a_k / x^k with a_k = a_{k-1} * (-(2k-1)^2) / (8k)
    let mut t = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60usize {
        let odd = (2 * k - 1) as f64;
        let next = t * (-odd * odd) * inv8x / k as f64;
        if next.abs() >= last {
            break;
        }
        last = next.abs();
        t = next;
        // sign pattern: P takes a_0, -a_2, a_4, ...; Q takes a_1, -a_3, ...
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * t;
        } else {
            q += sign * t;
        }
        if t.abs() < 1e-18 {
            break;
        }
    }
    let chi = x - FRAC_PI_4;
    let (s, c) = chi.sin_cos();
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}
