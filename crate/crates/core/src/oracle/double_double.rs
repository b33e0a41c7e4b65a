//! Double-double arithmetic: an unevaluated sum `hi + lo` carrying about 32
//! significant digits.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    pub const PI: Self = Self {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };
    pub const LN_2: Self = Self {
        hi: std::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };
    pub const EULER_GAMMA: Self = Self {
        hi: 0.577_215_664_901_532_9,
        lo: -4.942_915_152_430_645e-18,
    };

    pub const fn new(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn powi(self, mut n: u32) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base.sqr();
            n >>= 1;
        }
        acc
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::new(self.hi.sqrt());
        }
        let y = Self::new(self.hi.sqrt());
        // one Newton step doubles the ~53 correct bits
        y + (self - y.sqr()) / (y * 2.0)
    }

    pub fn exp(self) -> Self {
        if self.hi == 0.0 {
            return Self::ONE;
        }
        // x = k ln2 + r, then exp(r) = (exp(r / 2^10))^(2^10)
        let k = (self.hi / std::f64::consts::LN_2).round();
        let r = (self - Self::LN_2 * k) / 1024.0;
        // work with expm1 so that squaring keeps the small part accurate:
        // (1 + p)² − 1 = p (2 + p)
        let mut term = r;
        let mut p = r;
        for i in 2..30 {
            term = term * r / i as f64;
            p = p + term;
            if term.hi.abs() < 1e-34 * p.hi.abs() {
                break;
            }
        }
        for _ in 0..10 {
            p = p * (p + 2.0);
        }
        let sum = p + 1.0;
        sum * 2f64.powi(k as i32)
    }

    pub fn ln(self) -> Self {
        assert!(self.hi > 0.0, "logarithm of a non-positive number");
        let mut y = Self::new(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Self::ONE;
        }
        y
    }

    /// `(sin(πt), cos(πt))` for an exactly representable `t`.
    pub fn sin_cos_pi(t: f64) -> (Self, Self) {
        let m = (2.0 * t).round();
        // exact: t and m/2 share a binade-compatible grid
        let r = t - 0.5 * m;
        let (s, c) = Self::sin_cos_small(Self::PI * r);
        match (m as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    /// Taylor series, intended for `|x| <= π/4`.
    fn sin_cos_small(x: Self) -> (Self, Self) {
        let x2 = x.sqr();
        let mut term = x;
        let mut s = x;
        let mut i = 1.0;
        loop {
            term = -term * x2 / ((i + 1.0) * (i + 2.0));
            s = s + term;
            i += 2.0;
            if term.hi.abs() < 1e-34 || i > 60.0 {
                break;
            }
        }
        let mut term = Self::ONE;
        let mut c = Self::ONE;
        let mut i = 0.0;
        loop {
            term = -term * x2 / ((i + 1.0) * (i + 2.0));
            c = c + term;
            i += 2.0;
            if term.hi.abs() < 1e-34 || i > 60.0 {
                break;
            }
        }
        (s, c)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::new(x)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self - o * q1;
        let q2 = r.hi / o.hi;
        let r = r - o * q2;
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::new(q3)
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<f64> for DoubleDouble {
            type Output = Self;
            fn $method(self, o: f64) -> Self {
                $tr::$method(self, Self::new(o))
            }
        }
    )*};
}

scalar_ops!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: DoubleDouble, b: DoubleDouble, tol: f64) -> bool {
        (a - b).abs().hi <= tol * b.abs().hi.max(1e-300)
    }

    #[test]
    fn arithmetic_beyond_f64() {
        let third = DoubleDouble::ONE / 3.0;
        let back = third * 3.0;
        assert!((back - DoubleDouble::ONE).abs().hi < 1e-31);
        // 1 + 1e-20 survives in the low word
        let x = DoubleDouble::ONE + 1e-20;
        assert_eq!((x - DoubleDouble::ONE).hi, 1e-20);
    }

    #[test]
    fn sqrt_two() {
        let s = DoubleDouble::new(2.0).sqrt();
        assert!(close(s.sqr(), DoubleDouble::new(2.0), 1e-31));
    }

    #[test]
    fn exp_ln_roundtrip() {
        for &x in &[0.3, 1.0, 2.5, 17.0, 1e-3] {
            let d = DoubleDouble::new(x);
            assert!(close(d.ln().exp(), d, 1e-29), "x = {x}");
        }
        assert!(close(DoubleDouble::new(2.0).ln(), DoubleDouble::LN_2, 1e-31));
        let e = DoubleDouble::ONE.exp();
        assert!((e.hi - std::f64::consts::E).abs() <= f64::EPSILON * 3.0);
    }

    #[test]
    fn trig_identities() {
        for &t in &[0.1, 0.25, 0.6, 1.3, 2.6, -0.7, 7.25] {
            let (s, c) = DoubleDouble::sin_cos_pi(t);
            assert!((s.sqr() + c.sqr() - DoubleDouble::ONE).abs().hi < 1e-30);
            assert!((s.to_f64() - (std::f64::consts::PI * t).sin()).abs() < 1e-14);
        }
        let (s, c) = DoubleDouble::sin_cos_pi(0.25);
        assert!((s - c).abs().hi < 1e-31);
        assert!((c.sqr() - 0.5).abs().hi < 1e-31);
    }
}
