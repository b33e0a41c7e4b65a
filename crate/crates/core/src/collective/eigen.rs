//! Dense complex eigensolver: Householder reduction to upper Hessenberg form
//! followed by single-shift implicit QR sweeps (Givens rotations, Wilkinson
//! shift, deterministic exceptional shifts).

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Iterations allowed per deflated eigenvalue.
const MAX_ITER_PER_EIGENVALUE: usize = 100;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("matrix must be square".into()));
        }
        Ok(Self {
            n,
            data: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

/// Eigenvalues of a square complex matrix, in the order they appear on the
/// diagonal of the Schur form.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    Ok(schur(m, false)?.eigenvalues())
}

/// Eigenvalues with unit-norm right eigenvectors (`vectors[k]` belongs to
/// `values[k]`).
pub fn eigen_decomposition(m: &ComplexMatrix) -> Result<(Vec<Complex64>, Vec<Vec<Complex64>>)> {
    let s = schur(m, true)?;
    let values = s.eigenvalues();
    let vectors = s.eigenvectors();
    Ok((values, vectors))
}

struct Schur {
    t: ComplexMatrix,
    z: Option<ComplexMatrix>,
}

impl Schur {
    fn eigenvalues(&self) -> Vec<Complex64> {
        (0..self.t.n).map(|i| self.t.get(i, i)).collect()
    }

    /// Back substitution on the triangular factor, mapped through `Z`.
    fn eigenvectors(&self) -> Vec<Vec<Complex64>> {
        let n = self.t.n;
        let z = self.z.as_ref().expect("Schur vectors were not accumulated");
        let small = f64::EPSILON * self.t.frobenius_norm().max(f64::MIN_POSITIVE);
        (0..n)
            .map(|k| {
                let lambda = self.t.get(k, k);
                let mut y = vec![ZERO; n];
                y[k] = ONE;
                for j in (0..k).rev() {
                    let s: Complex64 = (j + 1..=k).map(|m| self.t.get(j, m) * y[m]).sum();
                    let mut d = self.t.get(j, j) - lambda;
                    if d.norm() < small {
                        d = Complex64::new(small, 0.0);
                    }
                    y[j] = -s / d;
                }
                let mut v = z.mul_vec(&y);
                let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                for c in &mut v {
                    *c /= norm;
                }
                v
            })
            .collect()
    }
}

fn schur(m: &ComplexMatrix, want_vectors: bool) -> Result<Schur> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    if m.as_slice().iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
    }
    let mut h = m.clone();
    let mut z = want_vectors.then(|| ComplexMatrix::identity(n));
    hessenberg(&mut h, z.as_mut());
    qr_iterate(&mut h, z.as_mut())?;
    Ok(Schur { t: h, z })
}

/// In-place Householder reduction `A ← Qᴴ A Q` to upper Hessenberg form.
fn hessenberg(a: &mut ComplexMatrix, mut z: Option<&mut ComplexMatrix>) {
    let n = a.n;
    if n < 3 {
        return;
    }
    let mut v = vec![ZERO; n];
    for k in 0..n - 2 {
        let col_norm = (k + 1..n).map(|i| a.get(i, k).norm_sqr()).sum::<f64>().sqrt();
        if col_norm == 0.0 {
            continue;
        }
        let x0 = a.get(k + 1, k);
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        // v = x + phase ‖x‖ e1, reflector H = I − 2 v vᴴ / (vᴴ v)
        for i in k + 1..n {
            v[i] = a.get(i, k);
        }
        v[k + 1] += phase * col_norm;
        let vnorm2: f64 = (k + 1..n).map(|i| v[i].norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // left: A ← H A, rows k+1.., columns k..
        for j in k..n {
            let s: Complex64 = (k + 1..n).map(|i| v[i].conj() * a.get(i, j)).sum();
            let s = s * beta;
            for i in k + 1..n {
                let val = a.get(i, j) - v[i] * s;
                a.set(i, j, val);
            }
        }
        // right: A ← A H, all rows, columns k+1..
        for i in 0..n {
            let s: Complex64 = (k + 1..n).map(|j| a.get(i, j) * v[j]).sum();
            let s = s * beta;
            for j in k + 1..n {
                let val = a.get(i, j) - s * v[j].conj();
                a.set(i, j, val);
            }
        }
        for i in k + 2..n {
            a.set(i, k, ZERO);
        }
        if let Some(z) = z.as_deref_mut() {
            for i in 0..n {
                let s: Complex64 = (k + 1..n).map(|j| z.get(i, j) * v[j]).sum();
                let s = s * beta;
                for j in k + 1..n {
                    let val = z.get(i, j) - s * v[j].conj();
                    z.set(i, j, val);
                }
            }
        }
    }
}

/// Rotation `G = [[c, s], [−s̄, c]]` (real `c`) with `G (x, y)ᵀ = (r, 0)ᵀ`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, ZERO);
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let r = ax.hypot(ay);
    (ax / r, (x / ax) * y.conj() / r)
}

fn rotate_rows(h: &mut ComplexMatrix, k: usize, c: f64, s: Complex64, cols: std::ops::Range<usize>) {
    for j in cols {
        let a = h.get(k, j);
        let b = h.get(k + 1, j);
        h.set(k, j, a * c + s * b);
        h.set(k + 1, j, -s.conj() * a + b * c);
    }
}

fn rotate_cols(h: &mut ComplexMatrix, k: usize, c: f64, s: Complex64, rows: std::ops::Range<usize>) {
    for i in rows {
        let a = h.get(i, k);
        let b = h.get(i, k + 1);
        h.set(i, k, a * c + b * s.conj());
        h.set(i, k + 1, -a * s + b * c);
    }
}

/// Eigenvalue of `[[a, b], [c, d]]` closer to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let bc = b * c;
    if bc.norm() == 0.0 {
        return d;
    }
    let delta = (a - d) * 0.5;
    let root = (delta * delta + bc).sqrt();
    let denom = if (delta + root).norm() >= (delta - root).norm() {
        delta + root
    } else {
        delta - root
    };
    if denom.norm() == 0.0 {
        d
    } else {
        d - bc / denom
    }
}

fn qr_iterate(h: &mut ComplexMatrix, mut z: Option<&mut ComplexMatrix>) -> Result<()> {
    let n = h.n;
    let norm = h.frobenius_norm();
    let tiny = f64::MIN_POSITIVE * n as f64 / f64::EPSILON;
    let mut hi = n - 1;
    let mut iter = 0usize;

    while hi > 0 {
        // locate the active unreduced block [lo, hi]
        let mut lo = hi;
        while lo > 0 {
            let sub = h.get(lo, lo - 1).norm();
            let diag = h.get(lo, lo).norm() + h.get(lo - 1, lo - 1).norm();
            let scale = if diag == 0.0 { norm } else { diag };
            if sub <= f64::EPSILON * scale || sub <= tiny {
                h.set(lo, lo - 1, ZERO);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }

        iter += 1;
        if iter > MAX_ITER_PER_EIGENVALUE {
            return Err(Error::Eigensolver(format!(
                "no deflation at index {hi} after {MAX_ITER_PER_EIGENVALUE} QR sweeps \
                 (|h[{hi},{}]| = {:e}, ‖H‖ = {norm:e})",
                hi - 1,
                h.get(hi, hi - 1).norm()
            )));
        }
        let shift = if iter.is_multiple_of(10) {
            // exceptional shift breaks rare stagnation cycles
            h.get(hi, hi) + Complex64::new(0.75 * h.get(hi, hi - 1).norm(), 0.0)
        } else {
            wilkinson_shift(
                h.get(hi - 1, hi - 1),
                h.get(hi - 1, hi),
                h.get(hi, hi - 1),
                h.get(hi, hi),
            )
        };

        for k in lo..hi {
            let (x, y) = if k == lo {
                (h.get(lo, lo) - shift, h.get(lo + 1, lo))
            } else {
                (h.get(k, k - 1), h.get(k + 1, k - 1))
            };
            let (c, s) = givens(x, y);
            let first_col = if k == lo { lo } else { k - 1 };
            rotate_rows(h, k, c, s, first_col..n);
            if k > lo {
                h.set(k + 1, k - 1, ZERO);
            }
            let last_row = (k + 3).min(hi + 1);
            rotate_cols(h, k, c, s, 0..last_row);
            if let Some(z) = z.as_deref_mut() {
                rotate_cols(z, k, c, s, 0..n);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal_matrix() {
        let d = [c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 0.0), c(7.0, -1.0)];
        let m = ComplexMatrix::from_fn(4, |i, j| if i == j { d[i] } else { ZERO });
        let ev = eigenvalues(&m).unwrap();
        assert_eq!(sorted(ev), sorted(d.to_vec()));
    }

    #[test]
    fn symmetric_two_by_two() {
        let b = c(0.3, -0.2);
        let half_i = c(0.0, 0.5);
        let m = ComplexMatrix::from_rows(&[vec![half_i, b], vec![b, half_i]]).unwrap();
        let ev = sorted(eigenvalues(&m).unwrap());
        let want = sorted(vec![half_i + b, half_i - b]);
        for (a, w) in ev.iter().zip(&want) {
            assert!((a - w).norm() < 1e-15);
        }
    }

    #[test]
    fn triangular_with_repeated_eigenvalue() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, 0.0), c(0.0, 3.0)],
            vec![ZERO, c(2.0, 0.0), c(1.0, 1.0)],
            vec![ZERO, ZERO, c(-1.0, 0.0)],
        ])
        .unwrap();
        let ev = sorted(eigenvalues(&m).unwrap());
        assert!((ev[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((ev[1] - c(2.0, 0.0)).norm() < 1e-7);
        assert!((ev[2] - c(2.0, 0.0)).norm() < 1e-7);
    }

    #[test]
    fn permutation_cycle_roots_of_unity() {
        // cyclic shift: eigenvalues are the n-th roots of unity
        let n = 7;
        let m = ComplexMatrix::from_fn(n, |i, j| if j == (i + 1) % n { ONE } else { ZERO });
        let ev = eigenvalues(&m).unwrap();
        for k in 0..n {
            let w = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64);
            assert!(ev.iter().any(|e| (e - w).norm() < 1e-12), "missing root {k}");
        }
    }

    #[test]
    fn eigenvector_residuals() {
        let n = 12;
        let m = ComplexMatrix::from_fn(n, |i, j| {
            let x = (i * 7 + j * 3) as f64;
            c((0.37 * x).sin(), (0.11 * x + 0.5 * i as f64).cos())
        });
        let (vals, vecs) = eigen_decomposition(&m).unwrap();
        let norm = m.frobenius_norm();
        for (l, v) in vals.iter().zip(&vecs) {
            let mv = m.mul_vec(v);
            let r: f64 = mv.iter().zip(v).map(|(a, b)| (a - l * b).norm_sqr()).sum::<f64>().sqrt();
            assert!(r <= 1e-10 * norm, "residual {r:e}");
        }
        // trace is preserved
        let sum: Complex64 = vals.iter().sum();
        assert!((sum - m.trace()).norm() < 1e-12 * norm);
    }

    #[test]
    fn rejects_non_finite() {
        let mut m = ComplexMatrix::identity(3);
        m.set(1, 2, c(f64::NAN, 0.0));
        assert!(eigenvalues(&m).is_err());
    }

    #[test]
    fn deterministic_order() {
        let m = ComplexMatrix::from_fn(9, |i, j| c(((i + 2 * j) as f64).sin(), (i * j) as f64 * 0.01));
        assert_eq!(eigenvalues(&m).unwrap(), eigenvalues(&m).unwrap());
    }
}
