//! Pfaffians of complex skew-symmetric matrices.
//!
//! Parlett-Reid tridiagonalisation with partial pivoting, `O(n^3)`. Entries
//! may carry a per-index log scale (`A_ij = M_ij exp(s_i + s_j)`), so that
//! weighted kernels with very unequal magnitudes stay representable; since
//! `Pf(D M D) = det(D) Pf(M)`, the scales are reapplied at the end.

use num_complex::Complex64;

use crate::error::{ensure, Result};
use crate::scaledcx::ScaledComplex;

pub const MAX_DIM: usize = 512;
const NAIVE_MAX_DIM: usize = 8;
const SKEW_TOL: f64 = 1e-12;
const SINGULAR: f64 = 1e-300;

/// Dense skew-symmetric matrix with optional symmetric log scaling.
#[derive(Clone, Debug)]
pub struct SkewMatrix {
    n: usize,
    data: Vec<Complex64>,
    log_scale: Vec<f64>,
}

impl SkewMatrix {
    /// Validates skew-symmetry (relative tolerance 1e-12) and antisymmetrises.
    pub fn from_dense(n: usize, data: Vec<Complex64>) -> Result<SkewMatrix> {
        ensure!(
            data.len() == n * n,
            Shape,
            "expected {} entries for a {n}x{n} matrix, got {}",
            n * n,
            data.len()
        );
        ensure!(n <= MAX_DIM, Size, "dimension {n} above {MAX_DIM}");
        let scale = data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                let a = data[i * n + j];
                let b = data[j * n + i];
                ensure!(
                    a.re.is_finite() && a.im.is_finite(),
                    Validation,
                    "entry ({i},{j}) not finite"
                );
                ensure!(
                    (a + b).norm() <= SKEW_TOL * scale,
                    Validation,
                    "matrix is not skew-symmetric at ({i},{j})"
                );
                out[i * n + j] = 0.5 * (a - b);
            }
        }
        Ok(SkewMatrix {
            n,
            data: out,
            log_scale: vec![0.0; n],
        })
    }

    /// Builds from scaled upper-triangle entries `upper(i, j)`, `i < j`.
    pub fn from_upper_scaled(n: usize, upper: impl Fn(usize, usize) -> Result<ScaledComplex>) -> Result<SkewMatrix> {
        ensure!(n <= MAX_DIM, Size, "dimension {n} above {MAX_DIM}");
        let mut entries = vec![ScaledComplex::ZERO; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = upper(i, j)?;
                entries[i * n + j] = v;
                entries[j * n + i] = -v;
            }
        }
        // s_i = half the largest log-magnitude in row i
        let log_scale: Vec<f64> = (0..n)
            .map(|i| {
                let m = (0..n)
                    .filter(|&j| j != i && !entries[i * n + j].is_zero())
                    .map(|j| entries[i * n + j].ln_abs())
                    .fold(f64::NEG_INFINITY, f64::max);
                if m.is_finite() {
                    0.5 * m
                } else {
                    0.0
                }
            })
            .collect();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                let e = entries[i * n + j];
                data[i * n + j] = e
                    .mul_exp(Complex64::new(-log_scale[i] - log_scale[j], 0.0))
                    .to_complex();
            }
        }
        Ok(SkewMatrix { n, data, log_scale })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)` in scaled form.
    pub fn get(&self, i: usize, j: usize) -> ScaledComplex {
        ScaledComplex::new(self.data[i * self.n + j], self.log_scale[i] + self.log_scale[j])
    }

    fn total_log_scale(&self) -> f64 {
        self.log_scale.iter().sum()
    }
}

/// Pfaffian by Parlett-Reid elimination. Odd dimension is a shape error.
pub fn pfaffian(m: &SkewMatrix) -> Result<ScaledComplex> {
    let n = m.n;
    ensure!(n.is_multiple_of(2), Shape, "Pfaffian of odd dimension {n}");
    if n == 0 {
        return Ok(ScaledComplex::ONE);
    }
    let mut a = m.data.clone();
    let mut result = ScaledComplex::ONE;
    let mut k = 0;
    while k + 1 < n {
        // pivot: largest entry in column k below the diagonal
        let mut kp = k + 1;
        let mut best = a[(k + 1) * n + k].norm();
        for i in k + 2..n {
            let v = a[i * n + k].norm();
            if v > best {
                best = v;
                kp = i;
            }
        }
        if kp != k + 1 {
            for j in 0..n {
                a.swap((k + 1) * n + j, kp * n + j);
            }
            for i in 0..n {
                a.swap(i * n + k + 1, i * n + kp);
            }
            result = -result;
        }
        let pivot = a[k * n + k + 1];
        if pivot.norm() < SINGULAR {
            return Ok(ScaledComplex::ZERO);
        }
        result = result.mul_complex(pivot);
        if k + 2 < n {
            let tau: Vec<Complex64> = (k + 2..n).map(|j| a[k * n + j] / pivot).collect();
            let col: Vec<Complex64> = (k + 2..n).map(|i| a[i * n + k + 1]).collect();
            for (ii, i) in (k + 2..n).enumerate() {
                for (jj, j) in (k + 2..n).enumerate() {
                    a[i * n + j] += tau[ii] * col[jj] - col[ii] * tau[jj];
                }
            }
        }
        k += 2;
    }
    Ok(result.mul_exp(Complex64::new(m.total_log_scale(), 0.0)))
}

/// Pfaffian by recursive expansion along the first row; `dim <= 8`.
pub fn pfaffian_naive(m: &SkewMatrix) -> Result<ScaledComplex> {
    let n = m.n;
    ensure!(n.is_multiple_of(2), Shape, "Pfaffian of odd dimension {n}");
    ensure!(
        n <= NAIVE_MAX_DIM,
        Size,
        "naive Pfaffian limited to dimension {NAIVE_MAX_DIM}"
    );
    let idx: Vec<usize> = (0..n).collect();
    let v = expand(&m.data, n, &idx);
    Ok(ScaledComplex::from_complex(v).mul_exp(Complex64::new(m.total_log_scale(), 0.0)))
}

fn expand(a: &[Complex64], n: usize, idx: &[usize]) -> Complex64 {
    if idx.is_empty() {
        return Complex64::new(1.0, 0.0);
    }
    let first = idx[0];
    let mut acc = Complex64::new(0.0, 0.0);
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != j).collect();
        let sign = if pos % 2 == 1 { 1.0 } else { -1.0 };
        acc += sign * a[first * n + j] * expand(a, n, &rest);
    }
    acc
}

/// Determinant by LU with partial pivoting, in scaled form.
pub fn determinant(n: usize, data: &[Complex64]) -> Result<ScaledComplex> {
    ensure!(
        data.len() == n * n,
        Shape,
        "expected {} entries for a {n}x{n} matrix",
        n * n
    );
    let mut a = data.to_vec();
    let mut det = ScaledComplex::ONE;
    for k in 0..n {
        let mut p = k;
        for i in k + 1..n {
            if a[i * n + k].norm() > a[p * n + k].norm() {
                p = i;
            }
        }
        if a[p * n + k].norm() < SINGULAR {
            return Ok(ScaledComplex::ZERO);
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let piv = a[k * n + k];
        det = det.mul_complex(piv);
        for i in k + 1..n {
            let f = a[i * n + k] / piv;
            for j in k + 1..n {
                let t = a[k * n + j];
                a[i * n + j] -= f * t;
            }
        }
    }
    Ok(det)
}
