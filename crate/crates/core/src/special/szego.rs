//! Outer-region expansion of `Q(a, a z)` for complex `z` away from the
//! Szego curve `|z e^{1-z}| = 1`.
//!
//! `Q(a, az) ~ a^{a-1}/Gamma(a) * e^{-az} z^a/(z-1) * sum_k (-1)^k b_k(z) / ((z-1)^{2k} a^k)`,
//! `b_0 = 1`, `b_k = z(1-z) b'_{k-1} + (2k-1) z b_{k-1}`.

use num_complex::Complex64;

use super::gamma::lgamma;
use crate::error::{ensure, Result};
use crate::scaledcx::ScaledComplex;

const MAX_TERMS: usize = 3;

/// Coefficients of `b_k` in increasing powers of `z`.
pub fn szego_poly(k: usize) -> Vec<f64> {
    let mut b = vec![1.0];
    for j in 1..=k {
        // z(1-z) b' = sum c_i i (z^i - z^{i+1})
        let mut next = vec![0.0; b.len() + 1];
        for (i, &c) in b.iter().enumerate() {
            if i > 0 {
                next[i] += c * i as f64;
                next[i + 1] -= c * i as f64;
            }
            next[i + 1] += (2 * j - 1) as f64 * c;
        }
        while next.len() > 1 && *next.last().unwrap() == 0.0 {
            next.pop();
        }
        b = next;
    }
    b
}

fn eval_poly(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &x| acc * z + x)
}

/// Truncated outer expansion with `terms` summands (`1..=3`), in scaled form.
pub fn szego_q_expansion(a: f64, z: Complex64, terms: usize) -> Result<ScaledComplex> {
    ensure!(
        a >= 50.0 && a.is_finite(),
        Domain,
        "szego expansion needs a >= 50, got {a}"
    );
    ensure!(
        (1..=MAX_TERMS).contains(&terms),
        Domain,
        "szego expansion supports 1..=3 terms, got {terms}"
    );
    let zm1 = z - 1.0;
    ensure!(zm1.norm() >= 0.2, Region, "szego expansion needs |z - 1| >= 0.2");
    let curve = z.norm() * (1.0 - z.re).exp();
    ensure!(curve > 1.0 || z.norm() > 1.0, Region, "z = {z} inside the Szego curve");
    let mut sum = Complex64::new(0.0, 0.0);
    let mut scale = Complex64::new(1.0, 0.0);
    let step = -1.0 / (zm1 * zm1 * a);
    for k in 0..terms {
        sum += eval_poly(&szego_poly(k), z) * scale;
        scale *= step;
    }
    let log_pref = Complex64::new((a - 1.0) * a.ln() - lgamma(a), 0.0) - a * z + a * z.ln() - zm1.ln();
    Ok(ScaledComplex::exp(log_pref).mul_complex(sum))
}
