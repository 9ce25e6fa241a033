#![allow(dead_code)]

use num_complex::Complex64;
use pfgas::quad::integrate;
use pfgas::scaledcx::ScaledComplex;
use pfgas::special::ln_gamma;

/// `Q(a, w)` for complex `w` with `Re w > a - 1`, by quadrature along the
/// ray `t = w (1 + s)`: `Gamma(a, w) = w^a int_0^inf (1+s)^{a-1} e^{-w s} ds e^{-w}`.
pub fn q_by_ray(a: f64, w: Complex64) -> ScaledComplex {
    let f = |s: f64| ((a - 1.0) * s.ln_1p() - w * s).exp();
    let decay = w.re - (a - 1.0);
    assert!(decay > 0.0, "ray quadrature needs Re w > a - 1");
    let upper = 60.0 / decay;
    let v = integrate(f, 0.0, upper, 1e-16, 1e-14).unwrap().value;
    let log_pref = a * w.ln() - w - ln_gamma(a).unwrap();
    ScaledComplex::exp(log_pref).mul_complex(v)
}

/// `sum_{k<n} z^{k+c} / Gamma(k+c+1)` by direct summation.
pub fn power_sum(n: usize, c: f64, z: f64) -> f64 {
    (0..n)
        .map(|k| ((k as f64 + c) * z.ln() - ln_gamma(k as f64 + c + 1.0).unwrap()).exp())
        .sum()
}

/// Mean and batch-means standard error.
pub fn batch_stats(x: &[f64], batches: usize) -> (f64, f64) {
    let len = x.len() / batches;
    let means: Vec<f64> = (0..batches)
        .map(|b| x[b * len..(b + 1) * len].iter().sum::<f64>() / len as f64)
        .collect();
    let m = means.iter().sum::<f64>() / batches as f64;
    let var = means.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (batches - 1) as f64;
    (m, (var / batches as f64).sqrt())
}

/// Determinant by Gaussian elimination with partial pivoting, returned as
/// `(mantissa, ln scale)` so that large dimensions cannot overflow.
pub fn det_oracle(n: usize, data: &[Complex64]) -> (Complex64, f64) {
    let mut a = data.to_vec();
    let mut m = Complex64::new(1.0, 0.0);
    let mut log = 0.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
            .unwrap();
        if a[p * n + k].norm() == 0.0 {
            return (Complex64::new(0.0, 0.0), 0.0);
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            m = -m;
        }
        let piv = a[k * n + k];
        log += piv.norm().ln();
        m *= piv / piv.norm();
        for i in k + 1..n {
            let f = a[i * n + k] / piv;
            for j in k..n {
                let t = a[k * n + j];
                a[i * n + j] -= f * t;
            }
        }
    }
    (m, log)
}

/// Random complex skew-symmetric matrix with entries uniform in the unit square.
pub fn random_skew(n: usize, rng: &mut impl rand::Rng) -> Vec<Complex64> {
    let mut a = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            a[i * n + j] = v;
            a[j * n + i] = -v;
        }
    }
    a
}
