//! Ensemble parameters, potential, radial moments, skew norms and the
//! skew-orthogonal polynomials of the induced symplectic Ginibre ensemble
//! with `a_N = N/rho^2`, `b_N = N/rho^2 - 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};
use crate::quad::gauss_legendre;
use crate::scaledcx::{ScaledComplex, ScaledSum};
use crate::special::lgamma;

const SKEW_NORM_AGREEMENT: f64 = 1e-12;
const FORM_MAX_DEGREE: usize = 12;
const FORM_MAX_N: usize = 8;
const FORM_ANGULAR_NODES: usize = 128;
const FORM_RADIAL_NODES: usize = 64;
/// ln(1e-18): radial truncation threshold relative to the peak.
const FORM_LOG_CUTOFF: f64 = -41.446_531_673_892_82;

/// Derived parameters for fixed `N` and `rho`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub n: usize,
    pub rho: f64,
    pub a_n: f64,
    pub b_n: f64,
    /// `b_N N`
    pub b_n_n: f64,
    /// `a_N N`
    pub a_n_n: f64,
    /// microscopic scale `sqrt(2/(a_N N))`
    pub gamma_n: f64,
    pub r1: f64,
    pub r2: f64,
}

pub fn make_params(n: usize, rho: f64) -> Result<ModelParams> {
    ensure!(n >= 1, Domain, "need N >= 1");
    ensure!(rho > 0.0 && rho.is_finite(), Domain, "need rho > 0, got {rho}");
    let nf = n as f64;
    let rho2 = rho * rho;
    ensure!(
        nf >= rho2,
        Domain,
        "N = {n} below rho^2 = {rho2}: b_N would be negative"
    );
    let a_n = nf / rho2;
    // b_N N = N^2/rho^2 - N, formed without cancelling against a_N
    let b_n_n = ((nf - rho2) * nf / rho2).max(0.0);
    let b_n = b_n_n / nf;
    Ok(ModelParams {
        n,
        rho,
        a_n,
        b_n,
        b_n_n,
        a_n_n: a_n * nf,
        gamma_n: std::f64::consts::SQRT_2 * rho / nf,
        r1: (b_n / a_n).sqrt(),
        r2: ((2.0 + b_n) / a_n).sqrt(),
    })
}

/// `Q_N(zeta) = a_N |zeta|^2 - 2 b_N ln|zeta|`.
pub fn potential(p: &ModelParams, zeta: Complex64) -> Result<f64> {
    let r = zeta.norm();
    if r == 0.0 {
        ensure!(p.b_n == 0.0, Domain, "potential is singular at the origin when b_N > 0");
        return Ok(0.0);
    }
    Ok(p.a_n * r * r - 2.0 * p.b_n * r.ln())
}

/// `ln h_k`, `h_k = Gamma(1+k+b_N N) / (a_N N)^(1+k+b_N N)`.
pub fn log_moment_h(p: &ModelParams, k: usize) -> f64 {
    let s = 1.0 + k as f64 + p.b_n_n;
    lgamma(s) - s * p.a_n_n.ln()
}

/// `ln r_k`, computed from the direct and the duplicated gamma forms.
pub fn log_skew_norm(p: &ModelParams, k: usize) -> Result<f64> {
    let kf = k as f64;
    let s = 2.0 + 2.0 * kf + p.b_n_n;
    let direct = std::f64::consts::LN_2 + lgamma(s) - s * p.a_n_n.ln();
    let c = kf + 0.5 * p.b_n_n;
    let dup = -0.5 * PI.ln() + s * (2.0 / p.a_n_n).ln() + lgamma(c + 1.0) + lgamma(c + 1.5);
    let tol = SKEW_NORM_AGREEMENT * direct.abs().max(1.0);
    if (direct - dup).abs() > tol {
        return Err(Error::Precision(format!(
            "skew norm routes disagree at k = {k}: {direct} vs {dup}"
        )));
    }
    Ok(direct)
}

/// `ln Z_N = sum_k ln r_k`.
pub fn log_partition(p: &ModelParams) -> Result<f64> {
    (0..p.n).map(|k| log_skew_norm(p, k)).sum()
}

/// Coefficients of `q_{2k}` in scaled form, lowest degree first.
fn even_coefficients(p: &ModelParams, k: usize) -> Vec<f64> {
    // log-coefficients: c_k = 0, c_l = c_{l+1} + ln(2/(a_N N)) + ln(l + b_N N/2 + 1)
    let mut logc = vec![0.0; k + 1];
    let step = (2.0 / p.a_n_n).ln();
    for l in (0..k).rev() {
        logc[l] = logc[l + 1] + step + (l as f64 + 0.5 * p.b_n_n + 1.0).ln();
    }
    logc
}

/// Monic skew-orthogonal polynomial `q_degree(zeta)`.
pub fn skew_poly(p: &ModelParams, degree: usize, zeta: Complex64) -> ScaledComplex {
    let z = ScaledComplex::from_complex(zeta);
    if degree % 2 == 1 {
        return z.powi(degree as i32);
    }
    let k = degree / 2;
    let z2 = z * z;
    let mut sum = ScaledSum::new();
    let mut pw = ScaledComplex::ONE;
    for (l, lc) in even_coefficients(p, k).into_iter().enumerate() {
        if l > 0 {
            pw = pw * z2;
        }
        sum.add(&pw.mul_exp(Complex64::new(lc, 0.0)));
    }
    sum.value()
}

/// Skew form `<q_f, q_g>_s` by polar quadrature of its defining integral.
pub fn skew_form(p: &ModelParams, f_degree: usize, g_degree: usize) -> Result<Complex64> {
    ensure!(
        f_degree <= FORM_MAX_DEGREE && g_degree <= FORM_MAX_DEGREE,
        Size,
        "skew_form degrees limited to {FORM_MAX_DEGREE}"
    );
    ensure!(
        p.n <= FORM_MAX_N,
        Size,
        "skew_form quadrature limited to N <= {FORM_MAX_N}"
    );
    // lower-order terms of q_2k dominate near the origin, so cover both extremes
    let (lo_a, hi_a) = radial_window(p, 2);
    let (lo_b, hi_b) = radial_window(p, f_degree + g_degree + 2);
    let (lo, hi) = (lo_a.min(lo_b), hi_a.max(hi_b));
    let coarse = polar_form(p, f_degree, g_degree, lo, hi, 4)?;
    let fine = polar_form(p, f_degree, g_degree, lo, hi, 8)?;
    let scale = fine.1.max(f64::MIN_POSITIVE);
    if (coarse.0 - fine.0).norm() > 1e-10 * scale {
        return Err(Error::Convergence(format!(
            "skew form quadrature unstable: {} vs {}",
            coarse.0, fine.0
        )));
    }
    Ok(fine.0)
}

/// Radial window where `r^(2 b_N N + extra) e^{-a_N N r^2}` exceeds 1e-18 of its peak.
fn radial_window(p: &ModelParams, extra: usize) -> (f64, f64) {
    let m = 2.0 * p.b_n_n + extra as f64;
    let logw = |r: f64| m * r.ln() - p.a_n_n * r * r;
    let peak = (m / (2.0 * p.a_n_n)).sqrt();
    let top = logw(peak);
    let below = |r: f64| logw(r) - top < FORM_LOG_CUTOFF;
    let bisect = |mut inside: f64, mut outside: f64| {
        for _ in 0..200 {
            let mid = 0.5 * (inside + outside);
            if below(mid) {
                outside = mid;
            } else {
                inside = mid;
            }
        }
        outside
    };
    let mut far = peak + 1.0;
    while !below(far) {
        far *= 2.0;
    }
    let hi = bisect(peak, far);
    let lo = if below(1e-300) { bisect(peak, 0.0) } else { 0.0 };
    (lo, hi)
}

/// Returns the form value and the integral of its absolute integrand.
fn polar_form(p: &ModelParams, f: usize, g: usize, lo: f64, hi: f64, panels: usize) -> Result<(Complex64, f64)> {
    let (x, w) = gauss_legendre(FORM_RADIAL_NODES);
    let h = (hi - lo) / panels as f64;
    let dphi = 2.0 * PI / FORM_ANGULAR_NODES as f64;
    let mut total = Complex64::new(0.0, 0.0);
    let mut abs_total = 0.0;
    for panel in 0..panels {
        let mid = lo + (panel as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&w) {
            let r = mid + 0.5 * h * xi;
            if r <= 0.0 {
                continue;
            }
            // e^{-N Q} r dr dphi / pi
            let radial = (2.0 * p.b_n_n * r.ln() - p.a_n_n * r * r).exp() * r * 0.5 * h * wi * dphi / PI;
            for j in 0..FORM_ANGULAR_NODES {
                let zeta = Complex64::from_polar(r, j as f64 * dphi);
                let zb = zeta.conj();
                let qf = skew_poly(p, f, zeta).to_complex();
                let qg = skew_poly(p, g, zeta).to_complex();
                let qfb = skew_poly(p, f, zb).to_complex();
                let qgb = skew_poly(p, g, zb).to_complex();
                let v = (qf * qgb - qg * qfb) * (zeta - zb) * radial;
                total += v;
                abs_total += v.norm();
            }
        }
    }
    ensure!(
        total.re.is_finite() && total.im.is_finite(),
        Overflow,
        "skew form integrand overflowed"
    );
    Ok((total, abs_total))
}
