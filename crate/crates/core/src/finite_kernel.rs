//! Finite-N pre-kernels and rescaled correlation functions.
//!
//! With `mu = sqrt(a_N N/2) zeta`, `nu = sqrt(a_N N/2) eta` and `b = b_N N`,
//!
//! `G^(zeta, eta) = sqrt(pi) sum_{k<N} mu^(2k+1+b)/Gamma(k+3/2+b/2) sum_{l<=k} nu^(2l+b)/Gamma(l+1+b/2)`.
//!
//! The common factor `mu^b nu^b / (Gamma(1+b/2) Gamma(3/2+b/2))` is pulled out
//! so the remaining sums are built from ratio recursions,
//! `U_k(x) = prod_{m<=k} x^2/(m+1/2+b/2)` and
//! `T_k(x) = sum_{l<=k} prod_{m<=l} x^2/(m+b/2)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};
use crate::model::ModelParams;
use crate::pfaffian::{pfaffian, SkewMatrix};
use crate::scaledcx::{ScaledComplex, ScaledSum};
use crate::special::lgamma;

pub const MAX_N: usize = 400;
pub const MAX_K: usize = 8;
const IMAG_TOL: f64 = 1e-8;
const CD_FLOOR: f64 = 1e-300;

/// A microscopic point `z` near the base point `e^{i theta}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RescaledPoint {
    pub z: Complex64,
    pub theta: f64,
    pub zeta: Complex64,
}

impl RescaledPoint {
    /// `zeta = e^{i theta} (1 + gamma_N z)`.
    pub fn new(p: &ModelParams, theta: f64, z: Complex64) -> RescaledPoint {
        RescaledPoint {
            z,
            theta,
            zeta: Complex64::from_polar(1.0, theta) * (1.0 + p.gamma_n * z),
        }
    }
}

fn check_size(p: &ModelParams) -> Result<()> {
    ensure!(
        p.n <= MAX_N,
        Size,
        "finite kernels limited to N <= {MAX_N}, got {}",
        p.n
    );
    Ok(())
}

fn check_arg(zeta: Complex64) -> Result<()> {
    ensure!(
        zeta.re.is_finite() && zeta.im.is_finite(),
        Domain,
        "kernel argument not finite"
    );
    ensure!(zeta.norm() > 0.0, Domain, "kernel argument at the origin");
    if zeta.im == 0.0 && zeta.re < 0.0 {
        return Err(Error::BranchCut(format!(
            "{zeta} lies on the cut of the principal power"
        )));
    }
    Ok(())
}

fn scale_factor(p: &ModelParams) -> f64 {
    (0.5 * p.a_n_n).sqrt()
}

/// `sqrt(pi) mu^b nu^b / (Gamma(1+b/2) Gamma(3/2+b/2))`.
fn prefactor(p: &ModelParams, mu: Complex64, nu: Complex64) -> Result<ScaledComplex> {
    let b = p.b_n_n;
    let lg = 0.5 * PI.ln() - lgamma(1.0 + 0.5 * b) - lgamma(1.5 + 0.5 * b);
    let l = b * (mu.ln() + nu.ln()) + lg;
    Ok(ScaledComplex::exp(l))
}

/// `U_0..U_{N-1}` at `x`.
fn u_terms(n: usize, b: f64, x: Complex64) -> Vec<ScaledComplex> {
    let x2 = ScaledComplex::from_complex(x * x);
    let mut out = Vec::with_capacity(n);
    let mut u = ScaledComplex::ONE;
    for k in 0..n {
        if k > 0 {
            u = (u * x2).scale_real(1.0 / (k as f64 + 0.5 + 0.5 * b));
        }
        out.push(u);
    }
    out
}

/// Running sums `T_0..T_{N-1}` at `x`, with optional `d/dx` sums.
fn t_sums(n: usize, b: f64, x: Complex64, with_derivative: bool) -> (Vec<ScaledComplex>, Vec<ScaledComplex>) {
    let x2 = ScaledComplex::from_complex(x * x);
    let inv_x = ScaledComplex::from_complex(1.0 / x);
    let mut sums = Vec::with_capacity(n);
    let mut dsums = Vec::new();
    let mut acc = ScaledSum::new();
    let mut dacc = ScaledSum::new();
    let mut t = ScaledComplex::ONE;
    for l in 0..n {
        if l > 0 {
            t = (t * x2).scale_real(1.0 / (l as f64 + 0.5 * b));
        }
        acc.add(&t);
        sums.push(acc.value());
        if with_derivative {
            // d/dx of x^(2l+b) relative to the factored x^b
            dacc.add(&(t * inv_x).scale_real(2.0 * l as f64 + b));
            dsums.push(dacc.value());
        }
    }
    (sums, dsums)
}

/// `sum_k U_k(x) T_k(y)`.
fn paired_sum(u: &[ScaledComplex], t: &[ScaledComplex]) -> ScaledComplex {
    let mut s = ScaledSum::new();
    for (a, b) in u.iter().zip(t) {
        s.add(&(*a * *b));
    }
    s.value()
}

/// `G^_N(zeta, eta)`.
pub fn g_hat(p: &ModelParams, zeta: Complex64, eta: Complex64) -> Result<ScaledComplex> {
    check_size(p)?;
    check_arg(zeta)?;
    check_arg(eta)?;
    let c = scale_factor(p);
    let (mu, nu) = (c * zeta, c * eta);
    let u = u_terms(p.n, p.b_n_n, mu);
    let (t, _) = t_sums(p.n, p.b_n_n, nu, false);
    Ok(prefactor(p, mu, nu)? * paired_sum(&u, &t).mul_complex(mu))
}

/// `kappa^_N(zeta, eta) = G^_N(zeta, eta) - G^_N(eta, zeta)`.
pub fn prekernel_hat(p: &ModelParams, zeta: Complex64, eta: Complex64) -> Result<ScaledComplex> {
    check_size(p)?;
    check_arg(zeta)?;
    check_arg(eta)?;
    // evaluate in a canonical argument order so antisymmetry is exact
    match (zeta.re, zeta.im).partial_cmp(&(eta.re, eta.im)) {
        Some(std::cmp::Ordering::Greater) => return Ok(-prekernel_hat(p, eta, zeta)?),
        Some(std::cmp::Ordering::Equal) => return Ok(ScaledComplex::ZERO),
        _ => {}
    }
    let c = scale_factor(p);
    let (mu, nu) = (c * zeta, c * eta);
    let (n, b) = (p.n, p.b_n_n);
    let (um, un) = (u_terms(n, b, mu), u_terms(n, b, nu));
    let (tm, _) = t_sums(n, b, mu, false);
    let (tn, _) = t_sums(n, b, nu, false);
    let d = paired_sum(&um, &tn)
        .mul_complex(mu)
        .sub(&paired_sum(&un, &tm).mul_complex(nu));
    Ok(prefactor(p, mu, nu)? * d)
}

/// `kappa~_N(zeta, eta) = exp(-a_N N zeta eta) kappa^_N(zeta, eta)`.
pub fn prekernel_tilde(p: &ModelParams, zeta: Complex64, eta: Complex64) -> Result<ScaledComplex> {
    Ok(prekernel_hat(p, zeta, eta)?.mul_exp(-p.a_n_n * (zeta * eta)))
}

/// Options for the correlation functions.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CorrOptions {
    /// Exponent `s` of the cocycle `g(zeta) = zeta^s/|zeta|^s` applied to the
    /// pre-kernel; correlations do not depend on it.
    pub cocycle: f64,
}

/// Rescaled `k`-point function `R_{N,k}(z_1, ..., z_k)` at base angle `theta`.
pub fn corr_finite(p: &ModelParams, theta: f64, points: &[Complex64]) -> Result<f64> {
    corr_finite_with(p, theta, points, CorrOptions::default())
}

pub fn corr_finite_with(p: &ModelParams, theta: f64, points: &[Complex64], opts: CorrOptions) -> Result<f64> {
    let v = corr_finite_complex(p, theta, points, opts)?;
    if v.im.abs() > IMAG_TOL * v.re.abs().max(1e-10) {
        return Err(Error::Precision(format!(
            "correlation has imaginary part {:e} against real part {:e}",
            v.im, v.re
        )));
    }
    Ok(v.re)
}

/// Complex value before the realness check.
pub fn corr_finite_complex(p: &ModelParams, theta: f64, points: &[Complex64], opts: CorrOptions) -> Result<Complex64> {
    check_size(p)?;
    let k = points.len();
    ensure!((1..=MAX_K).contains(&k), Size, "need 1 <= k <= {MAX_K} points, got {k}");
    ensure!(theta.is_finite(), Domain, "theta must be finite");
    let rp: Vec<RescaledPoint> = points.iter().map(|&z| RescaledPoint::new(p, theta, z)).collect();
    if rp.iter().any(|q| q.zeta.im == 0.0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    for q in &rp {
        check_arg(q.zeta)?;
    }
    let e2 = Complex64::from_polar(1.0, 2.0 * theta);
    let s2a = (2.0 * p.a_n_n).sqrt();
    // index 2j <-> zeta_j, 2j+1 <-> conj(zeta_j)
    let arg = |i: usize| {
        let q = &rp[i / 2];
        if i.is_multiple_of(2) {
            (q.zeta, q.z)
        } else {
            (q.zeta.conj(), q.z.conj())
        }
    };
    let upper = |i: usize, j: usize| -> Result<ScaledComplex> {
        let (zi, ui) = arg(i);
        let (zj, uj) = arg(j);
        let base = ui.norm_sqr() + uj.norm_sqr();
        let expo = match (i % 2, j % 2) {
            (0, 0) => base - 2.0 * e2 * ui * uj + (1.0 - e2) * p.a_n_n + s2a * (ui + uj) * (1.0 - e2),
            (1, 1) => {
                let e2c = e2.conj();
                base - 2.0 * e2c * ui * uj + (1.0 - e2c) * p.a_n_n + s2a * (ui + uj) * (1.0 - e2c)
            }
            _ => base - 2.0 * ui * uj,
        };
        let mut v = prekernel_tilde(p, zi, zj)?.mul_exp(-expo);
        if opts.cocycle != 0.0 {
            let g = |z: Complex64| Complex64::new(0.0, opts.cocycle * z.arg()).exp();
            v = v.mul_complex(g(zi) * g(zj));
        }
        Ok(v)
    };
    let m = SkewMatrix::from_upper_scaled(2 * k, upper)?;
    let mut pf = pfaffian(&m)?;
    for q in &rp {
        pf = pf.mul_complex((q.zeta.conj() - q.zeta) / p.gamma_n);
    }
    pf.try_to_complex()
}

/// Relative Christoffel-Darboux residual at microscopic `z`, `w`.
pub fn cd_residual(p: &ModelParams, theta: f64, z: Complex64, w: Complex64) -> Result<f64> {
    let (lhs, rhs) = cd_sides(p, theta, z, w)?;
    let diff = lhs.sub(&rhs);
    if diff.is_zero() {
        return Ok(0.0);
    }
    let denom = lhs.ln_abs().max(rhs.ln_abs()).max(CD_FLOOR.ln());
    Ok((diff.ln_abs() - denom).exp())
}

/// Left and right sides of the CD identity, `sqrt(2/(a_N N)) d/dzeta kappa~_N`.
pub fn cd_sides(p: &ModelParams, theta: f64, z: Complex64, w: Complex64) -> Result<(ScaledComplex, ScaledComplex)> {
    check_size(p)?;
    let zeta = RescaledPoint::new(p, theta, z).zeta;
    let eta = RescaledPoint::new(p, theta, w).zeta;
    check_arg(zeta)?;
    check_arg(eta)?;
    let c = scale_factor(p);
    let (mu, nu) = (c * zeta, c * eta);
    let (n, b) = (p.n, p.b_n_n);
    let pre = prefactor(p, mu, nu)?;
    let weight = Complex64::new(-2.0, 0.0) * mu * nu;

    // left side: d/dmu of exp(-2 mu nu) kappa^
    let (um, un) = (u_terms(n, b, mu), u_terms(n, b, nu));
    let (tm, dtm) = t_sums(n, b, mu, true);
    let (tn, _) = t_sums(n, b, nu, false);
    let first = paired_sum(&um, &tn).mul_complex(mu);
    let second = paired_sum(&un, &tm).mul_complex(nu);
    let kappa_hat = pre * first.sub(&second);
    let mut dfirst = ScaledSum::new();
    for (k, (u, t)) in um.iter().zip(&tn).enumerate() {
        dfirst.add(&(*u * *t).scale_real(2.0 * k as f64 + 1.0 + b));
    }
    let dsecond = paired_sum(&un, &dtm).mul_complex(nu);
    let dkappa = pre * dfirst.value().sub(&dsecond);
    let lhs = dkappa.sub(&kappa_hat.mul_complex(2.0 * nu)).mul_exp(weight);

    // right side, each term summed from its own power series
    let kappa_tilde = kappa_hat.mul_exp(weight);
    let mut rhs = kappa_tilde.mul_complex(2.0 * (mu - nu));
    let (lmu, lnu) = (mu.ln(), nu.ln());
    let mut complex_kernel = ScaledSum::new();
    for k in 0..2 * n {
        let e = k as f64 + b;
        if e == 0.0 {
            complex_kernel.add(&ScaledComplex::ONE);
            continue;
        }
        let l = e * (std::f64::consts::LN_2 + lmu + lnu) - lgamma(e + 1.0);
        complex_kernel.add(&ScaledComplex::exp(l));
    }
    rhs = rhs.add(&complex_kernel.value().scale_real(2.0).mul_exp(weight));

    let mut even = ScaledSum::new();
    let mut odd = ScaledSum::new();
    for l in 0..n {
        let lf = l as f64;
        let e_even = 2.0 * lf + b;
        let t_even = if e_even == 0.0 {
            ScaledComplex::from_real((-lgamma(lf + 0.5 * b + 1.0)).exp())
        } else {
            ScaledComplex::exp(e_even * lnu - lgamma(lf + 0.5 * b + 1.0))
        };
        even.add(&t_even);
        odd.add(&ScaledComplex::exp(
            (2.0 * lf + 1.0 + b) * lnu - lgamma(lf + 1.5 + 0.5 * b),
        ));
    }
    let sqrt_pi = PI.sqrt();
    let nf = n as f64;
    let coef_even = ScaledComplex::exp((2.0 * nf + b) * lmu - lgamma(nf + 0.5 + 0.5 * b)).scale_real(-2.0 * sqrt_pi);
    rhs = rhs.add(&(coef_even * even.value()).mul_exp(weight));
    if b > 0.0 {
        // 1/Gamma(b/2) vanishes at b = 0
        let coef_odd = ScaledComplex::exp((b - 1.0) * lmu - lgamma(0.5 * b)).scale_real(-2.0 * sqrt_pi);
        rhs = rhs.add(&(coef_odd * odd.value()).mul_exp(weight));
    }
    Ok((lhs, rhs))
}

/// Edge diagnostics `(K_N(z, w), e_N(z, w))` at base angle `theta`.
pub fn edge_kernels(p: &ModelParams, theta: f64, z: Complex64, w: Complex64) -> Result<(Complex64, Complex64)> {
    let s = theta.sin();
    ensure!(s.abs() > 1e-12, Domain, "edge kernels need sin(theta) != 0");
    let zeta = RescaledPoint::new(p, theta, z).zeta;
    let eta = RescaledPoint::new(p, theta, w).zeta;
    let s2a = (2.0 * p.a_n_n).sqrt();
    let front = Complex64::new(0.0, -s2a * s);
    let k = prekernel_tilde(p, zeta, eta.conj())?
        .mul_exp(2.0 * z * w.conj())
        .mul_complex(front);
    let e2 = Complex64::from_polar(1.0, 2.0 * theta);
    let expo = (e2 - 1.0) * (p.a_n_n + s2a * (z + w)) + 2.0 * e2 * z * w;
    let e = prekernel_tilde(p, zeta, eta)?.mul_exp(expo).mul_complex(front);
    Ok((k.try_to_complex()?, e.try_to_complex()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_params;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_point_kernels() {
        let p = make_params(1, 1.0).unwrap();
        let (z, e) = (c(0.4, -0.7), c(1.1, 0.3));
        let g = g_hat(&p, z, e).unwrap().to_complex();
        assert!((g - 2f64.sqrt() * z).norm() < 1e-14, "{g}");
        let k = prekernel_hat(&p, z, e).unwrap().to_complex();
        assert!((k - 2f64.sqrt() * (z - e)).norm() < 1e-14);
        let kt = prekernel_tilde(&p, z, e).unwrap().to_complex();
        assert!((kt - 2f64.sqrt() * (z - e) * (-z * e).exp()).norm() < 1e-14);
        assert!(prekernel_hat(&p, z, z).unwrap().is_zero());
    }

    #[test]
    fn antisymmetry() {
        let p = make_params(30, 2.0).unwrap();
        let (z, e) = (c(0.9, 0.4), c(-0.3, 1.05));
        let a = prekernel_tilde(&p, z, e).unwrap();
        let b = prekernel_tilde(&p, e, z).unwrap();
        assert!(a.rel_diff(&-b) < 1e-14);
    }

    #[test]
    fn argument_checks() {
        let p = make_params(4, 1.0).unwrap();
        assert!(matches!(
            prekernel_tilde(&p, c(-1.0, 0.0), c(1.0, 0.5)),
            Err(Error::BranchCut(_))
        ));
        assert!(prekernel_tilde(&p, c(0.0, 0.0), c(1.0, 0.5)).is_err());
        assert!(g_hat(&make_params(401, 1.0).unwrap(), c(1.0, 0.1), c(1.0, 0.2)).is_err());
        assert!(edge_kernels(&p, 0.0, c(0.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn real_or_coincident_points_vanish() {
        let p = make_params(20, 1.0).unwrap();
        assert_eq!(corr_finite(&p, 0.0, &[c(0.3, 0.0)]).unwrap(), 0.0);
        let v = corr_finite(&p, 0.0, &[c(0.2, 0.7), c(0.2, 0.7)]).unwrap();
        assert!(v.abs() < 1e-10, "{v}");
        assert!(corr_finite(&p, 0.0, &[c(0.0, 1.0)]).unwrap() > 0.0);
    }

    #[test]
    fn cd_identity_spot() {
        let p = make_params(10, 1.0).unwrap();
        let r = cd_residual(&p, 0.0, c(0.3, 0.4), c(-0.2, 0.1)).unwrap();
        assert!(r < 1e-9, "{r}");
        let r = cd_residual(&p, 0.0, c(0.3, 0.4), c(0.3, 0.4)).unwrap();
        assert!(r < 1e-9, "{r}");
        let p = make_params(30, 2.0).unwrap();
        let r = cd_residual(&p, PI / 3.0, c(0.5, -0.2), c(-0.4, 0.6)).unwrap();
        assert!(r < 1e-9, "{r}");
    }

    #[test]
    fn cd_identity_at_disk_case() {
        let p = make_params(9, 3.0).unwrap();
        assert_eq!(p.b_n_n, 0.0);
        let r = cd_residual(&p, 0.3, c(0.1, 0.2), c(-0.6, 0.4)).unwrap();
        assert!(r < 1e-9, "{r}");
    }
}
