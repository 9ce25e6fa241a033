//! Large-N limits: the determinantal kernel `K^C` away from the real axis,
//! the skew pre-kernel `kappa^R` near it, the symplectic Ginibre bulk kernel
//! `kappa^W`, and reference kernels for the small- and large-`rho` limits.
//!
//! Kernels are evaluated in weighted form `e^{-|z|^2-|w|^2} kappa(z, w)`,
//! which is bounded on the working region even when `e^{z^2+w^2}` and the
//! error functions are not.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};
use crate::pfaffian::{determinant, pfaffian, SkewMatrix};
use crate::quad::integrate;
use crate::scaledcx::ScaledComplex;
use crate::special::{erfc_c, half_erfc_exp};

pub const KC_RADIUS: f64 = 6.0;
pub const KAPPA_RADIUS: f64 = 10.0;
const QUAD_ABS: f64 = 1e-14;
const QUAD_REL: f64 = 1e-13;
const IMAG_TOL: f64 = 1e-8;
const W_TAIL: f64 = 7.0;
const CAUCHY_RADIUS: f64 = 0.2;
const CAUCHY_POINTS: usize = 32;
const SERIES_SWITCH: f64 = 1e-3;

/// Parameters of the bulk limits: `a = rho/(2 sqrt 2)` and the offset `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BulkParams {
    pub rho: f64,
    pub a: f64,
    pub t: f64,
}

impl BulkParams {
    pub fn new(rho: f64, t: f64) -> Result<BulkParams> {
        ensure!(rho > 0.0 && rho.is_finite(), Domain, "need rho > 0, got {rho}");
        ensure!(t.is_finite(), Domain, "offset t must be finite");
        Ok(BulkParams {
            rho,
            a: rho / (2.0 * SQRT_2),
            t,
        })
    }

    fn shift(&self, z: Complex64) -> Complex64 {
        z + Complex64::new(0.0, self.t)
    }
}

/// Which representation of `kappa^R` to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaRoute {
    /// Wronskian integral over `[-a, a]` plus boundary products.
    Wronskian,
    /// `F_1 + F_2`, with `F_1` integrated from its `z`-derivative along the
    /// segment from `w` and `F_2` in closed form.
    Boundary,
}

/// Reference kernels for the limiting regimes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceKernel {
    Chiral,
    Sine,
    Exp,
}

/// `f_z(u) = erfc(sqrt 2 (z - u))/2`.
pub fn f_profile(z: Complex64, u: f64) -> Result<Complex64> {
    ensure!(z.norm() <= 20.0, Region, "f_profile needs |z| <= 20");
    Ok(0.5 * erfc_c(SQRT_2 * (z - u))?)
}

fn check_radius(z: Complex64, r: f64, what: &str) -> Result<()> {
    ensure!(
        z.re.is_finite() && z.im.is_finite(),
        Domain,
        "{what} argument not finite"
    );
    if z.norm() > r {
        return Err(Error::Region(format!("{what} needs |z| <= {r}, got {z}")));
    }
    Ok(())
}

/// `e^{-|z|^2-|w|^2} K^C(z, w)`.
fn k_c_weighted(bp: &BulkParams, z: Complex64, w: Complex64) -> Result<Complex64> {
    let s = z + w.conj();
    let e = 2.0 * z * w.conj() - z.norm_sqr() - w.norm_sqr();
    Ok(half_erfc_exp(s - 2.0 * bp.a, e)? - half_erfc_exp(s + 2.0 * bp.a, e)?)
}

/// `K^C(z, w) = e^{2 z conj(w)} (erfc(z + conj(w) - 2a) - erfc(z + conj(w) + 2a)) / 2`.
pub fn k_c(bp: &BulkParams, z: Complex64, w: Complex64) -> Result<Complex64> {
    check_radius(z, KC_RADIUS, "k_c")?;
    check_radius(w, KC_RADIUS, "k_c")?;
    let s = z + w.conj();
    let e = 2.0 * z * w.conj();
    Ok(half_erfc_exp(s - 2.0 * bp.a, e)? - half_erfc_exp(s + 2.0 * bp.a, e)?)
}

/// `R_k^C(z_1, ..., z_k)`.
pub fn corr_limit_c(bp: &BulkParams, points: &[Complex64]) -> Result<f64> {
    let k = points.len();
    ensure!((1..=8).contains(&k), Size, "need 1 <= k <= 8 points, got {k}");
    for &z in points {
        check_radius(z, KC_RADIUS, "corr_limit_c")?;
    }
    let mut m = vec![Complex64::new(0.0, 0.0); k * k];
    for j in 0..k {
        for l in 0..k {
            m[j * k + l] = k_c_weighted(bp, points[j], points[l])?;
        }
    }
    let d = determinant(k, &m)?.to_complex();
    Ok(d.re)
}

/// `e^{z^2 - |z|^2} erfc(sqrt 2 (z - u)) / 2`.
fn f_weighted(z: Complex64, u: f64) -> Result<Complex64> {
    half_erfc_exp(SQRT_2 * (z - u), z * z - z.norm_sqr())
}

/// Weighted Wronskian integrand `sqrt(pi) W(f_w, f_z)(u)` times `e^{z^2+w^2-|z|^2-|w|^2}`.
fn wronskian_integrand(z: Complex64, w: Complex64, u: f64) -> Result<Complex64> {
    let gz = (z * z - z.norm_sqr() - 2.0 * (z - u) * (z - u)).exp();
    let gw = (w * w - w.norm_sqr() - 2.0 * (w - u) * (w - u)).exp();
    Ok(SQRT_2 * (f_weighted(w, u)? * gz - f_weighted(z, u)? * gw))
}

/// Integrates a fallible complex integrand, surfacing the first failure.
fn integrate_checked(f: impl Fn(f64) -> Result<Complex64>, lo: f64, hi: f64) -> Result<Complex64> {
    let failure = std::cell::RefCell::new(None);
    let r = integrate(
        |u| match f(u) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        lo,
        hi,
        QUAD_ABS,
        QUAD_REL,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(r?.value)
}

fn kappa_r_wronskian(bp: &BulkParams, z: Complex64, w: Complex64) -> Result<Complex64> {
    let a = bp.a;
    let body = integrate_checked(|u| wronskian_integrand(z, w, u), -a, a)?;
    let edge = f_weighted(w, a)? * f_weighted(z, -a)? - f_weighted(z, a)? * f_weighted(w, -a)?;
    Ok(body + PI.sqrt() * edge)
}

/// Weighted `d/dzeta F_1(zeta, w)` along the segment, times `e^{z^2+w^2-|z|^2-|w|^2}`.
fn f1_derivative(a: f64, z: Complex64, w: Complex64, zeta: Complex64) -> Result<Complex64> {
    let base = z * z + w * w - z.norm_sqr() - w.norm_sqr();
    let d = zeta - w;
    let e1 = base - d * d;
    let first = 2.0 * (half_erfc_exp(zeta + w - 2.0 * a, e1)? - half_erfc_exp(zeta + w + 2.0 * a, e1)?);
    let zm = zeta - a;
    let zp = zeta + a;
    let ez = z * z - z.norm_sqr();
    let em = (ez - 2.0 * zm * zm).exp();
    let ep = (ez - 2.0 * zp * zp).exp();
    let wm = f_weighted(w, a)?;
    let wp = f_weighted(w, -a)?;
    Ok(first - SQRT_2 * (em * wm - ep * wp))
}

fn kappa_r_boundary(bp: &BulkParams, z: Complex64, w: Complex64) -> Result<Complex64> {
    // integrate towards the endpoint with the larger |Im| so the weighted
    // integrand stays bounded along the path
    if w.im.abs() > z.im.abs() {
        return Ok(-kappa_r_boundary(bp, w, z)?);
    }
    let a = bp.a;
    let dz = z - w;
    let f1 = if dz.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        integrate_checked(|s| Ok(f1_derivative(a, z, w, w + s * dz)? * dz), 0.0, 1.0)?
    };
    // F_2 = sqrt(pi)/4 [erfc(sqrt2(z+a)) erfc(sqrt2(w-a)) - erfc(sqrt2(z-a)) erfc(sqrt2(w+a))]
    let f2 = PI.sqrt() * (f_weighted(z, -a)? * f_weighted(w, a)? - f_weighted(z, a)? * f_weighted(w, -a)?);
    Ok(f1 + f2)
}

/// `e^{-|z|^2-|w|^2} kappa^R(z, w)` (no offset applied).
pub fn kappa_r_weighted(bp: &BulkParams, z: Complex64, w: Complex64, route: KappaRoute) -> Result<Complex64> {
    check_radius(z, KAPPA_RADIUS, "kappa_r")?;
    check_radius(w, KAPPA_RADIUS, "kappa_r")?;
    match route {
        KappaRoute::Wronskian => kappa_r_wronskian(bp, z, w),
        KappaRoute::Boundary => kappa_r_boundary(bp, z, w),
    }
}

/// `kappa^R(z, w)`; overflows to an error when `e^{|z|^2+|w|^2}` is too large.
pub fn kappa_r(bp: &BulkParams, z: Complex64, w: Complex64, route: KappaRoute) -> Result<Complex64> {
    let v = kappa_r_weighted(bp, z, w, route)?;
    ScaledComplex::from_complex(v)
        .mul_exp(Complex64::new(z.norm_sqr() + w.norm_sqr(), 0.0))
        .try_to_complex()
}

/// `e^{-|z|^2-|w|^2} kappa^W(z, w)`.
pub fn kappa_w_weighted(z: Complex64, w: Complex64) -> Result<Complex64> {
    check_radius(z, KAPPA_RADIUS, "kappa_w")?;
    check_radius(w, KAPPA_RADIUS, "kappa_w")?;
    let u = z.re.abs().max(w.re.abs()) + W_TAIL;
    integrate_checked(|x| wronskian_integrand(z, w, x), -u, u)
}

/// `kappa^W(z, w) = sqrt(pi) e^{z^2+w^2} int_R W(f_w, f_z)(u) du`.
pub fn kappa_w(z: Complex64, w: Complex64) -> Result<Complex64> {
    let v = kappa_w_weighted(z, w)?;
    ScaledComplex::from_complex(v)
        .mul_exp(Complex64::new(z.norm_sqr() + w.norm_sqr(), 0.0))
        .try_to_complex()
}

/// Pfaffian correlation built from a weighted skew kernel.
fn pfaffian_corr(
    points: &[Complex64],
    kernel: impl Fn(Complex64, Complex64) -> Result<Complex64>,
) -> Result<Complex64> {
    let k = points.len();
    let arg = |i: usize| {
        if i.is_multiple_of(2) {
            points[i / 2]
        } else {
            points[i / 2].conj()
        }
    };
    let m = SkewMatrix::from_upper_scaled(2 * k, |i, j| Ok(ScaledComplex::from_complex(kernel(arg(i), arg(j))?)))?;
    let mut pf = pfaffian(&m)?;
    for z in points {
        pf = pf.mul_complex(z.conj() - z);
    }
    pf.try_to_complex()
}

fn real_part(v: Complex64) -> Result<f64> {
    if v.im.abs() > IMAG_TOL * v.re.abs().max(1e-10) {
        return Err(Error::Precision(format!(
            "correlation has imaginary part {:e} against real part {:e}",
            v.im, v.re
        )));
    }
    Ok(v.re)
}

/// `R_k^R(z_1 + it, ..., z_k + it)`.
pub fn corr_limit_r(bp: &BulkParams, points: &[Complex64]) -> Result<f64> {
    let k = points.len();
    ensure!((1..=6).contains(&k), Size, "need 1 <= k <= 6 points, got {k}");
    let shifted: Vec<Complex64> = points.iter().map(|&z| bp.shift(z)).collect();
    if shifted.iter().any(|z| z.im == 0.0) {
        return Ok(0.0);
    }
    let v = pfaffian_corr(&shifted, |x, y| kappa_r_weighted(bp, x, y, KappaRoute::Wronskian))?;
    real_part(v)
}

/// Correlation of the symplectic Ginibre bulk, built from `kappa^W`.
pub fn corr_limit_w(points: &[Complex64]) -> Result<f64> {
    let k = points.len();
    ensure!((1..=6).contains(&k), Size, "need 1 <= k <= 6 points, got {k}");
    if points.iter().any(|z| z.im == 0.0) {
        return Ok(0.0);
    }
    real_part(pfaffian_corr(points, kappa_w_weighted)?)
}

/// `sin(x)/x` with a short series near zero.
fn sinc(x: f64) -> f64 {
    if x.abs() < SERIES_SWITCH {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    } else {
        x.sin() / x
    }
}

/// Chiral sine kernel `sin(4(x-y))/(2(x-y)) - sin(4(x+y))/(2(x+y))`.
pub fn k_chiral(y1: f64, y2: f64) -> f64 {
    2.0 * (sinc(4.0 * (y1 - y2)) - sinc(4.0 * (y1 + y2)))
}

/// Sine kernel `sin(pi(x-y))/(pi(x-y))`.
pub fn k_sine(x: f64, y: f64) -> f64 {
    sinc(PI * (x - y))
}

/// Ginibre bulk kernel `exp(z conj(w) - (|z|^2+|w|^2)/2)`.
pub fn k_exp(z: Complex64, w: Complex64) -> Complex64 {
    (z * w.conj() - 0.5 * (z.norm_sqr() + w.norm_sqr())).exp()
}

/// Dispatches to the reference kernels; real kernels use the real parts.
pub fn reference_kernel(which: ReferenceKernel, x: Complex64, y: Complex64) -> Result<Complex64> {
    match which {
        ReferenceKernel::Chiral => {
            ensure!(x.im == 0.0 && y.im == 0.0, Domain, "chiral kernel takes real arguments");
            Ok(Complex64::new(k_chiral(x.re, y.re), 0.0))
        }
        ReferenceKernel::Sine => {
            ensure!(x.im == 0.0 && y.im == 0.0, Domain, "sine kernel takes real arguments");
            Ok(Complex64::new(k_sine(x.re, y.re), 0.0))
        }
        ReferenceKernel::Exp => Ok(k_exp(x, y)),
    }
}

/// `kappa~(z, w) = e^{-2 z_t w_t} kappa^R(z_t, w_t)` with `z_t = z + it`.
pub fn kappa_tilde_limit(bp: &BulkParams, z: Complex64, w: Complex64) -> Result<Complex64> {
    let (zt, wt) = (bp.shift(z), bp.shift(w));
    let v = kappa_r_weighted(bp, zt, wt, KappaRoute::Wronskian)?;
    ScaledComplex::from_complex(v)
        .mul_exp(zt.norm_sqr() + wt.norm_sqr() - 2.0 * zt * wt)
        .try_to_complex()
}

/// Right side of the first-order ODE satisfied by `kappa~` in `z`.
fn ode_rhs(bp: &BulkParams, z: Complex64, w: Complex64, kt: Complex64) -> Result<Complex64> {
    let (zt, wt) = (bp.shift(z), bp.shift(w));
    let r = bp.rho;
    let s = zt + wt;
    let inhom = erfc_c(s - r / SQRT_2)? - erfc_c(s + r / SQRT_2)?;
    let d = zt - wt;
    let gauss = (d * d - (SQRT_2 * zt - 0.5 * r).powi(2)).exp() + (d * d - (SQRT_2 * zt + 0.5 * r).powi(2)).exp();
    let edge = erfc_c(SQRT_2 * wt - 0.5 * r)? - erfc_c(SQRT_2 * wt + 0.5 * r)?;
    Ok(2.0 * d * kt + inhom - gauss * edge / SQRT_2)
}

/// `d/dz kappa~(z, w)` from the Cauchy integral on a small circle.
pub fn kappa_tilde_dz(bp: &BulkParams, z: Complex64, w: Complex64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..CAUCHY_POINTS {
        let e = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / CAUCHY_POINTS as f64);
        acc += kappa_tilde_limit(bp, z + CAUCHY_RADIUS * e, w)? / e;
    }
    Ok(acc / (CAUCHY_POINTS as f64 * CAUCHY_RADIUS))
}

/// Residual `d/dz kappa~ - (c_0 kappa~ + c_1)` of the limiting ODE.
pub fn ode_residual_limit(bp: &BulkParams, z: Complex64, w: Complex64) -> Result<Complex64> {
    let dz = kappa_tilde_dz(bp, z, w)?;
    let kt = kappa_tilde_limit(bp, z, w)?;
    Ok(dz - ode_rhs(bp, z, w, kt)?)
}

/// `R_1^R(z/a)/a^2` at `t = 0`, the small-`rho` rescaled density.
pub fn chiral_rescaled_density(bp: &BulkParams, z: Complex64) -> Result<f64> {
    ensure!(bp.a <= 0.3, Domain, "chiral rescaling needs a <= 0.3, got {}", bp.a);
    ensure!(z.norm() <= 1.0, Region, "chiral rescaling needs |z| <= 1");
    let zero_t = BulkParams { t: 0.0, ..*bp };
    let v = corr_limit_r(&zero_t, &[z / bp.a])?;
    Ok(v / (bp.a * bp.a))
}
