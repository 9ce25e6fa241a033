//! Complementary error function of complex argument.
//!
//! Built on the Faddeeva function `w(z) = exp(-z^2) erfc(-iz)` in the upper
//! half plane, evaluated with Weideman's rational expansion (40 terms, relative
//! error near 1e-15 there). The lower half plane is reached by reflection.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};

const TERMS: usize = 40;
const REGION: f64 = 30.0;

struct Weideman {
    /// Polynomial coefficients, highest degree first.
    coeffs: [f64; TERMS],
    l: f64,
}

fn weideman() -> &'static Weideman {
    static CELL: OnceLock<Weideman> = OnceLock::new();
    CELL.get_or_init(|| {
        let n = TERMS;
        let m = 2 * n;
        let m2 = 2 * m;
        let l = (n as f64 / 2f64.sqrt()).sqrt();
        // samples of exp(-t^2)(L^2+t^2) at t = L tan(theta/2), theta on a periodic grid
        let sample = |k: i64| -> f64 {
            if k.unsigned_abs() as usize == m {
                return 0.0;
            }
            let theta = k as f64 * PI / m as f64;
            let t = l * (theta / 2.0).tan();
            (-t * t).exp() * (l * l + t * t)
        };
        let shifted: Vec<f64> = (0..m2)
            .map(|i| {
                if i < m {
                    sample(i as i64)
                } else {
                    sample(i as i64 - m2 as i64)
                }
            })
            .collect();
        let mut coeffs = [0.0; TERMS];
        for j in 1..=n {
            let mut acc = 0.0;
            for (i, v) in shifted.iter().enumerate() {
                let phase = 2.0 * PI * ((i * j) % m2) as f64 / m2 as f64;
                acc += v * phase.cos();
            }
            coeffs[n - j] = acc / m2 as f64;
        }
        Weideman { coeffs, l }
    })
}

/// Faddeeva function for `Im z >= 0`.
fn faddeeva_upper(z: Complex64) -> Complex64 {
    let w = weideman();
    let iz = Complex64::new(-z.im, z.re);
    let lmi = Complex64::new(w.l, 0.0) - iz;
    let big_z = (Complex64::new(w.l, 0.0) + iz) / lmi;
    let mut p = Complex64::new(0.0, 0.0);
    for &c in &w.coeffs {
        p = p * big_z + c;
    }
    2.0 * p / (lmi * lmi) + 1.0 / (PI.sqrt() * lmi)
}

fn check_region(z: Complex64) -> Result<()> {
    ensure!(
        z.re.is_finite() && z.im.is_finite() && z.re.abs() <= REGION && z.im.abs() <= REGION,
        Region,
        "erfc argument {z} outside |Re|, |Im| <= {REGION}"
    );
    Ok(())
}

fn finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Overflow(format!("{what} not representable")))
    }
}

/// `exp(-z^2) * v` without forming an infinite intermediate.
fn exp_neg_sq_times(z: Complex64, v: Complex64) -> Complex64 {
    let e = -z * z;
    if e.re < 700.0 {
        e.exp() * v
    } else {
        (e + v.ln()).exp()
    }
}

/// `erfc(z)` for `|Re z|, |Im z| <= 30`.
pub fn erfc_c(z: Complex64) -> Result<Complex64> {
    check_region(z)?;
    let v = if z.re >= 0.0 {
        exp_neg_sq_times(z, faddeeva_upper(Complex64::new(-z.im, z.re)))
    } else {
        2.0 - exp_neg_sq_times(z, faddeeva_upper(Complex64::new(z.im, -z.re)))
    };
    finite(v, "erfc")
}

/// Scaled variant `exp(z^2) erfc(z)`, same region.
pub fn erfcx_c(z: Complex64) -> Result<Complex64> {
    check_region(z)?;
    let v = if z.re >= 0.0 {
        faddeeva_upper(Complex64::new(-z.im, z.re))
    } else {
        let e = z * z;
        let two_e = if e.re < 700.0 {
            2.0 * e.exp()
        } else {
            (e + 2f64.ln()).exp()
        };
        two_e - faddeeva_upper(Complex64::new(z.im, -z.re))
    };
    finite(v, "erfcx")
}

/// `exp(e) * erfc(s) / 2`, arranged so that no factor overflows when the
/// product is representable.
pub fn half_erfc_exp(s: Complex64, e: Complex64) -> Result<Complex64> {
    check_region(s)?;
    let v = if s.re >= 0.0 {
        0.5 * (e - s * s).exp() * faddeeva_upper(Complex64::new(-s.im, s.re))
    } else {
        e.exp() - 0.5 * (e - s * s).exp() * faddeeva_upper(Complex64::new(s.im, -s.re))
    };
    finite(v, "scaled erfc product")
}

/// Real complementary error function, total on the real line.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x >= 27.3 {
        return 0.0;
    }
    if x <= -6.0 {
        return 2.0;
    }
    let xc = Complex64::new(x, 0.0);
    if x >= 0.0 {
        exp_neg_sq_times(xc, faddeeva_upper(Complex64::new(0.0, x))).re
    } else {
        2.0 - exp_neg_sq_times(xc, faddeeva_upper(Complex64::new(0.0, -x))).re
    }
}
