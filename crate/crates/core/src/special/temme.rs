//! Uniform (Temme) expansion of the incomplete gamma ratio through the
//! transition point, and the central-window approximation.
//!
//! `P(a, a lambda) ~ erfc(-eta sqrt(a/2))/2 - R_a(eta)` with
//! `R_a ~ exp(-a eta^2/2) / sqrt(2 pi a) * sum_j c_j(eta) a^-j`,
//! `eta^2/2 = lambda - 1 - ln lambda`, `sign(eta) = sign(lambda - 1)`.
//!
//! The coefficients follow `c_0 = 1/(lambda-1) - 1/eta` and
//! `c_j = (1/eta) d c_{j-1}/d eta + gamma_j/(lambda-1)`. Near `eta = 0` each
//! closed form is a difference of poles, so a Taylor expansion in `eta`
//! (generated once from the same recursion) is used instead.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::erfc::erfc;
use super::incgamma::phi_minus_one;
use super::series::Series;
use crate::error::{ensure, Result};

/// Stirling coefficients `gamma_0..gamma_2` of `Gamma*(a)`.
pub const STIRLING_GAMMA: [f64; 3] = [1.0, -1.0 / 12.0, 1.0 / 288.0];

const MAX_ORDER: usize = 2;
const SERIES_TERMS: usize = 28;
const SERIES_RADIUS: f64 = 0.4;

/// `eta(lambda)` with `eta^2/2 = lambda - 1 - ln lambda`.
pub fn temme_eta(lambda: f64) -> Result<f64> {
    ensure!(
        lambda > 0.0 && lambda.is_finite(),
        Domain,
        "temme_eta needs lambda > 0, got {lambda}"
    );
    let d = lambda - 1.0;
    let phi = phi_minus_one(d).max(0.0);
    Ok(d.signum() * (2.0 * phi).sqrt())
}

struct Expansions {
    coeffs: [Series; MAX_ORDER + 1],
}

fn expansions() -> &'static Expansions {
    static CELL: OnceLock<Expansions> = OnceLock::new();
    CELL.get_or_init(build_expansions)
}

fn build_expansions() -> Expansions {
    let n = SERIES_TERMS + 2 * MAX_ORDER + 4;
    // 2 phi(d)/d^2 = 1 - 2d/3 + 2d^2/4 - ...
    let mut g = Series::zeros(n);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        g.0[k] = sign * 2.0 / (k + 2) as f64;
    }
    // eta = d * B(d); revert d = eta / B(d) by fixed-point substitution
    let inv_b = g.sqrt().recip();
    let mut eta = Series::zeros(n);
    eta.0[1] = 1.0;
    let mut d = eta.clone();
    for _ in 0..n {
        d = inv_b.compose(&d).mul(&eta);
    }
    // (lambda - 1)/eta, equal to 1 at eta = 0
    let ratio = d.shift_down();
    let inv_ratio = ratio.recip();
    let mut one = Series::zeros(n);
    one.0[0] = 1.0;
    let c0 = inv_ratio.add(&one.scale(-1.0)).shift_down();
    let mut coeffs = vec![c0];
    for j in 1..=MAX_ORDER {
        let prev = &coeffs[j - 1];
        let s = prev.derivative().add(&inv_ratio.scale(STIRLING_GAMMA[j]));
        coeffs.push(s.shift_down());
    }
    let coeffs: [Series; MAX_ORDER + 1] = coeffs.try_into().expect("fixed length");
    Expansions { coeffs }
}

/// Constant terms `c'_{j-1}(0) + gamma_j` that must vanish for `c_j` to be
/// regular at the transition point.
#[cfg(test)]
pub(crate) fn regularity_defects() -> Vec<f64> {
    let e = expansions();
    (1..=MAX_ORDER)
        .map(|j| e.coeffs[j - 1].derivative().0[0] + STIRLING_GAMMA[j])
        .collect()
}

/// `c_j(eta)` for `j <= 2`, with `lambda` supplied to avoid recomputation.
pub fn temme_coefficient(j: usize, eta: f64, lambda: f64) -> Result<f64> {
    ensure!(j <= MAX_ORDER, Domain, "Temme coefficient order {j} above {MAX_ORDER}");
    if eta.abs() < SERIES_RADIUS {
        return Ok(expansions().coeffs[j].eval(eta));
    }
    let dl = lambda - 1.0;
    let g = STIRLING_GAMMA;
    let v = match j {
        0 => 1.0 / dl - 1.0 / eta,
        1 => 1.0 / eta.powi(3) - 1.0 / dl.powi(3) - 1.0 / dl.powi(2) + g[1] / dl,
        _ => -3.0 / eta.powi(5) + lambda * (3.0 / dl.powi(5) + 2.0 / dl.powi(4) - g[1] / dl.powi(3)) + g[2] / dl,
    };
    Ok(v)
}

/// Temme approximation of `P(a, a lambda)` truncated after `c_order`.
pub fn temme_q(a: f64, lambda: f64, order: usize) -> Result<f64> {
    ensure!(a >= 20.0 && a.is_finite(), Domain, "temme_q needs a >= 20, got {a}");
    ensure!(order <= MAX_ORDER, Domain, "temme_q order {order} above {MAX_ORDER}");
    let eta = temme_eta(lambda)?;
    let main = 0.5 * erfc(-eta * (a / 2.0).sqrt());
    let mut sum = 0.0;
    let mut apow = 1.0;
    for j in 0..=order {
        sum += temme_coefficient(j, eta, lambda)? / apow;
        apow *= a;
    }
    let r = (-a * phi_minus_one(lambda - 1.0)).exp() / (2.0 * PI * a).sqrt() * sum;
    Ok(main - r)
}

/// Central approximation `Q(s+1, s + sqrt(2s) z) ~ erfc(z)/2 + sqrt(2/pi)(1+z^2)e^{-z^2}/(3 sqrt s)`.
pub fn q_center(s: f64, z: f64) -> Result<f64> {
    ensure!(s >= 100.0 && s.is_finite(), Domain, "q_center needs s >= 100, got {s}");
    ensure!(z.is_finite(), Domain, "q_center argument must be finite");
    Ok(0.5 * erfc(z) + (2.0 / PI).sqrt() * (1.0 + z * z) * (-z * z).exp() / (3.0 * s.sqrt()))
}
