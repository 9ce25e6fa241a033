//! Log-gamma on the positive real axis.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{ensure, Result};

const MAX_ARG: f64 = 1e7;
const SHIFT: f64 = 15.0;
const ZETA_TERMS: usize = 40;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Stirling remainder `ln Gamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2]` for `x >= 15`.
fn stirling_tail(x: f64) -> f64 {
    // B_{2k} / (2k (2k-1))
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
    ];
    let r = 1.0 / (x * x);
    let mut acc = 0.0;
    for &c in C.iter().rev() {
        acc = acc * r + c;
    }
    acc / x
}

/// Stirling remainder for any `x > 0`; small for large `x`, and accurate to
/// full relative precision there.
pub fn stirling_remainder(x: f64) -> f64 {
    if x >= SHIFT {
        stirling_tail(x)
    } else {
        ln_gamma_unchecked(x) - ((x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln())
    }
}

/// `zeta(k) - 1` for `k = 2..ZETA_TERMS+1`, by direct sum plus Euler-Maclaurin tail.
fn zeta_minus_one() -> &'static [f64; ZETA_TERMS] {
    static CELL: OnceLock<[f64; ZETA_TERMS]> = OnceLock::new();
    CELL.get_or_init(|| {
        const N: f64 = 30.0;
        // B_2, B_4, B_6, B_8 over (2j)!
        const B: [f64; 4] = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1_209_600.0];
        let mut out = [0.0; ZETA_TERMS];
        for (i, slot) in out.iter_mut().enumerate() {
            let k = (i + 2) as f64;
            let mut s: f64 = (2..N as usize).rev().map(|n| (n as f64).powf(-k)).sum();
            s += N.powf(1.0 - k) / (k - 1.0) + 0.5 * N.powf(-k);
            // rising factorial k (k+1) ... (k+2j-2)
            let mut rising = k;
            for (j, b) in B.iter().enumerate() {
                let p = 2 * j as i32 + 1;
                s += b * rising * N.powf(-k - p as f64);
                rising *= (k + p as f64) * (k + p as f64 + 1.0);
            }
            *slot = s;
        }
        out
    })
}

/// `ln Gamma(1 + z)` for `|z| <= 1/2`, relative accuracy near `z = 0`.
fn ln_gamma_1p(z: f64) -> f64 {
    let zm1 = zeta_minus_one();
    let mut acc = 0.0;
    for k in (2..ZETA_TERMS + 2).rev() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc = acc * z + sign * zm1[k - 2] / k as f64;
    }
    -z.ln_1p() + z * (1.0 - EULER_GAMMA) + acc * z * z
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x >= SHIFT {
        return (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + stirling_tail(x);
    }
    if x < 0.5 {
        return ln_gamma_1p(x) - x.ln();
    }
    if x <= 1.5 {
        return ln_gamma_1p(x - 1.0);
    }
    if x <= 2.5 {
        let z = x - 2.0;
        return z.ln_1p() + ln_gamma_1p(z);
    }
    // step down into [1.5, 2.5]
    let mut y = x;
    let mut prod = 1.0;
    while y > 2.5 {
        y -= 1.0;
        prod *= y;
    }
    ln_gamma_unchecked(y) + prod.ln()
}

/// `ln Gamma(x)` for `0 < x <= 1e7`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    ensure!(
        x > 0.0 && x <= MAX_ARG,
        Domain,
        "ln_gamma argument {x} outside (0, 1e7]"
    );
    Ok(ln_gamma_unchecked(x))
}

/// Unchecked variant for internal callers that have validated the argument.
pub(crate) fn lgamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    ln_gamma_unchecked(x)
}
