//! Semi-large gap probabilities: exact finite-N products of incomplete gamma
//! ratios and the constants of their large-N expansion.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use crate::error::{ensure, Error, Result};
use crate::model::{make_params, ModelParams};
use crate::quad::integrate;
use crate::special::{erfc, reg_gamma_pq};

pub const MAX_N: usize = 10_000;
const CONST_TOL: f64 = 1e-12;

/// Radial hole type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// No points in `|zeta| < r1`.
    Inner,
    /// No points in `|zeta| > r2`.
    Outer,
    /// No points outside `[r1, r2]`.
    Both,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::Inner, Region::Outer, Region::Both];

    pub fn as_str(&self) -> &'static str {
        match self {
            Region::Inner => "inner",
            Region::Outer => "outer",
            Region::Both => "both",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Region {
    type Err = Error;
    fn from_str(s: &str) -> Result<Region> {
        match s {
            "inner" => Ok(Region::Inner),
            "outer" => Ok(Region::Outer),
            "both" => Ok(Region::Both),
            _ => Err(Error::Validation(format!(
                "unknown region '{s}', expected inner|outer|both"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapResult {
    pub log_p: f64,
    pub region: Region,
    pub n: usize,
    pub rho: f64,
    pub term_count: usize,
}

/// `ln x` for `x = 1 - y`, picking whichever of `x`, `y` is the accurate one.
fn ln_one_minus(x: f64, y: f64) -> f64 {
    if x <= 0.5 {
        x.ln()
    } else {
        (-y).ln_1p()
    }
}

/// Log of the `j`-th factor of the gap product.
pub fn log_gap_summand(p: &ModelParams, region: Region, j: usize) -> Result<f64> {
    let a = 2.0 + 2.0 * j as f64 + p.b_n_n;
    let x_in = p.b_n_n;
    let x_out = p.b_n_n + 2.0 * p.n as f64;
    let v = match region {
        Region::Inner => {
            let (p1, q1) = reg_gamma_pq(a, x_in)?;
            ensure_positive(q1, j)?;
            ln_one_minus(q1, p1)
        }
        Region::Outer => {
            let (p2, q2) = reg_gamma_pq(a, x_out)?;
            ensure_positive(p2, j)?;
            ln_one_minus(p2, q2)
        }
        Region::Both => {
            // Q(a, x_in) - Q(a, x_out) = 1 - P(a, x_in) - Q(a, x_out)
            let (p1, q1) = reg_gamma_pq(a, x_in)?;
            let (_, q2) = reg_gamma_pq(a, x_out)?;
            let diff = q1 - q2;
            ensure_positive(diff, j)?;
            ln_one_minus(diff, p1 + q2)
        }
    };
    Ok(v)
}

fn ensure_positive(x: f64, j: usize) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Precision(format!("gap factor {j} evaluated to {x:e}")))
    }
}

/// Natural log of the gap probability for the given hole type.
pub fn log_gap(p: &ModelParams, region: Region) -> Result<GapResult> {
    ensure!(p.n <= MAX_N, Size, "log_gap needs N <= {MAX_N}, got {}", p.n);
    ensure!(p.b_n_n >= 0.0, Domain, "log_gap needs b_N N >= 0");
    let mut sum = 0.0;
    let mut comp = 0.0;
    for j in 0..p.n {
        let x = log_gap_summand(p, region, j)?;
        let t = sum + x;
        comp += if sum.abs() >= x.abs() {
            (sum - t) + x
        } else {
            (x - t) + sum
        };
        sum = t;
    }
    Ok(GapResult {
        log_p: (sum + comp).min(0.0),
        region,
        n: p.n,
        rho: p.rho,
        term_count: p.n,
    })
}

/// Leading and constant terms of the gap asymptotics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapConstants {
    pub c1: f64,
    pub c1_tilde: f64,
    pub c0: f64,
}

pub fn gap_constants(rho: f64) -> Result<GapConstants> {
    ensure!(
        rho > 0.0 && rho <= 10.0,
        Domain,
        "gap constants need rho in (0, 10], got {rho}"
    );
    let s = SQRT_2 * rho;
    let c1 = integrate(|x| (1.0 - 0.5 * erfc(s * x)).ln(), 0.0, 1.0, CONST_TOL, 0.0)?.value;
    let c1_tilde = integrate(
        |x| (0.5 * erfc(s * (x - 1.0)) - 0.5 * erfc(s * x)).ln(),
        0.0,
        1.0,
        CONST_TOL,
        0.0,
    )?
    .value;
    let r2 = rho * rho;
    let tail = integrate(
        |x| (-2.0 * r2 * x * x).exp() * (5.0 + 3.0 * r2 * x - 2.0 * r2 * x * x) / (1.0 - 0.5 * erfc(s * x)),
        0.0,
        1.0,
        CONST_TOL,
        0.0,
    )?
    .value;
    let c0 = 0.5 * (2.0 - erfc(s)).ln() - rho / (3.0 * (2.0 * PI).sqrt()) * tail;
    Ok(GapConstants { c1, c1_tilde, c0 })
}

/// One row of the comparison between exact gaps and their asymptotics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapRow {
    pub rho: f64,
    pub region: Region,
    pub n: usize,
    pub log_p: f64,
    /// `N C_1` or `N C~_1`
    pub n_times_c: f64,
    /// predicted constant: `-C_0`, `C_0` or 0
    pub o1_pred: f64,
    pub residual: f64,
}

pub fn gap_row(n: usize, rho: f64, region: Region, consts: &GapConstants) -> Result<GapRow> {
    let p = make_params(n, rho)?;
    let log_p = log_gap(&p, region)?.log_p;
    let (lead, o1_pred) = match region {
        Region::Inner => (consts.c1, -consts.c0),
        Region::Outer => (consts.c1, consts.c0),
        Region::Both => (consts.c1_tilde, 0.0),
    };
    let n_times_c = n as f64 * lead;
    Ok(GapRow {
        rho,
        region,
        n,
        log_p,
        n_times_c,
        o1_pred,
        residual: log_p - n_times_c - o1_pred,
    })
}

/// Rows for every `rho` and every region, in that order.
pub fn gap_table(n: usize, rhos: &[f64]) -> Result<Vec<GapRow>> {
    let mut rows = Vec::with_capacity(3 * rhos.len());
    for &rho in rhos {
        let consts = gap_constants(rho)?;
        for region in Region::ALL {
            rows.push(gap_row(n, rho, region, &consts)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_particle_values() {
        let p = make_params(1, 1.0).unwrap();
        assert_eq!(log_gap(&p, Region::Inner).unwrap().log_p, 0.0);
        let outer = log_gap(&p, Region::Outer).unwrap().log_p;
        let exact = (1.0 - 3.0 * (-2f64).exp()).ln();
        assert!((outer - exact).abs() < 1e-14);
        assert!((log_gap(&p, Region::Both).unwrap().log_p - outer).abs() < 1e-14);
    }

    #[test]
    fn small_rho_limit() {
        let c = gap_constants(1e-4).unwrap();
        assert!((c.c1 - 0.5f64.ln()).abs() < 1e-3);
    }

    #[test]
    fn region_parsing() {
        assert_eq!("outer".parse::<Region>().unwrap(), Region::Outer);
        assert!("middle".parse::<Region>().is_err());
        assert!(gap_constants(0.0).is_err());
        assert!(gap_constants(11.0).is_err());
    }
}
