//! Single-site Metropolis sampler for the Gibbs measure
//! `prod |z_j - z_k|^2 |z_j - conj(z_k)|^2 prod |z_j - conj(z_j)|^2 e^{-N Q_N(z_j)}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{ensure, Result};
use crate::model::ModelParams;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainConfig {
    /// Sweeps of `N` single-site proposals each, burn-in included.
    pub steps: usize,
    pub burn_in: usize,
    pub proposal_sigma: f64,
    pub seed: u64,
    /// Store every `thin`-th sweep after burn-in.
    pub thin: usize,
}

impl ChainConfig {
    /// Configuration with the default step `sigma = gamma_N / 2`.
    pub fn new(p: &ModelParams, steps: usize, burn_in: usize, seed: u64) -> ChainConfig {
        ChainConfig {
            steps,
            burn_in,
            proposal_sigma: 0.5 * p.gamma_n,
            seed,
            thin: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(
            self.steps > self.burn_in,
            Validation,
            "steps ({}) must exceed burn-in ({})",
            self.steps,
            self.burn_in
        );
        ensure!(
            self.proposal_sigma > 0.0 && self.proposal_sigma.is_finite(),
            Validation,
            "proposal sigma must be positive"
        );
        ensure!(self.thin >= 1, Validation, "thin must be at least 1");
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    pub n: usize,
    pub configs: Vec<Vec<Complex64>>,
    /// Sweep index of each stored configuration.
    pub sweeps: Vec<usize>,
    pub acceptance_rate: f64,
    /// Log-density after every sweep, burn-in included.
    pub log_energy_trace: Vec<f64>,
}

/// `-N Q_N(z)` without the origin check; `-inf` at the origin when `b_N > 0`.
fn confinement(p: &ModelParams, z: Complex64) -> f64 {
    let r2 = z.norm_sqr();
    let nf = p.n as f64;
    if r2 == 0.0 {
        return if p.b_n == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    -nf * (p.a_n * r2 - p.b_n * r2.ln())
}

/// Terms of the log-density that involve site `j` placed at `z`.
fn site_energy(p: &ModelParams, config: &[Complex64], j: usize, z: Complex64) -> f64 {
    let mut s = (z - z.conj()).norm_sqr().ln() + confinement(p, z);
    for (k, &w) in config.iter().enumerate() {
        if k != j {
            s += ((z - w).norm_sqr() * (z - w.conj()).norm_sqr()).ln();
        }
    }
    s
}

/// Unnormalised log-density; `-inf` on the zero set (real or coincident
/// points, or the origin when `b_N > 0`).
pub fn log_density_unnorm(p: &ModelParams, config: &[Complex64]) -> f64 {
    let mut s = 0.0;
    for (j, &z) in config.iter().enumerate() {
        s += (z - z.conj()).norm_sqr().ln() + confinement(p, z);
        for &w in &config[j + 1..] {
            s += ((z - w).norm_sqr() * (z - w.conj()).norm_sqr()).ln();
        }
    }
    if s.is_nan() {
        f64::NEG_INFINITY
    } else {
        s
    }
}

/// Equispaced points on the unit circle, none of them real.
pub fn initial_config(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * (j as f64 + 0.25) / n as f64))
        .collect()
}

pub fn sample_chain(p: &ModelParams, cfg: &ChainConfig) -> Result<SampleSet> {
    cfg.validate()?;
    let n = p.n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut config = initial_config(n);
    let mut accepted = 0u64;
    let mut proposed = 0u64;
    let mut configs = Vec::new();
    let mut sweeps = Vec::new();
    let mut trace = Vec::with_capacity(cfg.steps);
    for sweep in 0..cfg.steps {
        for _ in 0..n {
            let j = rng.random_range(0..n);
            let g1: f64 = rng.sample(StandardNormal);
            let g2: f64 = rng.sample(StandardNormal);
            let old = config[j];
            let new = old + cfg.proposal_sigma * Complex64::new(g1, g2);
            let delta = site_energy(p, &config, j, new) - site_energy(p, &config, j, old);
            let u: f64 = rng.random();
            proposed += 1;
            if delta >= 0.0 || u < delta.exp() {
                config[j] = new;
                accepted += 1;
            }
        }
        trace.push(log_density_unnorm(p, &config));
        if sweep >= cfg.burn_in && (sweep - cfg.burn_in).is_multiple_of(cfg.thin) {
            configs.push(config.clone());
            sweeps.push(sweep);
        }
    }
    Ok(SampleSet {
        n,
        configs,
        sweeps,
        acceptance_rate: accepted as f64 / proposed.max(1) as f64,
        log_energy_trace: trace,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub mass: Vec<f64>,
}

fn moduli(s: &SampleSet) -> Result<Vec<f64>> {
    let r: Vec<f64> = s.configs.iter().flatten().map(|z| z.norm()).collect();
    ensure!(!r.is_empty(), Validation, "empty sample set");
    Ok(r)
}

/// Normalised histogram of `|z|` over all stored points, on `[min, max]`.
pub fn radial_hist(s: &SampleSet, bins: usize) -> Result<Histogram> {
    ensure!(bins >= 1, Validation, "need at least one bin");
    let r = moduli(s)?;
    let lo = r.iter().copied().fold(f64::INFINITY, f64::min);
    let mut hi = r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi <= lo {
        hi = lo + 1.0;
    }
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|k| lo + width * k as f64).collect();
    let mut mass = vec![0.0; bins];
    let unit = 1.0 / r.len() as f64;
    for x in r {
        let k = (((x - lo) / width) as usize).min(bins - 1);
        mass[k] += unit;
    }
    Ok(Histogram { edges, mass })
}

/// Fraction of stored points with `lo <= |z| <= hi`.
pub fn annulus_mass(s: &SampleSet, lo: f64, hi: f64) -> Result<f64> {
    let r = moduli(s)?;
    let inside = r.iter().filter(|&&x| x >= lo && x <= hi).count();
    Ok(inside as f64 / r.len() as f64)
}

/// Kolmogorov-Smirnov distance between the empirical laws of `Im z` and `-Im z`.
pub fn im_symmetry_statistic(s: &SampleSet) -> Result<f64> {
    let mut y: Vec<f64> = s.configs.iter().flatten().map(|z| z.im).collect();
    ensure!(!y.is_empty(), Validation, "empty sample set");
    y.sort_by(f64::total_cmp);
    let mut neg: Vec<f64> = y.iter().rev().map(|v| -v).collect();
    neg.dedup();
    let m = y.len() as f64;
    // F(x) = #{y <= x}/m and G(x) = #{-y <= x}/m = #{y >= -x}/m
    let cdf = |x: f64| y.partition_point(|&v| v <= x) as f64 / m;
    let cdf_neg = |x: f64| (y.len() - y.partition_point(|&v| v < -x)) as f64 / m;
    let mut d: f64 = 0.0;
    for &x in y.iter().chain(neg.iter()) {
        d = d.max((cdf(x) - cdf_neg(x)).abs());
    }
    Ok(d)
}
