//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use pfgas::finite_kernel::{cd_residual, corr_finite};
use pfgas::gap::{gap_table, log_gap, Region};
use pfgas::limit_kernels::*;
use pfgas::model::{log_skew_norm, make_params, skew_form};
use pfgas::pfaffian::{pfaffian, pfaffian_naive, SkewMatrix};
use pfgas::quad::integrate;
use pfgas::sampler::{annulus_mass, im_symmetry_statistic, sample_chain, ChainConfig};
use pfgas::scaledcx::ScaledComplex;
use pfgas::special::{reg_gamma_p, reg_gamma_q, szego_q_expansion, temme_q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{det_oracle, power_sum, q_by_ray, random_skew};

type Check = Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn grid(n: usize, half: f64) -> Vec<Complex64> {
    let step = 2.0 * half / (n - 1) as f64;
    (0..n * n)
        .map(|k| c(-half + step * (k % n) as f64, -half + step * (k / n) as f64))
        .collect()
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>().join(", ")
}

fn require(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn pfaffian_algebra() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_det: f64 = 0.0;
    let mut worst_naive: f64 = 0.0;
    for k in 0..200 {
        let n = 2 + 2 * (k % 8);
        let a = random_skew(n, &mut rng);
        let m = SkewMatrix::from_dense(n, a.clone()).map_err(|e| e.to_string())?;
        let pf = pfaffian(&m).map_err(|e| e.to_string())?;
        let (dm, dl) = det_oracle(n, &a);
        worst_det = worst_det.max((pf * pf).rel_diff(&ScaledComplex::new(dm, dl)));
        if n <= 8 {
            let naive = pfaffian_naive(&m).map_err(|e| e.to_string())?;
            worst_naive = worst_naive.max(pf.rel_diff(&naive));
        }
    }
    require(
        worst_det <= 1e-9 && worst_naive <= 1e-12,
        format!("max |Pf^2/det - 1| = {worst_det:.1e}, max naive gap = {worst_naive:.1e}"),
    )
}

fn skew_orthogonality() -> Check {
    let p = make_params(4, 1.0).unwrap();
    let mut worst: f64 = 0.0;
    for f in 0..=7usize {
        for g in 0..=7usize {
            let v = skew_form(&p, f, g).map_err(|e| e.to_string())?;
            let rk = log_skew_norm(&p, f.min(g) / 2).unwrap().exp();
            let want = match (f % 2, g % 2) {
                (0, 1) if f / 2 == g / 2 => rk,
                (1, 0) if f / 2 == g / 2 => -rk,
                _ => 0.0,
            };
            worst = worst.max((v - want).norm() / rk);
        }
    }
    require(
        worst <= 1e-8,
        format!("max deviation / r_k = {worst:.1e} over degrees <= 7"),
    )
}

fn christoffel_darboux() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut disk = || Complex64::from_polar(2.0 * rng.random::<f64>().sqrt(), 2.0 * PI * rng.random::<f64>());
    let mut worst: f64 = 0.0;
    for n in [10, 30, 50] {
        for rho in [0.5, 1.0, 2.0] {
            let p = make_params(n, rho).unwrap();
            for theta in [0.0, FRAC_PI_3] {
                for _ in 0..20 {
                    let (z, w) = (disk(), disk());
                    worst = worst.max(cd_residual(&p, theta, z, w).map_err(|e| e.to_string())?);
                }
            }
        }
    }
    require(worst <= 1e-9, format!("max residual = {worst:.1e}"))
}

fn sum_to_q() -> Check {
    let mut worst: f64 = 0.0;
    for z in [1.0f64, 10.0, 50.0] {
        for cc in [0.5, 3.7] {
            for n in [5usize, 40] {
                let lhs = power_sum(n, cc, z);
                let rhs = z.exp() * (reg_gamma_q(n as f64 + cc, z).unwrap() - reg_gamma_q(cc, z).unwrap());
                worst = worst.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()));
            }
        }
    }
    require(worst <= 1e-10, format!("max relative gap = {worst:.1e}"))
}

fn uniform_expansions() -> Check {
    let mut details = Vec::new();
    let mut ok = true;
    for lambda in [0.8, 1.2] {
        let errs: Vec<f64> = [50.0, 100.0, 200.0]
            .iter()
            .map(|&a| (temme_q(a, lambda, 1).unwrap() - reg_gamma_p(a, a * lambda).unwrap()).abs())
            .collect();
        ok &= strictly_decreasing(&errs) && errs[2] <= 1e-5;
        details.push(format!(
            "lambda={lambda}: {:.1e} {:.1e} {:.1e}",
            errs[0], errs[1], errs[2]
        ));
    }
    let z = Complex64::from_polar(1.5, FRAC_PI_4);
    let szego = szego_q_expansion(200.0, z, 3).map_err(|e| e.to_string())?;
    let err = szego.rel_diff(&q_by_ray(200.0, 200.0 * z));
    ok &= err <= 1e-4;
    details.push(format!("3-term ray error {err:.1e}"));
    require(ok, details.join("; "))
}

fn sup_gap(
    p: &pfgas::model::ModelParams,
    theta: f64,
    pts: &[Complex64],
    limit: impl Fn(Complex64) -> f64,
) -> Result<f64, String> {
    let mut sup: f64 = 0.0;
    for &z in pts {
        let finite = corr_finite(p, theta, &[z]).map_err(|e| e.to_string())?;
        sup = sup.max((finite - limit(z)).abs());
    }
    Ok(sup)
}

fn bulk_away_from_axis() -> Check {
    let bp = BulkParams::new(1.0, 0.0).unwrap();
    let pts = grid(7, 1.5);
    let pair = [c(0.2, 0.3), c(-0.4, 0.5)];
    let limit2 = corr_limit_c(&bp, &pair).map_err(|e| e.to_string())?;
    let mut sups = Vec::new();
    let mut spots = Vec::new();
    for n in [25, 50, 100] {
        let p = make_params(n, 1.0).unwrap();
        sups.push(sup_gap(&p, FRAC_PI_2, &pts, |z| corr_limit_c(&bp, &[z]).unwrap())?);
        spots.push((corr_finite(&p, FRAC_PI_2, &pair).map_err(|e| e.to_string())? - limit2).abs());
    }
    require(
        strictly_decreasing(&sups) && sups[2] <= 0.05 && strictly_decreasing(&spots),
        format!("sup = [{}], k=2 spot = [{}]", list(&sups), list(&spots)),
    )
}

fn bulk_near_axis() -> Check {
    let pts = grid(7, 1.5);
    let mut ok = true;
    let mut details = Vec::new();
    for t in [0.0, 1.0] {
        let bp = BulkParams::new(1.0, t).unwrap();
        let limit = |z: Complex64| corr_limit_r(&bp, &[z]).unwrap();
        for shift in [0.0, PI] {
            let mut sups = Vec::new();
            for n in [25, 50, 100] {
                let p = make_params(n, 1.0).unwrap();
                let theta = std::f64::consts::SQRT_2 * t / n as f64 + shift;
                sups.push(sup_gap(&p, theta, &pts, limit)?);
            }
            ok &= strictly_decreasing(&sups) && sups[2] <= 0.05;
            details.push(format!(
                "t={t}{}: [{}]",
                if shift > 0.0 { " (p<0)" } else { "" },
                list(&sups)
            ));
        }
    }
    require(ok, details.join("; "))
}

fn transition() -> Check {
    let base = BulkParams::new(1.0, 0.0).unwrap();
    let disk: Vec<Complex64> = grid(41, 1.0).into_iter().filter(|z| z.norm() <= 1.0).collect();
    let mut sups = Vec::new();
    for t in [2.0, 4.0, 6.0, 8.0] {
        let bp = BulkParams::new(1.0, t).unwrap();
        let mut sup: f64 = 0.0;
        for &z in &disk {
            let r = corr_limit_r(&bp, &[z]).map_err(|e| e.to_string())?;
            sup = sup.max((r - corr_limit_c(&base, &[z]).unwrap()).abs());
        }
        sups.push(sup);
    }
    require(
        strictly_decreasing(&sups),
        format!("sup over t = 2,4,6,8: [{}]", list(&sups)),
    )
}

fn large_rho_matching() -> Check {
    let pts = grid(5, 1.0);
    let mut worst = Vec::new();
    for rho in [4.0, 8.0] {
        let bp = BulkParams::new(rho, 0.0).unwrap();
        let mut m: f64 = 0.0;
        for &z in &pts {
            for &w in &pts {
                let r = kappa_r_weighted(&bp, z, w, KappaRoute::Wronskian).map_err(|e| e.to_string())?;
                m = m.max((r - kappa_w_weighted(z, w).unwrap()).norm());
            }
        }
        worst.push(m);
    }
    require(
        worst[1] * 5.0 <= worst[0],
        format!("rho=4: {:.2e}, rho=8: {:.2e}", worst[0], worst[1]),
    )
}

fn chiral_limit() -> Check {
    let (y, sigma) = (0.3, 0.05);
    let target = k_chiral(y, y);
    let mut errs = Vec::new();
    let mut vals = Vec::new();
    for a in [0.2, 0.1, 0.05] {
        let bp = BulkParams::new(2.0 * std::f64::consts::SQRT_2 * a, 0.0).unwrap();
        let f = |x: f64| {
            let g = (-(x / sigma).powi(2)).exp();
            g * chiral_rescaled_density(&bp, c(x, y)).unwrap()
        };
        let v = integrate(f, -0.3, 0.3, 1e-10, 1e-8).map_err(|e| e.to_string())?.value;
        vals.push(v);
        errs.push((v - target).abs());
    }
    require(
        strictly_decreasing(&errs),
        format!("integrals {vals:.3?} -> {target:.4}"),
    )
}

fn gap_asymptotics() -> Check {
    let rhos = [0.5, 1.0, 1.5, 2.0];
    let r100 = gap_table(100, &rhos).map_err(|e| e.to_string())?;
    let r200 = gap_table(200, &rhos).map_err(|e| e.to_string())?;
    let worst = r100.iter().map(|r| r.residual.abs()).fold(0.0, f64::max);
    let ratio = r100
        .iter()
        .zip(&r200)
        .map(|(a, b)| b.residual.abs() / a.residual.abs())
        .fold(0.0, f64::max);
    require(
        worst <= 0.05 && ratio <= 0.6,
        format!("max |residual| at N=100 = {worst:.2e}, max N=200/N=100 ratio = {ratio:.2}"),
    )
}

fn inequality_chain() -> Check {
    let mut checked = 0;
    for n in [10, 100, 200, 500] {
        for rho in [0.5, 1.0, 1.5, 2.0] {
            let p = make_params(n, rho).unwrap();
            let v: Vec<f64> = Region::ALL
                .iter()
                .map(|&r| log_gap(&p, r).map(|g| g.log_p))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            if !(v[0] > v[1] && v[1] > v[2]) {
                return Err(format!("N={n} rho={rho}: {v:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} parameter pairs ordered"))
}

fn kappa_routes_and_ode() -> Check {
    let pts = grid(5, 1.0);
    let mut route: f64 = 0.0;
    let mut ode: f64 = 0.0;
    for rho in [0.5, 1.0, 2.0] {
        for t in [0.0, 1.0] {
            let bp = BulkParams::new(rho, t).unwrap();
            let shift = c(0.0, t);
            for &z in &pts {
                for &w in pts.iter().step_by(6) {
                    let (zt, wt) = (z + shift, w + shift);
                    let a = kappa_r_weighted(&bp, zt, wt, KappaRoute::Wronskian).map_err(|e| e.to_string())?;
                    let b = kappa_r_weighted(&bp, zt, wt, KappaRoute::Boundary).map_err(|e| e.to_string())?;
                    // the ODE helpers apply the offset themselves
                    route = route.max((a - b).norm() / a.norm().max(1e-6));
                    ode = ode.max(ode_residual_limit(&bp, z, w).map_err(|e| e.to_string())?.norm());
                }
            }
        }
    }
    require(
        route <= 1e-10 && ode <= 1e-7,
        format!("route gap {route:.1e}, ODE residual {ode:.1e}"),
    )
}

fn sampler_suite() -> Check {
    let p = make_params(50, 5.0).unwrap();
    let cfg = ChainConfig {
        thin: 10,
        ..ChainConfig::new(&p, 100_000, 10_000, 42)
    };
    let s = sample_chain(&p, &cfg).map_err(|e| e.to_string())?;
    let mass = annulus_mass(&s, p.r1 - 3.0 * p.gamma_n, p.r2 + 3.0 * p.gamma_n).unwrap();
    let ks = im_symmetry_statistic(&s).unwrap();
    let again = sample_chain(&p, &cfg).map_err(|e| e.to_string())?;
    let bits = |s: &pfgas::sampler::SampleSet| -> Vec<u64> {
        s.configs
            .iter()
            .flatten()
            .flat_map(|z| [z.re.to_bits(), z.im.to_bits()])
            .collect()
    };
    let same = bits(&s) == bits(&again) && s.log_energy_trace == again.log_energy_trace;
    require(
        mass >= 0.9 && ks < 0.05 && same,
        format!(
            "annulus mass {mass:.4}, KS {ks:.4}, acceptance {:.2}, deterministic {same}",
            s.acceptance_rate
        ),
    )
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            name: "Pfaffian algebra",
            budget: secs(5),
            run: pfaffian_algebra,
        },
        Criterion {
            name: "skew-orthogonality",
            budget: secs(30),
            run: skew_orthogonality,
        },
        Criterion {
            name: "Christoffel-Darboux identity",
            budget: secs(60),
            run: christoffel_darboux,
        },
        Criterion {
            name: "sum-to-Q identity",
            budget: secs(1),
            run: sum_to_q,
        },
        Criterion {
            name: "uniform expansions",
            budget: secs(10),
            run: uniform_expansions,
        },
        Criterion {
            name: "bulk limit away from the axis",
            budget: secs(300),
            run: bulk_away_from_axis,
        },
        Criterion {
            name: "bulk limit near the axis",
            budget: secs(300),
            run: bulk_near_axis,
        },
        Criterion {
            name: "transition to the away kernel",
            budget: secs(60),
            run: transition,
        },
        Criterion {
            name: "large-rho matching",
            budget: secs(60),
            run: large_rho_matching,
        },
        Criterion {
            name: "chiral limit",
            budget: secs(120),
            run: chiral_limit,
        },
        Criterion {
            name: "gap asymptotics",
            budget: secs(120),
            run: gap_asymptotics,
        },
        Criterion {
            name: "gap inequality chain",
            budget: secs(60),
            run: inequality_chain,
        },
        Criterion {
            name: "kappa routes and ODE",
            budget: secs(120),
            run: kappa_routes_and_ode,
        },
        Criterion {
            name: "sampler statistics",
            budget: secs(180),
            run: sampler_suite,
        },
    ];
    let mut failed = 0;
    for (k, cr) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (cr.run)();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= cr.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {}: {} ({detail}) [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            cr.name,
            took.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
