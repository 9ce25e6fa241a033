use num_complex::Complex64;
use pfgas::limit_kernels::*;
use pfgas::pfaffian::{determinant, pfaffian, SkewMatrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn grid(n: usize, half: f64) -> Vec<Complex64> {
    let step = 2.0 * half / (n - 1) as f64;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            out.push(c(-half + step * j as f64, -half + step * i as f64));
        }
    }
    out
}

#[test]
fn pf_det_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 1..=3 {
        for _ in 0..20 {
            let mut f = vec![c(0.0, 0.0); k * k];
            for j in 0..k {
                for l in j..k {
                    let v = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    f[j * k + l] = v;
                    f[l * k + j] = v;
                }
            }
            let y: Vec<Complex64> = (0..k)
                .map(|_| c(rng.random_range(0.2..1.5), rng.random_range(-1.0..1.0)))
                .collect();
            let n = 2 * k;
            let mut m = vec![c(0.0, 0.0); n * n];
            for j in 0..k {
                for l in 0..k {
                    let d = 2.0 * y[j] * y[l];
                    let minus = (y[j] - y[l]) / d;
                    let plus = (y[j] + y[l]) / d;
                    let fj = f[j * k + l];
                    m[(2 * j) * n + 2 * l] = fj * minus;
                    m[(2 * j) * n + 2 * l + 1] = fj * plus;
                    m[(2 * j + 1) * n + 2 * l] = -fj * plus;
                    m[(2 * j + 1) * n + 2 * l + 1] = -fj * minus;
                }
            }
            let sm = SkewMatrix::from_dense(n, m).unwrap();
            let mut lhs = pfaffian(&sm).unwrap().to_complex();
            for yj in &y {
                lhs *= yj;
            }
            let rhs = determinant(k, &f).unwrap().to_complex();
            assert!(
                (lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1e-3),
                "k={k}: {lhs} vs {rhs}"
            );
        }
    }
}

#[test]
fn corr_c_examples() {
    let bp = BulkParams::new(2f64.sqrt(), 0.0).unwrap();
    let z1 = c(0.2, 0.3);
    assert!(corr_limit_c(&bp, &[z1, z1]).unwrap().abs() < 1e-12);
    let z2 = c(-1.5, 1.0);
    let r2 = corr_limit_c(&bp, &[z1, z2]).unwrap();
    let r1 = corr_limit_c(&bp, &[z1]).unwrap() * corr_limit_c(&bp, &[z2]).unwrap();
    assert!(r2 > 0.0 && r2 <= r1);
    // diagonal tends to one for wide annuli
    let wide = BulkParams::new(20.0, 0.0).unwrap();
    assert!((corr_limit_c(&wide, &[c(0.0, 0.0)]).unwrap() - 1.0).abs() < 1e-12);
    assert!(k_c(&bp, c(7.0, 0.0), c(0.0, 0.0)).is_err());
}

#[test]
fn corr_c_cocycle_invariance() {
    let bp = BulkParams::new(1.3, 0.0).unwrap();
    let pts = [c(0.1, 0.4), c(-0.5, 0.2), c(0.6, -0.3)];
    let phi = [0.7, -2.1, 1.4];
    let k = pts.len();
    let mut m = vec![c(0.0, 0.0); k * k];
    let mut mc = vec![c(0.0, 0.0); k * k];
    for j in 0..k {
        for l in 0..k {
            let w = (-(pts[j].norm_sqr() + pts[l].norm_sqr())).exp();
            let v = k_c(&bp, pts[j], pts[l]).unwrap() * w;
            m[j * k + l] = v;
            mc[j * k + l] = v * c(0.0, phi[j] - phi[l]).exp();
        }
    }
    let a = determinant(k, &m).unwrap().to_complex();
    let b = determinant(k, &mc).unwrap().to_complex();
    assert!((a - b).norm() < 1e-12);
    assert!((a.re - corr_limit_c(&bp, &pts).unwrap()).abs() < 1e-12);
}

#[test]
fn route_equivalence_grid() {
    let pts = grid(5, 1.0);
    for rho in [0.5, 1.0, 2.0] {
        let bp = BulkParams::new(rho, 0.0).unwrap();
        for &z in &pts {
            for &w in pts.iter().step_by(3) {
                let a = kappa_r_weighted(&bp, z, w, KappaRoute::Wronskian).unwrap();
                let b = kappa_r_weighted(&bp, z, w, KappaRoute::Boundary).unwrap();
                assert!(
                    (a - b).norm() <= 1e-10 * a.norm().max(1e-6),
                    "rho={rho} z={z} w={w}: {a} vs {b}"
                );
            }
        }
    }
}

#[test]
fn density_nonnegative() {
    let bp = BulkParams::new(1.0, 0.0).unwrap();
    for z in grid(9, 2.0) {
        let r = corr_limit_r(&bp, &[z]).unwrap();
        assert!(r >= -1e-12, "R1({z}) = {r}");
    }
}

#[test]
fn transition_to_away_kernel() {
    let bp8 = BulkParams::new(1.0, 8.0).unwrap();
    let bp = BulkParams::new(1.0, 0.0).unwrap();
    let z = c(0.0, 0.5);
    let r = corr_limit_r(&bp8, &[z]).unwrap();
    let rc = corr_limit_c(&bp, &[z]).unwrap();
    // the exact gap at this point is 0.0207; it oscillates in t while decaying
    assert!((r - rc).abs() < 0.025, "{r} vs {rc}");
}

#[test]
fn kappa_w_matching() {
    let (z, w) = (c(0.3, 0.0), c(0.0, 0.5));
    let kw = kappa_w_weighted(z, w).unwrap();
    let mut last = f64::INFINITY;
    for rho in [4.0, 6.0, 8.0] {
        let bp = BulkParams::new(rho, 0.0).unwrap();
        let d = (kappa_r_weighted(&bp, z, w, KappaRoute::Wronskian).unwrap() - kw).norm();
        assert!(d < last, "rho={rho}: {d} vs {last}");
        last = d;
    }
    assert!(kappa_w(z, z).unwrap().norm() < 1e-15);
    let a = kappa_w(z, w).unwrap();
    assert!((a + kappa_w(w, z).unwrap()).norm() < 1e-13 * a.norm());
}

#[test]
fn chiral_density_symmetry() {
    let bp = BulkParams::new(0.3, 0.0).unwrap();
    let z = c(0.1, 0.2);
    let a = chiral_rescaled_density(&bp, z).unwrap();
    let b = chiral_rescaled_density(&bp, z.conj()).unwrap();
    assert!((a - b).abs() < 1e-10 * a.abs());
    let tiny = BulkParams::new(0.2, 0.0).unwrap();
    assert!(chiral_rescaled_density(&tiny, c(0.0, 0.9)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kappa_r_antisymmetric(zr in -1.5..1.5f64, zi in -1.5..1.5f64, wr in -1.5..1.5f64, wi in -1.5..1.5f64, rho in 0.3..3.0f64) {
        let bp = BulkParams::new(rho, 0.0).unwrap();
        let (z, w) = (c(zr, zi), c(wr, wi));
        let a = kappa_r_weighted(&bp, z, w, KappaRoute::Wronskian).unwrap();
        let b = kappa_r_weighted(&bp, w, z, KappaRoute::Wronskian).unwrap();
        prop_assert!((a + b).norm() <= 1e-13 * a.norm().max(1e-3));
    }

    #[test]
    fn k_c_hermitian(zr in -2.0..2.0f64, zi in -2.0..2.0f64, wr in -2.0..2.0f64, wi in -2.0..2.0f64, rho in 0.3..5.0f64) {
        let bp = BulkParams::new(rho, 0.0).unwrap();
        let (z, w) = (c(zr, zi), c(wr, wi));
        let a = k_c(&bp, z, w).unwrap();
        let b = k_c(&bp, w, z).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-13 * a.norm().max(1.0));
    }

    #[test]
    fn density_conjugation_symmetric(x in -1.5..1.5f64, y in 0.05..1.5f64, rho in 0.5..3.0f64) {
        let bp = BulkParams::new(rho, 0.0).unwrap();
        let a = corr_limit_r(&bp, &[c(x, y)]).unwrap();
        let b = corr_limit_r(&bp, &[c(x, -y)]).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1e-8));
    }
}
