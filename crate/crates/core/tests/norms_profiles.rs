mod common;

use std::f64::consts::PI;

use common::{gauss, loglog_slope, scenario};
use num_complex::Complex64;
use thermoelastic::datum::DatumSpec;
use thermoelastic::model::{derive_constants, ModelParams};
use thermoelastic::norms::*;
use thermoelastic::profiles::psi_norm_analytic;
use thermoelastic::rates::{fit_power, rate_function, wave_limit_n1};
use thermoelastic::scenario::{geometric_grid, NormKind};

fn series(e: &NormEngine, kind: NormKind, ts: &[f64]) -> Vec<f64> {
    ts.iter().map(|&t| e.norm(kind, t).unwrap().value).collect()
}

#[test]
fn initial_norm_is_data_norm() {
    for n in 1..=3 {
        for (amp, w) in [(1.0, 1.0), (0.6, 1.7)] {
            let s = scenario(n, DatumSpec::gaussian(amp, w), gauss(), gauss());
            let v = solution_l2_norm(&s, 0.0).unwrap();
            let exact = amp * (PI * w * w).powf(n as f64 / 4.0);
            assert!((v / exact - 1.0).abs() < 1e-10, "n={n}: {v} vs {exact}");
        }
    }
}

#[test]
fn zero_data_gives_zero() {
    for n in 1..=3 {
        let s = scenario(n, DatumSpec::zero(), DatumSpec::zero(), DatumSpec::zero());
        for t in [0.0, 10.0, 1e3] {
            assert_eq!(solution_l2_norm(&s, t).unwrap(), 0.0);
            assert_eq!(error_l2_norm(&s, t, Subtract::PhiPlusPsi).unwrap(), 0.0);
        }
    }
    let grid = RadialGrid::new(0.0, 1.0, f64::INFINITY, &QuadConfig::default()).unwrap();
    assert_eq!(l2_norm(|_, _| Complex64::new(0.0, 0.0), &AngularType::Radial, 2, &grid).unwrap(), 0.0);
}

#[test]
fn damped_wave_kernel_n3() {
    let q = QuadConfig::default();
    let scaled = |t: f64| {
        let grid = RadialGrid::new(0.0, (50.0 / t).sqrt(), PI / t, &q).unwrap();
        let v = l2_norm(|r, _| Complex64::new(thermoelastic::spectral::sinc_t(r, t) * (-r * r * t).exp(), 0.0), &AngularType::Radial, 3, &grid)
            .unwrap();
        v * t.powf(0.25)
    };
    let (a, b) = (scaled(1e4), scaled(4e4));
    assert!((a / b - 1.0).abs() < 0.01, "{a} {b}");
}

#[test]
fn mn_norm_laws() {
    let p = ModelParams::reference();
    let c = derive_constants(&p).unwrap();
    let q = QuadConfig::default();
    let norm = |t: f64, n: usize| mn_norm(&c, t, n, &RadialGrid::for_profiles(&c, t, &q).unwrap()).unwrap();

    let ratios: Vec<f64> = [1e3, 1e4, 1e5].iter().map(|&t| norm(t, 2).powi(2) / t.ln()).collect();
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    assert!(hi / lo - 1.0 < 0.10, "{ratios:?}");

    let ts = geometric_grid(1e3, 1e5, 8);
    let v: Vec<f64> = ts.iter().map(|&t| norm(t, 3)).collect();
    let slope = loglog_slope(&ts, &v);
    assert!((slope + 0.25).abs() < 0.02, "{slope}");
}

#[test]
fn mn_branch_reduction_when_betas_coincide() {
    // gamma1 gamma2 = 2 b^2 makes beta0 = beta2
    let p = ModelParams::new(1.0, 0.5, 1.0, 1.0, 2.0).unwrap();
    let c = derive_constants(&p).unwrap();
    assert!((c.beta0 - c.beta2).abs() < 1e-15);
    for (t, r) in [(10.0, 0.3), (100.0, 0.05), (1e3, 0.01)] {
        let m = thermoelastic::profiles::mn_multiplier(&c, t, r);
        let reduced = 2.0 * (0.5 * c.beta1 * r * t).sin().powi(2) * (-c.beta2 * r * r * t).exp() / r;
        assert!((m - reduced).abs() < 1e-12 * (1.0 + reduced.abs()), "{m} {reduced}");
    }
}

#[test]
fn wave_multiplier_examples() {
    let q = QuadConfig::default();
    let wave = |g: &DatumSpec, t: f64, n: usize| wave_multiplier_norm(g, t, n, &RadialGrid::for_wave(g, t, &q).unwrap()).unwrap();

    let d = DatumSpec::derivative(1.0, 1.0, 1);
    let r: Vec<f64> = [1e2, 1e3, 1e4].iter().map(|&t| wave(&d, t, 1) / t.sqrt()).collect();
    assert!(r[1] < 0.5 * r[0] && r[2] < 0.5 * r[1], "{r:?}");

    let g = gauss();
    let limit = wave_limit_n1((2.0 * PI).sqrt());
    assert!((limit - PI).abs() < 1e-14);
    let (a, b) = (wave(&g, 1e3, 1).powi(2) / 1e3, wave(&g, 1e4, 1).powi(2) / 1e4);
    assert!((a / b - 1.0).abs() < 0.02 && (b / limit - 1.0).abs() < 0.05, "{a} {b}");

    let v: Vec<f64> = geometric_grid(1e3, 1e5, 4).iter().map(|&t| wave(&g, t, 2).powi(2) / (t.ln() * 2.0 * PI * 2.0 * PI)).collect();
    let (lo, hi) = v.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    assert!(lo > 0.1 * hi, "{v:?}");
}

fn psi_configs(n: usize) -> Vec<(&'static str, thermoelastic::scenario::Scenario)> {
    let z = DatumSpec::zero;
    vec![
        ("p_theta", scenario(n, z(), z(), gauss())),
        ("m_u1", scenario(n, z(), DatumSpec::derivative(1.0, 1.0, 1), z())),
        ("mixed", scenario(n, gauss(), DatumSpec::shifted(1.0, 1.0, n, 1, 0.7), DatumSpec::shifted(0.5, 1.0, n, 1, -0.4))),
    ]
}

#[test]
fn psi_analytic_matches_quadrature() {
    for n in 1..=3 {
        for (name, s) in psi_configs(n) {
            let e = NormEngine::new(&s).unwrap();
            for t in [1e3, 1e4] {
                let quad = e.norm(NormKind::Psi, t).unwrap().value.powi(2);
                let a = psi_norm_analytic(&e.constants, &e.params, &e.moments, t, n).unwrap();
                assert!((a.total / quad - 1.0).abs() < 0.02, "n={n} {name} t={t}: {} vs {quad}", a.total);
                assert!(a.b0 >= 0.0 && a.b2 >= 0.0 && a.total >= 0.0);
            }
        }
    }
}

#[test]
fn psi_only_u1_mean_n1() {
    let s = scenario(1, DatumSpec::zero(), gauss(), DatumSpec::zero());
    let e = NormEngine::new(&s).unwrap();
    let quad = e.norm(NormKind::Psi, 1e4).unwrap().value.powi(2);
    let a = psi_norm_analytic(&e.constants, &e.params, &e.moments, 1e4, 1).unwrap();
    assert!((a.total / quad - 1.0).abs() < 0.02);
}

#[test]
fn psi_theta_mean_n3_sphere_moment() {
    let s = scenario(3, DatumSpec::zero(), DatumSpec::zero(), DatumSpec::gaussian(1.0, 1.0));
    let e = NormEngine::new(&s).unwrap();
    let mut mm = e.moments.clone();
    mm.p_theta = 1.0;
    let a = psi_norm_analytic(&e.constants, &e.params, &mm, 1e3, 3).unwrap();
    let want = e.constants.a1.powi(2) * 4.0 * PI / 3.0;
    assert!((a.b2 - want).abs() < 1e-14, "{} {want}", a.b2);

    let zero = thermoelastic::profiles::ProfileMoments::zero(3, 0);
    assert_eq!(psi_norm_analytic(&e.constants, &e.params, &zero, 1e3, 3).unwrap().total, 0.0);
}

#[test]
fn psi_total_scaling_and_remainder_decay() {
    for n in 1..=3 {
        for (name, s) in psi_configs(n) {
            let e = NormEngine::new(&s).unwrap();
            let conv = (2.0 * PI).powi(n as i32);
            let scaled: Vec<(f64, f64, f64)> = [1e3, 1e4, 1e5]
                .iter()
                .map(|&t| {
                    let a = psi_norm_analytic(&e.constants, &e.params, &e.moments, t, n).unwrap();
                    let tn = t.powf(n as f64 / 2.0);
                    (a.total * tn, (a.remainder / conv).abs() * tn, (a.e7_remainder / conv).abs() * tn)
                })
                .collect();
            let (c0, c2) = (scaled[0].0, scaled[2].0);
            assert!(c0 > 0.0 && (c2 / c0 - 1.0).abs() < 0.02, "n={n} {name}: {scaled:?}");
            for w in scaled.windows(2) {
                assert!(w[1].1 <= w[0].1 + 1e-14 * c0 && w[1].2 <= w[0].2 + 1e-14 * c0, "n={n} {name}: {scaled:?}");
            }
            assert!(scaled[2].1 + scaled[2].2 < 0.01 * c2, "n={n} {name}: {scaled:?}");
        }
    }
}

#[test]
fn error_decays_faster_when_all_moments_vanish() {
    let sd = || DatumSpec::second_derivative(1.0, 1.0, 1);
    let ts = geometric_grid(1e2, 1e4, 12);
    for n in 1..=3 {
        let e = NormEngine::new(&scenario(n, sd(), sd(), sd())).unwrap();
        let v = series(&e, NormKind::ErrorPhi, &ts);
        let fit = fit_power(&ts.iter().copied().zip(v).collect::<Vec<_>>()).unwrap();
        assert!(fit.exponent_or_slope < -(n as f64) / 4.0 - 0.2, "n={n}: {}", fit.exponent_or_slope);
    }
}

#[test]
fn error_slope_n2_shifted_u1() {
    let s = scenario(2, gauss(), DatumSpec::shifted(1.0, 1.0, 2, 1, 1.0), gauss());
    let e = NormEngine::new(&s).unwrap();
    let ts = geometric_grid(1e2, 1e4, 12);
    let v = series(&e, NormKind::ErrorPhi, &ts);
    let fit = fit_power(&ts.iter().copied().zip(v).collect::<Vec<_>>()).unwrap();
    assert!((fit.exponent_or_slope + 0.5).abs() < 0.04, "{}", fit.exponent_or_slope);
}

#[test]
fn error_at_zero_time_is_finite() {
    for n in 1..=3 {
        let s = scenario(n, gauss(), DatumSpec::shifted(1.0, 1.0, n, 1, 0.5), gauss());
        let e = NormEngine::new(&s).unwrap();
        let phi = e.norm(NormKind::Phi, 0.0).unwrap().value;
        let err = e.norm(NormKind::ErrorPhi, 0.0).unwrap().value;
        let sol = e.norm(NormKind::Solution, 0.0).unwrap().value;
        assert_eq!(phi, 0.0);
        assert!((err - sol).abs() < 1e-12 * sol);
        assert!(e.norm(NormKind::ErrorPhiPsi, 0.0).unwrap().value.is_finite());
    }
}

#[test]
fn leading_profile_ratio_stays_bracketed() {
    let ts = geometric_grid(1e2, 1e4, 6);
    for n in 1..=3 {
        let e = NormEngine::new(&scenario(n, gauss(), gauss(), gauss())).unwrap();
        let a = (e.moments.p_u1.powi(2) + e.moments.p_theta.powi(2)).sqrt();
        let r: Vec<f64> = ts.iter().map(|&t| e.norm(NormKind::Phi, t).unwrap().value / (rate_function(n, t) * a)).collect();
        let (lo, hi) = r.iter().fold((f64::INFINITY, 0.0f64), |(x, y), &v| (x.min(v), y.max(v)));
        assert!(lo > 0.0 && hi / lo < 2.0, "n={n}: {r:?}");
    }
}
