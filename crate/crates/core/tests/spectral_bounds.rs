mod common;

use num_complex::Complex64;
use thermoelastic::model::{derive_constants, ModelParams};
use thermoelastic::profiles::{eval_profiles, j0_hat};
use thermoelastic::scenario::geometric_grid;
use thermoelastic::spectral::*;

fn interior_decay(p: &ModelParams, rs: &[f64]) -> f64 {
    rs.iter()
        .map(|&r| {
            let z = char_roots(p, r).unwrap();
            (-z.lambda1).min(-z.lambda_r) / (r * r)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Times in `[t0, t1]` resolving the period `2 pi / (beta1 r)` with 40 samples,
/// merged with a geometric grid.
fn resolved_times(r: f64, beta1: f64, t0: f64, t1: f64) -> Vec<f64> {
    let h = 2.0 * std::f64::consts::PI / (beta1 * r) / 40.0;
    let mut ts: Vec<f64> = (0..).map(|j| t0 + j as f64 * h).take_while(|t| *t <= t1).collect();
    ts.extend(geometric_grid(t0, t1, 20));
    ts
}

/// Sup of `f` with `r` on `coarse` (times resolved per `r`), re-asserted on
/// the interleaved `fine` radii.
fn fit_then_assert(coarse: &[f64], fine: &[f64], times: impl Fn(f64) -> Vec<f64>, f: impl Fn(f64, f64) -> f64) -> f64 {
    let max = |rs: &[f64]| rs.iter().flat_map(|&r| times(r).into_iter().map(move |t| (r, t))).map(|(r, t)| f(r, t)).fold(0.0f64, f64::max);
    let c = max(coarse);
    let check = max(fine);
    assert!(check <= 1.05 * c, "fitted C = {c}, finer grid gives {check}");
    c
}

#[test]
fn interior_pointwise_envelope() {
    let p = ModelParams::reference();
    let z = ZoneConfig::for_params(&p);
    let b1 = derive_constants(&p).unwrap().beta1;
    let rs = geometric_grid(1e-3, z.epsilon0, 8);
    let rf = geometric_grid(1e-3, z.epsilon0, 29);
    let c = 0.9 * interior_decay(&p, &rf);
    assert!((c / 0.9 - 0.25).abs() < 1e-3);
    let ratio = |r: f64, t: f64| {
        let m = solution_multipliers(&p, &char_roots(&p, r).unwrap(), t).unwrap();
        let e = (-c * r * r * t).exp();
        let growth = 1.0 + t.sqrt() + (r * t).sin().abs() / r;
        (m.m_u0.abs() / e).max((m.m_u1.abs() + (r * m.m_theta).abs()) / (e * growth))
    };
    let big_c = fit_then_assert(&rs, &rf, |r| resolved_times(r, b1, 10.0, 1e4), ratio);
    assert!(big_c < 50.0);
}

#[test]
fn large_frequency_envelope() {
    let p = ModelParams::reference();
    let z = ZoneConfig::for_params(&p);
    let rs = geometric_grid(z.n0, 10.0 * z.n0, 8);
    let rf = geometric_grid(z.n0, 10.0 * z.n0, 31);
    let c_branch = p.gamma1 * p.gamma2 / (2.0 * p.kappa);
    // decay rate read off the roots, compared with the oscillatory-branch value
    let c = rf.iter().map(|&r| -char_roots(&p, r).unwrap().lambda_r).fold(f64::INFINITY, f64::min);
    assert!((c - c_branch).abs() <= 0.2 * c_branch);
    let ratio = |r: f64, t: f64| {
        let m = solution_multipliers(&p, &char_roots(&p, r).unwrap(), t).unwrap();
        let e = (-c * t).exp();
        let br = (1.0 + r * r).sqrt();
        (m.m_u0.abs() / e).max(m.m_u1.abs() * br / e).max((r * m.m_theta).abs() * br * br / e)
    };
    let big_c = fit_then_assert(&rs, &rf, |r| resolved_times(r, p.b, 1.0, 20.0), ratio);
    assert!(big_c < 10.0);
    let th = theta_multiplier(&p, &char_roots(&p, 50.0).unwrap(), 1.0).unwrap();
    let bound = 10.0 * (-c).exp() * (1.0 + 50.0f64 * 50.0);
    assert!(th.q_u0.abs() <= bound && th.q_u1.abs() <= bound && th.q_theta.abs() <= 10.0 * (-c).exp());
}

#[test]
fn leading_profile_chain() {
    let p = ModelParams::reference();
    let c = derive_constants(&p).unwrap();
    let z = ZoneConfig::for_params(&p);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let cd = 0.9 * interior_decay(&p, &geometric_grid(1e-3, z.epsilon0, 29));
    let residuals = |r: f64, t: f64| {
        let roots = char_roots(&p, r).unwrap();
        let g = eval_profiles(&c, &p, t, r);
        let ju = j0_hat(&p, &roots, t, one, zero).unwrap();
        let jt = j0_hat(&p, &roots, t, zero, one).unwrap();
        let e = (-cd * r * r * t).exp();
        let plain = ((ju - g.g0).norm() + (jt - g.g1_radial).norm()) / e;
        let refined = ((ju - g.g0 - g.h0).norm() + (jt - g.g1_radial - g.h1_radial).norm()) / (r * e);
        (plain, refined)
    };
    let rs = geometric_grid(1e-3, z.epsilon0, 8);
    let rf = geometric_grid(1e-3, z.epsilon0, 29);
    let times = |r: f64| resolved_times(r, c.beta1, 10.0, 1e4);
    let plain = fit_then_assert(&rs, &rf, times, |r, t| residuals(r, t).0);
    let refined = fit_then_assert(&rs, &rf, times, |r, t| residuals(r, t).1);
    assert!(plain.is_finite() && refined.is_finite());

    // m_u1 against G0 at a single interior point
    let roots = char_roots(&p, 0.05).unwrap();
    let m = solution_multipliers(&p, &roots, 100.0).unwrap();
    let g = eval_profiles(&c, &p, 100.0, 0.05);
    assert!((m.m_u1 - g.g0).abs() <= plain * (-cd * 0.05f64.powi(2) * 100.0).exp());
}

#[test]
fn interior_vieta_and_signs_over_200_points() {
    let p = ModelParams::reference();
    let ratio = (1e6f64).powf(1.0 / 199.0);
    for i in 0..200 {
        let r = 1e-3 * ratio.powi(i);
        let z = char_roots(&p, r).unwrap();
        assert!(vieta_residuals(&p, &z).iter().all(|v| *v < 1e-10), "r={r}");
        assert!(z.lambda1 < 0.0 && z.lambda_r < 0.0);
    }
}
