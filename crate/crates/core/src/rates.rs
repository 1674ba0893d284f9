//! Rate fits on norm-vs-time series and the theorem harnesses built on them.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datum::sphere_area;
use crate::error::{Error, Result};
use crate::norms::{mn_norm, wave_multiplier_norm, AngularType, NormEngine, NormReport, RadialGrid};
use crate::profiles::ProfileMoments;
use crate::scenario::{geometric_grid, Claim, NormKind, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitModel {
    /// `v ~ C t^alpha`
    Power,
    /// `v^2 ~ a ln t + b`
    LogSquare,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub model: FitModel,
    /// `alpha` for power fits, `a` for log-square fits.
    pub exponent_or_slope: f64,
    /// `C` for power fits, intercept `b` for log-square fits.
    pub prefactor: f64,
    /// Largest absolute log-scale residual.
    pub max_residual: f64,
    pub residuals: Vec<f64>,
    pub t_range: (f64, f64),
}

pub const MIN_FIT_POINTS: usize = 8;
pub const MIN_FIT_DECADES: f64 = 2.0;

fn check_series(series: &[(f64, f64)], min_decades: f64) -> Result<()> {
    if series.len() < MIN_FIT_POINTS {
        return Err(Error::Fit(format!("need at least {MIN_FIT_POINTS} samples, got {}", series.len())));
    }
    if series.iter().any(|(t, v)| !(*t > 0.0) || !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::Fit("times and values must be positive and finite".into()));
    }
    if series.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::Fit("times must be strictly increasing".into()));
    }
    let decades = (series[series.len() - 1].0 / series[0].0).log10();
    if decades < min_decades * (1.0 - 1e-9) {
        return Err(Error::Fit(format!("series spans {decades:.3} decades, need {min_decades}")));
    }
    Ok(())
}

/// Ordinary least squares `y = slope x + intercept`.
fn ols(x: &[f64], y: &[f64]) -> (f64, f64) {
    let m = x.len() as f64;
    let mx = x.iter().sum::<f64>() / m;
    let my = y.iter().sum::<f64>() / m;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

pub fn fit_power(series: &[(f64, f64)]) -> Result<RateFit> {
    fit_power_span(series, MIN_FIT_DECADES)
}

/// `fit_power` with a relaxed minimum span, for top-decade windows.
pub fn fit_power_span(series: &[(f64, f64)], min_decades: f64) -> Result<RateFit> {
    check_series(series, min_decades)?;
    let v0 = series[0].1;
    let x: Vec<f64> = series.iter().map(|(t, _)| t.ln()).collect();
    // Ratios to the first value keep the exponent invariant under binary rescaling.
    let y: Vec<f64> = series.iter().map(|(_, v)| (v / v0).ln()).collect();
    let (alpha, c) = ols(&x, &y);
    let residuals: Vec<f64> = x.iter().zip(&y).map(|(a, b)| b - (alpha * a + c)).collect();
    Ok(RateFit {
        model: FitModel::Power,
        exponent_or_slope: alpha,
        prefactor: v0 * c.exp(),
        max_residual: residuals.iter().fold(0.0, |m, r| m.max(r.abs())),
        residuals,
        t_range: (series[0].0, series[series.len() - 1].0),
    })
}

pub fn fit_log_square(series: &[(f64, f64)]) -> Result<RateFit> {
    check_series(series, MIN_FIT_DECADES)?;
    let x: Vec<f64> = series.iter().map(|(t, _)| t.ln()).collect();
    let y: Vec<f64> = series.iter().map(|(_, v)| v * v).collect();
    let (a, b) = ols(&x, &y);
    let residuals: Vec<f64> = x
        .iter()
        .zip(&y)
        .map(|(xi, yi)| {
            let model = a * xi + b;
            if model > 0.0 {
                (yi / model).ln()
            } else {
                f64::INFINITY
            }
        })
        .collect();
    Ok(RateFit {
        model: FitModel::LogSquare,
        exponent_or_slope: a,
        prefactor: b,
        max_residual: residuals.iter().fold(0.0, |m, r| m.max(r.abs())),
        residuals,
        t_range: (series[0].0, series[series.len() - 1].0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NondegeneracyReport {
    pub a_squared: f64,
    pub b_squared: f64,
}

impl NondegeneracyReport {
    pub fn from_moments(mm: &ProfileMoments) -> Self {
        let sq = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
        let a_squared = mm.p_u1 * mm.p_u1 + mm.p_theta * mm.p_theta;
        NondegeneracyReport { a_squared, b_squared: a_squared + mm.p_u0 * mm.p_u0 + sq(&mm.m_u1) + sq(&mm.m_theta) }
    }

    pub fn a_nonzero(&self) -> bool {
        self.a_squared > 1e-24
    }

    pub fn b_nonzero(&self) -> bool {
        self.b_squared > 1e-24
    }
}

/// `A_n(t)`: `sqrt(t)`, `sqrt(ln t)`, `t^{-1/4}`.
pub fn rate_function(n: usize, t: f64) -> f64 {
    match n {
        1 => t.sqrt(),
        2 => t.ln().sqrt(),
        _ => t.powf(-0.25),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|fitted - target| <= tolerance`
    Within,
    /// `fitted <= target`
    AtMost,
    /// `fitted >= target`
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    /// Claim name with a `:check` suffix for sub-checks.
    pub claim: String,
    pub n: usize,
    pub fitted: f64,
    pub target: f64,
    pub tolerance: f64,
    pub residual: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

impl Verdict {
    pub fn new(claim: String, n: usize, fitted: f64, target: f64, tolerance: f64, residual: f64, cmp: Comparison) -> Self {
        let pass = match cmp {
            Comparison::Within => (fitted - target).abs() <= tolerance,
            Comparison::AtMost => fitted <= target + tolerance,
            Comparison::AtLeast => fitted >= target - tolerance,
        };
        Verdict { claim, n, fitted, target, tolerance, residual, comparison: cmp, pass }
    }
}

/// Norm of `kind` at every time, evaluated in parallel, returned in order.
pub fn sweep(engine: &NormEngine, kind: NormKind, times: &[f64]) -> Result<Vec<(f64, NormReport)>> {
    times.par_iter().map(|&t| engine.norm(kind, t).map(|r| (t, r))).collect()
}

fn values(s: &[(f64, NormReport)]) -> Vec<(f64, f64)> {
    s.iter().map(|(t, r)| (*t, r.value)).collect()
}

fn squared(s: &[(f64, f64)]) -> Vec<(f64, f64)> {
    s.iter().map(|(t, v)| (*t, v * v)).collect()
}

/// `max/min - 1` of `v^2 / ln t` over the series.
pub fn log_ratio_variation(s: &[(f64, f64)]) -> f64 {
    let q: Vec<f64> = s.iter().map(|(t, v)| v * v / t.ln()).collect();
    let (lo, hi) = q.iter().fold((f64::INFINITY, 0.0f64), |(a, b), x| (a.min(*x), b.max(*x)));
    hi / lo - 1.0
}

/// Geometric grid over the top decade of `[t_min, t_max]`.
pub fn top_decade(t_max: f64, per_decade: usize) -> Vec<f64> {
    geometric_grid(t_max / 10.0, t_max, per_decade)
}

pub const N1_GROWTH_TOL: f64 = 0.05;
pub const N3_DECAY_TOL: f64 = 0.03;
pub const ERROR_RATE_TOL: f64 = 0.04;
pub const LOG_RATIO_TOL: f64 = 0.10;
pub const TOP_DECADE_POWER_TOL: f64 = 0.05;
pub const MN_N3_TOL: f64 = 0.04;

/// Runs `claim` on `scn` and its degenerate counterpart.
pub fn theorem_harness(scn: &Scenario, claim: Claim) -> Result<Vec<Verdict>> {
    let n = scn.dimension;
    let engine = NormEngine::new(scn)?;
    let report = NondegeneracyReport::from_moments(&engine.moments);
    let times = scn.time.times();
    let ppd = scn.time.points_per_decade;
    let name = claim.name();
    let tag = |s: &str| format!("{name}:{s}");
    let mut out = Vec::new();
    match claim {
        Claim::ThmOptimalEst => {
            if !report.a_nonzero() {
                return Err(Error::Scenario(format!("{name} needs A != 0 data (A^2 = {:e})", report.a_squared)));
            }
            let s = values(&sweep(&engine, NormKind::Solution, &times)?);
            out.extend(optimal_est_checks(name, n, &s, &engine, scn.time.t_max, ppd)?);
            if let Some(d) = scn.degenerate_counterpart() {
                let de = NormEngine::new(&d)?;
                if NondegeneracyReport::from_moments(&de.moments).a_nonzero() {
                    return Err(Error::Scenario("degenerate counterpart must have A = 0".into()));
                }
                let ds = values(&sweep(&de, NormKind::Solution, &times)?);
                let (fit, bound) = match n {
                    1 => (fit_power(&squared(&ds))?, 0.1),
                    2 => (fit_power(&ds)?, -0.2),
                    _ => (fit_power(&ds)?, -0.45),
                };
                out.push(Verdict::new(tag("degenerate"), n, fit.exponent_or_slope, bound, 0.0, fit.max_residual, Comparison::AtMost));
            }
        }
        Claim::ThmOptimalLead => {
            if !report.b_nonzero() {
                return Err(Error::Scenario(format!("{name} needs B != 0 data (B^2 = {:e})", report.b_squared)));
            }
            let target = -(n as f64) / 4.0;
            let s = values(&sweep(&engine, NormKind::ErrorPhi, &times)?);
            let fit = fit_power(&s)?;
            out.push(Verdict::new(tag("error_exponent"), n, fit.exponent_or_slope, target, ERROR_RATE_TOL, fit.max_residual, Comparison::Within));
            let top = values(&sweep(&engine, NormKind::ErrorPhi, &top_decade(scn.time.t_max, ppd))?);
            let scaled: Vec<f64> = top.iter().map(|(t, v)| v * t.powf(n as f64 / 4.0)).collect();
            let (lo, hi) = scaled.iter().fold((f64::INFINITY, 0.0f64), |(a, b), x| (a.min(*x), b.max(*x)));
            out.push(Verdict::new(tag("lower_bracket"), n, hi / lo, 1.0, 0.25, lo, Comparison::AtMost));
            if report.a_nonzero() {
                let phi = values(&sweep(&engine, NormKind::Phi, &times)?);
                let q: Vec<f64> = phi.iter().map(|(t, v)| v / (rate_function(n, *t) * report.a_squared.sqrt())).collect();
                let (lo, hi) = q.iter().fold((f64::INFINITY, 0.0f64), |(a, b), x| (a.min(*x), b.max(*x)));
                out.push(Verdict::new(tag("phi_ratio_bracket"), n, hi / lo, 1.0, 1.0, lo, Comparison::AtMost));
            }
            if let Some(d) = scn.degenerate_counterpart() {
                let de = NormEngine::new(&d)?;
                if NondegeneracyReport::from_moments(&de.moments).b_nonzero() {
                    return Err(Error::Scenario("degenerate counterpart must have B = 0".into()));
                }
                let fit = fit_power(&values(&sweep(&de, NormKind::ErrorPhi, &times)?))?;
                out.push(Verdict::new(tag("degenerate"), n, fit.exponent_or_slope, target - 0.2, 0.0, fit.max_residual, Comparison::AtMost));
            }
        }
        Claim::CoroSecondOrder => {
            let pts = [scn.time.t_min, scn.time.t_max];
            let s = values(&sweep(&engine, NormKind::ErrorPhiPsi, &pts)?);
            let scaled: Vec<f64> = s.iter().map(|(t, v)| v * t.powf(n as f64 / 4.0)).collect();
            out.push(Verdict::new(tag("decrease_factor"), n, scaled[0] / scaled[1], 2.0, 0.0, 0.0, Comparison::AtLeast));
        }
        Claim::PropMn => {
            let c = &engine.constants;
            let q = scn.quadrature;
            let mn = |t: f64| -> Result<(f64, f64)> { Ok((t, mn_norm(c, t, n, &RadialGrid::for_profiles(c, t, &q)?)?)) };
            let s: Vec<(f64, f64)> = times.par_iter().map(|&t| mn(t)).collect::<Result<_>>()?;
            match n {
                1 => {
                    let fit = fit_power(&squared(&s))?;
                    out.push(Verdict::new(tag("norm2_exponent"), n, fit.exponent_or_slope, 1.0, N1_GROWTH_TOL, fit.max_residual, Comparison::Within));
                }
                2 => {
                    let top: Vec<(f64, f64)> = top_decade(scn.time.t_max, ppd).par_iter().map(|&t| mn(t)).collect::<Result<_>>()?;
                    out.push(Verdict::new(tag("log_ratio_variation"), n, log_ratio_variation(&top), 0.0, LOG_RATIO_TOL, 0.0, Comparison::AtMost));
                }
                _ => {
                    let fit = fit_power(&squared(&s))?;
                    out.push(Verdict::new(tag("norm2_exponent"), n, fit.exponent_or_slope, -0.5, MN_N3_TOL, fit.max_residual, Comparison::Within));
                }
            }
        }
        Claim::AppendixWave => {
            if n == 3 {
                return Err(Error::Scenario(format!("{name} is defined for n = 1, 2")));
            }
            let g = scn.outputs.wave_datum.clone().unwrap_or_else(|| scn.data.u1.clone());
            let q = scn.quadrature;
            let ig = |t: f64| -> Result<(f64, f64)> { Ok((t, wave_multiplier_norm(&g, t, n, &RadialGrid::for_wave(&g, t, &q)?)?)) };
            // n = 1 compares the top decade; n = 2 scans the top two decades.
            if n == 1 {
                let (t1, t0) = (scn.time.t_max, scn.time.t_max / 10.0);
                let (a, b) = (ig(t0)?.1.powi(2) / t0, ig(t1)?.1.powi(2) / t1);
                let oracle = wave_limit_n1(g.fourier_at(&[0.0]).norm());
                out.push(Verdict::new(tag("top_decade_change"), n, (b / a - 1.0).abs(), 0.0, 0.02, 0.0, Comparison::AtMost));
                out.push(Verdict::new(tag("limit_oracle"), n, b / oracle - 1.0, 0.0, 0.05, 0.0, Comparison::Within));
            } else {
                let window = geometric_grid((scn.time.t_max / 100.0).max(scn.time.t_min), scn.time.t_max, ppd);
                let s: Vec<(f64, f64)> = window.par_iter().map(|&t| ig(t)).collect::<Result<_>>()?;
                let q: Vec<f64> = s.iter().map(|(t, v)| v * v / t.ln()).collect();
                let (lo, hi) = q.iter().fold((f64::INFINITY, 0.0f64), |(a, b), x| (a.min(*x), b.max(*x)));
                out.push(Verdict::new(tag("log_lower_bound"), n, lo / hi, 0.1, 0.0, lo, Comparison::AtLeast));
            }
        }
    }
    Ok(out)
}

fn optimal_est_checks(
    name: &str,
    n: usize,
    s: &[(f64, f64)],
    engine: &NormEngine,
    t_max: f64,
    ppd: usize,
) -> Result<Vec<Verdict>> {
    let tag = |x: &str| format!("{name}:{x}");
    Ok(match n {
        1 => {
            let fit = fit_power(&squared(s))?;
            vec![Verdict::new(tag("norm2_exponent"), n, fit.exponent_or_slope, 1.0, N1_GROWTH_TOL, fit.max_residual, Comparison::Within)]
        }
        2 => {
            let ls = fit_log_square(s)?;
            let top = values(&sweep(engine, NormKind::Solution, &top_decade(t_max, ppd))?);
            let pw = fit_power_span(&top, 1.0)?;
            vec![
                Verdict::new(tag("log_slope"), n, ls.exponent_or_slope, 0.0, 0.0, ls.max_residual, Comparison::AtLeast),
                Verdict::new(tag("log_ratio_variation"), n, log_ratio_variation(&top), 0.0, LOG_RATIO_TOL, 0.0, Comparison::AtMost),
                Verdict::new(tag("top_decade_exponent"), n, pw.exponent_or_slope, 0.0, TOP_DECADE_POWER_TOL, pw.max_residual, Comparison::Within),
            ]
        }
        _ => {
            let fit = fit_power(s)?;
            vec![Verdict::new(tag("norm_exponent"), n, fit.exponent_or_slope, -0.25, N3_DECAY_TOL, fit.max_residual, Comparison::Within)]
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularMc {
    pub n: usize,
    pub samples: usize,
    pub riesz: f64,
    pub riesz_exact: f64,
    pub mixed: f64,
    pub mixed_exact: f64,
}

impl AngularMc {
    pub fn max_relative_error(&self) -> f64 {
        ((self.riesz / self.riesz_exact) - 1.0).abs().max(((self.mixed / self.mixed_exact) - 1.0).abs())
    }
}

/// Monte-Carlo estimates of `int omega_k^2` and `int omega_k^2 (omega . M)^2`
/// over the sphere: one uniform random point per equal-area cell of a
/// `(mu, phi)` grid (n = 3) or an angle grid (n = 2).
pub fn angular_moment_mc(n: usize, k: usize, moment: &[f64], samples: usize, seed: u64) -> Result<AngularMc> {
    crate::datum::check_dim(n)?;
    if moment.len() != n || k >= n {
        return Err(Error::InvalidParameter("moment length must equal n and k < n".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dirs: Vec<[f64; 3]> = Vec::with_capacity(samples);
    match n {
        1 => dirs.extend((0..samples).map(|_| [if rng.random::<bool>() { 1.0 } else { -1.0 }, 0.0, 0.0])),
        2 => {
            for j in 0..samples {
                let phi = 2.0 * PI * (j as f64 + rng.random::<f64>()) / samples as f64;
                dirs.push([phi.cos(), phi.sin(), 0.0]);
            }
        }
        _ => {
            let m = (samples as f64).sqrt().floor().max(1.0) as usize;
            for i in 0..m {
                for j in 0..m {
                    let mu = -1.0 + 2.0 * (i as f64 + rng.random::<f64>()) / m as f64;
                    let phi = 2.0 * PI * (j as f64 + rng.random::<f64>()) / m as f64;
                    let s = (1.0 - mu * mu).max(0.0).sqrt();
                    dirs.push([s * phi.cos(), s * phi.sin(), mu]);
                }
            }
        }
    }
    let samples = dirs.len();
    let (mut sr, mut sm) = (0.0, 0.0);
    for w in &dirs {
        let dot: f64 = w.iter().zip(moment).map(|(a, b)| a * b).sum();
        sr += w[k] * w[k];
        sm += w[k] * w[k] * dot * dot;
    }
    let area = sphere_area(n);
    let m = samples as f64;
    Ok(AngularMc {
        n,
        samples,
        riesz: area * sr / m,
        riesz_exact: AngularType::RieszK.moment(n).unwrap(),
        mixed: area * sm / m,
        mixed_exact: AngularType::RieszMixed { moment: moment.to_vec(), k }.moment(n).unwrap(),
    })
}

/// Substitution-limit value of `I_g(t;1)^2 / t` for a datum with mean `P`: `P^2 / 2`.
pub fn wave_limit_n1(mean: f64) -> f64 {
    mean * mean / 2.0
}
