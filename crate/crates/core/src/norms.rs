//! Frequency-space L2 norms via Plancherel: panelled Gauss-Legendre in `r`
//! with exact angular moments, or a product sphere rule when the data are
//! translated or differentiated.
//!
//! All reported norms are in physical-space convention: the frequency
//! integral is scaled by `(2 pi)^{-n/2}` once, at the end.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datum::{check_dim, gauss_legendre, sphere_area, DatumKind, DatumSpec};
use crate::error::{Error, Result};
use crate::model::{derive_constants, DerivedConstants, ModelParams};
use crate::profiles::{eval_profiles, mn_multiplier, phi_hat, psi_hat, ProfileMoments, ProfileMultipliers};
use crate::scenario::{NormKind, Scenario};
use crate::spectral::{char_roots, modal_coefficients, solution_multipliers};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadConfig {
    pub nodes_per_panel: usize,
    pub panels_per_wavelength: f64,
    pub tail_threshold: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { nodes_per_panel: 10, panels_per_wavelength: 4.0, tail_threshold: 1e-12 }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(2..=64).contains(&self.nodes_per_panel) {
            return Err(Error::Quadrature(format!("nodes_per_panel must be in 2..=64, got {}", self.nodes_per_panel)));
        }
        if !(self.panels_per_wavelength >= 4.0) || !self.panels_per_wavelength.is_finite() {
            return Err(Error::Quadrature(format!(
                "panels_per_wavelength must be >= 4, got {}",
                self.panels_per_wavelength
            )));
        }
        if !(self.tail_threshold > 0.0 && self.tail_threshold < 1.0) {
            return Err(Error::Quadrature(format!("tail_threshold must be in (0, 1), got {}", self.tail_threshold)));
        }
        Ok(())
    }

    pub fn refined(&self) -> Self {
        QuadConfig { nodes_per_panel: 2 * self.nodes_per_panel, ..*self }
    }
}

/// Uniform panels on `[r_min, r_max]` no wider than a fraction of the
/// oscillation wavelength.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub panels: Vec<f64>,
    pub nodes_per_panel: usize,
    pub oscillation_wavelength: f64,
    pub tail_threshold: f64,
    reference: Vec<(f64, f64)>,
}

const MIN_PANELS: f64 = 32.0;

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, oscillation_wavelength: f64, cfg: &QuadConfig) -> Result<Self> {
        cfg.validate()?;
        if !(r_min >= 0.0 && r_max > r_min && r_max.is_finite()) {
            return Err(Error::Quadrature(format!("bad radial range [{r_min}, {r_max}]")));
        }
        let span = r_max - r_min;
        let wavelength = if oscillation_wavelength.is_finite() && oscillation_wavelength > 0.0 {
            oscillation_wavelength
        } else {
            span
        };
        let width = (wavelength / cfg.panels_per_wavelength).min(span / MIN_PANELS);
        let count = (span / width).ceil() as usize;
        let panels = (0..=count).map(|i| r_min + span * i as f64 / count as f64).collect();
        let gl = gauss_legendre(cfg.nodes_per_panel);
        Ok(RadialGrid {
            r_min,
            r_max,
            panels,
            nodes_per_panel: cfg.nodes_per_panel,
            oscillation_wavelength: wavelength,
            tail_threshold: cfg.tail_threshold,
            reference: gl.as_node_weight_pairs().to_vec(),
        })
    }

    /// Grid for profile multipliers at time `t`: oscillation `beta1 r t`,
    /// cut where `exp(-2 min(beta0, beta2) r^2 t) < e^{-90}`.
    pub fn for_profiles(c: &DerivedConstants, t: f64, cfg: &QuadConfig) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::Quadrature(format!("profile grid needs t > 0, got {t}")));
        }
        let r_max = (45.0 / (c.beta0.min(c.beta2) * t)).sqrt();
        RadialGrid::new(0.0, r_max, PI / (c.beta1 * t), cfg)
    }

    /// Grid for the undamped wave multiplier `sin(r t)/r` against datum `g`.
    pub fn for_wave(g: &DatumSpec, t: f64, cfg: &QuadConfig) -> Result<Self> {
        RadialGrid::new(0.0, g.cutoff(), PI / t.max(1e-300), cfg)
    }

    pub fn panel_count(&self) -> usize {
        self.panels.len() - 1
    }

    pub fn max_panel_width(&self) -> f64 {
        self.panels.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    pub fn refined(&self) -> Self {
        let cfg = QuadConfig {
            nodes_per_panel: 2 * self.nodes_per_panel,
            panels_per_wavelength: 4.0,
            tail_threshold: self.tail_threshold,
        };
        let gl = gauss_legendre(cfg.nodes_per_panel);
        RadialGrid { nodes_per_panel: cfg.nodes_per_panel, reference: gl.as_node_weight_pairs().to_vec(), ..self.clone() }
    }

    /// `int f dr` over the grid. Panels are evaluated in parallel and summed
    /// in panel order.
    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(f64) -> f64 + Sync,
    {
        let parts: Vec<f64> = self
            .panels
            .par_windows(2)
            .map(|w| {
                let (mid, half) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
                half * self.reference.iter().map(|(x, wt)| wt * f(mid + half * x)).sum::<f64>()
            })
            .collect();
        parts.iter().sum()
    }
}

/// Serial panelled Gauss-Legendre on `[a, b]` with panels no wider than
/// `max_width`.
pub fn panel_integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, max_width: f64) -> f64 {
    if !(b > a) {
        return 0.0;
    }
    let gl = gauss_legendre(10);
    let count = ((b - a) / max_width).ceil().max(1.0) as usize;
    let h = (b - a) / count as f64;
    (0..count).map(|i| gl.integrate(a + i as f64 * h, a + (i + 1) as f64 * h, &f)).sum()
}

/// Angular structure of a multiplier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum AngularType {
    Radial,
    /// Extra factor `omega_k`.
    RieszK,
    /// Extra factor `omega_k (omega . M)`.
    RieszMixed { moment: Vec<f64>, k: usize },
    /// Direction-dependent multiplier (phase `e^{-i s r omega_axis}` from a
    /// shift); integrated with a polar-angle rule about `axis`.
    AxisShift { axis: usize, shift: f64 },
}

impl AngularType {
    /// `int (angular factor)^2 dsigma` for the separable types.
    pub fn moment(&self, n: usize) -> Option<f64> {
        let nf = n as f64;
        let area = sphere_area(n);
        match self {
            AngularType::Radial => Some(area),
            AngularType::RieszK => Some(area / nf),
            AngularType::RieszMixed { moment, k } => {
                let m2: f64 = moment.iter().map(|x| x * x).sum();
                Some(area * (m2 + 2.0 * moment[*k] * moment[*k]) / (nf * (nf + 2.0)))
            }
            AngularType::AxisShift { .. } => None,
        }
    }
}

/// Quadrature on the unit sphere of R^n with weights summing to its area.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRule {
    pub n: usize,
    pub dirs: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    /// Polar Gauss rule about `axis` (0-based) times a trapezoid azimuth.
    pub fn new(n: usize, axis: usize, polar: usize, azimuth: usize) -> Self {
        let mut dirs = Vec::new();
        let mut weights = Vec::new();
        match n {
            1 => {
                dirs.extend([[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]);
                weights.extend([1.0, 1.0]);
            }
            2 => {
                let m = azimuth.max(4);
                let other = 1 - axis.min(1);
                for j in 0..m {
                    let phi = 2.0 * PI * (j as f64 + 0.5) / m as f64;
                    let mut d = [0.0; 3];
                    d[axis.min(1)] = phi.cos();
                    d[other] = phi.sin();
                    dirs.push(d);
                    weights.push(2.0 * PI / m as f64);
                }
            }
            _ => {
                let gl = gauss_legendre(polar.max(2));
                let m = azimuth.max(4);
                let a = axis.min(2);
                let (o1, o2) = ((a + 1) % 3, (a + 2) % 3);
                for &(mu, w) in gl.as_node_weight_pairs() {
                    let s = (1.0 - mu * mu).max(0.0).sqrt();
                    for j in 0..m {
                        let phi = 2.0 * PI * (j as f64 + 0.5) / m as f64;
                        let mut d = [0.0; 3];
                        d[a] = mu;
                        d[o1] = s * phi.cos();
                        d[o2] = s * phi.sin();
                        dirs.push(d);
                        weights.push(w * 2.0 * PI / m as f64);
                    }
                }
            }
        }
        SphereRule { n, dirs, weights }
    }

    /// Rule resolving phases `e^{-i s r mu}` up to `r = r_max` and
    /// polynomials of degree <= 7 in the direction.
    pub fn for_shift(n: usize, axis: usize, shift: f64, r_max: f64) -> Self {
        let sr = (shift.abs() * r_max).ceil() as usize;
        match n {
            1 => SphereRule::new(1, 0, 0, 0),
            2 => SphereRule::new(2, axis, 0, 16 + 2 * sr),
            _ => SphereRule::new(3, axis, 10 + sr, 8),
        }
    }

    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        self.dirs.iter().zip(&self.weights).map(|(d, w)| w * f(&d[..self.n])).sum()
    }
}

fn convention(n: usize) -> f64 {
    (2.0 * PI).powf(-(n as f64) / 2.0)
}

/// Samples just beyond `r_max` must be negligible against `total`.
fn tail_check(g: impl Fn(f64) -> f64, grid: &RadialGrid, total: f64) -> Result<f64> {
    let r0 = grid.r_max;
    let wl = grid.oscillation_wavelength;
    let seg = 0.05 * r0.max(wl);
    let mut bound = 0.0;
    for j in 0..20 {
        let a = r0 + seg * j as f64;
        let peak = (0..4).map(|q| g(a + 0.25 * q as f64 * wl.min(seg))).fold(0.0, f64::max);
        bound += peak * seg;
    }
    let threshold = grid.tail_threshold;
    if bound > threshold * total && bound > f64::MIN_POSITIVE {
        return Err(Error::UnconvergedTail { bound, threshold, total });
    }
    Ok(bound)
}

/// `(2 pi)^{-n/2} ( int |F|^2 r^{n-1} (angular factor)^2 dr dsigma )^{1/2}`.
/// For separable types `F` is evaluated along `e_1`; for `AxisShift` it is
/// evaluated on a sphere rule.
pub fn l2_norm<F>(f: F, angular: &AngularType, n: usize, grid: &RadialGrid) -> Result<f64>
where
    F: Fn(f64, &[f64]) -> Complex64 + Sync,
{
    check_dim(n)?;
    let e1 = [1.0, 0.0, 0.0];
    let integrand = |r: f64| -> f64 {
        let rn = r.powi(n as i32 - 1);
        match angular.moment(n) {
            Some(mom) => f(r, &e1[..n]).norm_sqr() * mom * rn,
            None => {
                let AngularType::AxisShift { axis, shift } = angular else { unreachable!() };
                let rule = SphereRule::for_shift(n, *axis, *shift, grid.r_max);
                rule.integrate(|d| f(r, d).norm_sqr()) * rn
            }
        }
    };
    let total = grid.integrate(integrand);
    tail_check(integrand, grid, total)?;
    Ok(convention(n) * total.max(0.0).sqrt())
}

/// Norm of the coupled multiplier `(e^{-b0 r^2 t} - cos(b1 r t) e^{-b2 r^2 t}) / r`.
pub fn mn_norm(c: &DerivedConstants, t: f64, n: usize, grid: &RadialGrid) -> Result<f64> {
    l2_norm(|r, _| Complex64::new(mn_multiplier(c, t, r), 0.0), &AngularType::Radial, n, grid)
}

/// Norm of `sin(|xi| t)/|xi| g^(xi)`.
pub fn wave_multiplier_norm(g: &DatumSpec, t: f64, n: usize, grid: &RadialGrid) -> Result<f64> {
    if !(1..=2).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    g.validate(n)?;
    let base = DatumSpec { kind: DatumKind::Gaussian, center: vec![], axis: None, ..g.clone() };
    let e1 = [1.0, 0.0];
    let radial = |r: f64| crate::spectral::sinc_t(r, t) * base.fourier_at(&[r * e1[0], r * e1[1]][..n]).re;
    let (scale, angular): (fn(f64) -> f64, AngularType) = match g.kind {
        DatumKind::Gaussian | DatumKind::ShiftedGaussian => (|_| 1.0, AngularType::Radial),
        DatumKind::DerivativeGaussian => (|r| r, AngularType::RieszK),
        DatumKind::SecondDerivativeGaussian => {
            let mut m = vec![0.0; n];
            m[0] = 1.0;
            (|r| r * r, AngularType::RieszMixed { moment: m, k: 0 })
        }
    };
    l2_norm(|r, _| Complex64::new(scale(r) * radial(r), 0.0), &angular, n, grid)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub value: f64,
    /// Bound on the frequency-space mass beyond `r_max` that was not integrated.
    pub tail_bound: f64,
    pub r_max: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subtract {
    Phi,
    PhiPlusPsi,
}

/// Norm evaluation for one scenario's data.
#[derive(Debug, Clone)]
pub struct NormEngine {
    pub params: ModelParams,
    pub constants: DerivedConstants,
    pub moments: ProfileMoments,
    pub n: usize,
    pub k: usize,
    u0: DatumSpec,
    u1: DatumSpec,
    theta0: DatumSpec,
    quad: QuadConfig,
    axis: usize,
    shift: f64,
    separable: bool,
    r_data: f64,
}

impl NormEngine {
    pub fn new(scn: &Scenario) -> Result<Self> {
        scn.validate()?;
        let n = scn.dimension;
        let d = &scn.data;
        let moments = ProfileMoments::from_data(scn.k(), &d.u0.moments(n)?, &d.u1.moments(n)?, &d.theta0.moments(n)?);
        let shifts: Vec<(usize, f64)> = [&d.u0, &d.u1, &d.theta0].iter().filter_map(|x| x.shift()).collect();
        if n == 3 && shifts.iter().any(|s| s.0 != shifts[0].0) {
            return Err(Error::Scenario("shifted data in n = 3 must share one axis".into()));
        }
        let (axis, shift) = match shifts.first() {
            Some(_) => (shifts[0].0, shifts.iter().map(|s| s.1.abs()).fold(0.0, f64::max)),
            None => (scn.k(), 0.0),
        };
        let r_data = [&d.u0, &d.u1, &d.theta0]
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| x.cutoff())
            .fold(0.0, f64::max)
            .max(1e-3);
        Ok(NormEngine {
            params: scn.params,
            constants: derive_constants(&scn.params)?,
            moments,
            n,
            k: scn.k(),
            u0: d.u0.clone(),
            u1: d.u1.clone(),
            theta0: d.theta0.clone(),
            quad: scn.quadrature,
            axis,
            shift,
            separable: d.u0.is_radial() && d.u1.is_radial() && d.theta0.is_radial(),
            r_data,
        })
    }

    /// Forces the sphere-rule path even for radial data.
    pub fn with_full_angular(mut self) -> Self {
        self.separable = false;
        self
    }

    pub fn with_quadrature(mut self, q: QuadConfig) -> Self {
        self.quad = q;
        self
    }

    pub fn is_separable(&self) -> bool {
        self.separable
    }

    fn uses_solution(kind: NormKind) -> bool {
        !matches!(kind, NormKind::Phi | NormKind::Psi)
    }

    /// Angular integral of `|F|^2` at radius `r` (without `r^{n-1}`).
    fn angular_integrand(&self, kind: NormKind, t: f64, r: f64, rule: &SphereRule) -> Result<f64> {
        let p = &self.params;
        let mult = if Self::uses_solution(kind) {
            Some(solution_multipliers(p, &char_roots(p, r)?, t)?)
        } else {
            None
        };
        let prof: Option<ProfileMultipliers> = match kind {
            NormKind::Solution => None,
            _ => Some(eval_profiles(&self.constants, p, t, r)),
        };
        let mm = &self.moments;
        let (with_phi, with_psi) = match kind {
            NormKind::Solution => (false, false),
            NormKind::ErrorPhi | NormKind::Phi => (true, false),
            NormKind::ErrorPhiPsi => (true, true),
            NormKind::Psi => (false, true),
        };
        let sign = if Self::uses_solution(kind) { -1.0 } else { 1.0 };
        let n = self.n;
        if self.separable {
            let e1 = [r, 0.0, 0.0];
            let xi = &e1[..n];
            let (mut rad, mut odd) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            if let Some(m) = mult {
                rad += m.m_u0 * self.u0.fourier_at(xi) + m.m_u1 * self.u1.fourier_at(xi);
                odd += m.m_theta * self.theta0.fourier_at(xi);
            }
            if let Some(g) = prof {
                if with_phi {
                    rad += sign * g.g0 * mm.p_u1;
                    odd += sign * g.g1_radial * mm.p_theta;
                }
                if with_psi {
                    rad += sign * (g.g2 * mm.p_u0 + (g.h0 + g.g3) * mm.p_u1);
                    odd += sign * (g.h1_radial + g.g4_radial) * mm.p_theta;
                }
            }
            return Ok(sphere_area(n) * (rad.norm_sqr() + r * r * odd.norm_sqr() / n as f64));
        }
        let i = Complex64::new(0.0, 1.0);
        let k = self.k;
        Ok(rule.integrate(|w| {
            let xi: Vec<f64> = w.iter().map(|x| r * x).collect();
            let mut v = Complex64::new(0.0, 0.0);
            if let Some(m) = mult {
                v += m.m_u0 * self.u0.fourier_at(&xi)
                    + m.m_u1 * self.u1.fourier_at(&xi)
                    + i * xi[k] * m.m_theta * self.theta0.fourier_at(&xi);
            }
            if let Some(g) = prof.as_ref() {
                if with_phi {
                    v += sign * phi_hat(g, mm.p_u1, mm.p_theta, w[k]);
                }
                if with_psi {
                    v += sign * psi_hat(g, mm, w);
                }
            }
            v.norm_sqr()
        }))
    }

    /// Non-oscillatory pointwise bound on `|F|` at radius `r`.
    fn envelope(&self, kind: NormKind, t: f64, r: f64) -> Result<f64> {
        let p = &self.params;
        let c = &self.constants;
        let n = self.n;
        let mm = &self.moments;
        let mut amp = 0.0;
        if Self::uses_solution(kind) {
            let roots = char_roots(p, r)?;
            let modes = modal_coefficients(p, &roots)?;
            let e1 = (roots.lambda1 * t).exp();
            let er = (roots.lambda_r * t).exp();
            let env = |m: &crate::spectral::Modes| m.e.abs() * e1 + m.c.hypot(m.s) * er;
            amp += env(&modes[0]) * self.u0.envelope(n, r)
                + env(&modes[1]) * self.u1.envelope(n, r)
                + r * env(&modes[2]) * self.theta0.envelope(n, r);
        }
        let (with_phi, with_psi) = match kind {
            NormKind::Solution => (false, false),
            NormKind::ErrorPhi | NormKind::Phi => (true, false),
            NormKind::ErrorPhiPsi => (true, true),
            NormKind::Psi => (false, true),
        };
        let s = c.beta1 * c.beta1;
        let e2 = (-c.beta2 * r * r * t).exp();
        let e0 = (-c.beta0 * r * r * t).exp();
        let g0 = t.min(1.0 / (c.beta1 * r)) * e2;
        let g1 = p.gamma1.abs() / s * (e2 + e0) / (r * r);
        if with_phi {
            amp += g0 * mm.p_u1.abs() + r * g1 * mm.p_theta.abs();
        }
        if with_psi {
            let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let g2 = (p.coupling() * e0 + p.b * p.b * e2) / s;
            let g3 = p.kappa * p.coupling() / (s * s) * (e0 + e2);
            let g4 = c.a2.abs() / (2.0 * c.beta1) * (c.beta1 * t).min(1.0 / r) * e2;
            let h0 = (c.a1 / p.gamma1).abs() * r * r * t * e2;
            let h1 = c.a1.abs() / c.beta1 * r * t * e2;
            amp += r * norm(&mm.m_u1) * g0
                + r * r * norm(&mm.m_theta) * g1
                + g2 * mm.p_u0.abs()
                + (h0 + g3) * mm.p_u1.abs()
                + r * (h1 + g4) * mm.p_theta.abs();
        }
        Ok(amp)
    }

    fn rule(&self, r_max: f64) -> SphereRule {
        SphereRule::for_shift(self.n, self.axis, self.shift, r_max)
    }

    fn integrate_range(&self, kind: NormKind, t: f64, a: f64, b: f64) -> Result<(f64, usize)> {
        let c = &self.constants;
        let wavelength = if t > 0.0 { PI / (c.beta1 * t) } else { f64::INFINITY };
        let grid = RadialGrid::new(a, b, wavelength, &self.quad)?;
        let rule = self.rule(b);
        let n = self.n;
        let failure = std::sync::Mutex::new(None);
        let total = grid.integrate(|r| match self.angular_integrand(kind, t, r, &rule) {
            Ok(v) => v * r.powi(n as i32 - 1),
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                0.0
            }
        });
        if let Some(e) = failure.into_inner().unwrap() {
            return Err(e);
        }
        Ok((total, grid.panel_count()))
    }

    /// Frequency-space mass bound on `[a, b]` from the envelope.
    fn envelope_mass(&self, kind: NormKind, t: f64, a: f64, b: f64) -> Result<f64> {
        let gl = gauss_legendre(16);
        let n = self.n;
        let steps = 64;
        let ratio = (b / a).powf(1.0 / steps as f64);
        let mut acc = 0.0;
        for j in 0..steps {
            let lo = a * ratio.powi(j);
            let hi = lo * ratio;
            for &(x, w) in gl.as_node_weight_pairs() {
                let r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x;
                let e = self.envelope(kind, t, r)?;
                acc += 0.5 * (hi - lo) * w * e * e * r.powi(n as i32 - 1);
            }
        }
        Ok(acc * sphere_area(n))
    }

    pub fn norm(&self, kind: NormKind, t: f64) -> Result<NormReport> {
        if !(t >= 0.0) {
            return Err(Error::InvalidParameter(format!("time must be nonnegative, got {t}")));
        }
        let c = &self.constants;
        let r_damp = if t > 0.0 { (40.0 / (c.beta2.min(c.beta0) * t)).sqrt() } else { f64::INFINITY };
        let r_cut = r_damp.min(self.r_data);
        let (mut total, mut panels) = self.integrate_range(kind, t, 0.0, r_cut)?;
        let mut tail_bound = 0.0;
        let mut r_max = r_cut;
        if r_cut < self.r_data {
            let bound = self.envelope_mass(kind, t, r_cut, self.r_data)?;
            if bound <= self.quad.tail_threshold * total {
                tail_bound = bound;
            } else {
                let (extra, more) = self.integrate_range(kind, t, r_cut, self.r_data)?;
                total += extra;
                panels += more;
                r_max = self.r_data;
            }
        }
        let n = self.n;
        Ok(NormReport { value: convention(n) * total.max(0.0).sqrt(), tail_bound, r_max, panels })
    }
}

pub fn solution_l2_norm(scn: &Scenario, t: f64) -> Result<f64> {
    Ok(NormEngine::new(scn)?.norm(NormKind::Solution, t)?.value)
}

pub fn error_l2_norm(scn: &Scenario, t: f64, subtract: Subtract) -> Result<f64> {
    let kind = match subtract {
        Subtract::Phi => NormKind::ErrorPhi,
        Subtract::PhiPlusPsi => NormKind::ErrorPhiPsi,
    };
    Ok(NormEngine::new(scn)?.norm(kind, t)?.value)
}
