//! Closed-form initial data: Gaussians, axis-shifted Gaussians and their
//! axis derivatives, with exact transforms and moments.
//!
//! Transform convention: `f^(xi) = int e^{-i x.xi} f(x) dx`.

use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use std::num::NonZeroUsize;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma, ln_gamma};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatumKind {
    Gaussian,
    ShiftedGaussian,
    DerivativeGaussian,
    /// Second derivative along one axis; all means and first moments vanish.
    SecondDerivativeGaussian,
}

/// `amplitude * exp(-|x - center|^2 / (2 width^2))`, optionally differentiated
/// along `axis` (1-based).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumSpec {
    pub kind: DatumKind,
    #[serde(default)]
    pub amplitude: f64,
    #[serde(default = "unit")]
    pub width: f64,
    #[serde(default)]
    pub center: Vec<f64>,
    #[serde(default)]
    pub axis: Option<usize>,
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatumMoments {
    pub p: f64,
    pub m: Vec<f64>,
    pub l1_norm: f64,
    pub l11_norm: f64,
}

pub fn check_dim(n: usize) -> Result<()> {
    if (1..=3).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

/// Surface measure of the unit sphere in R^n.
pub fn sphere_area(n: usize) -> f64 {
    let h = n as f64 / 2.0;
    2.0 * PI.powf(h) / gamma(h)
}

impl DatumSpec {
    pub fn gaussian(amplitude: f64, width: f64) -> Self {
        DatumSpec { kind: DatumKind::Gaussian, amplitude, width, center: vec![], axis: None }
    }

    pub fn zero() -> Self {
        Self::gaussian(0.0, 1.0)
    }

    /// Shift by `shift` along `axis` (1-based) in dimension `n`.
    pub fn shifted(amplitude: f64, width: f64, n: usize, axis: usize, shift: f64) -> Self {
        let mut center = vec![0.0; n];
        center[axis - 1] = shift;
        DatumSpec { kind: DatumKind::ShiftedGaussian, amplitude, width, center, axis: None }
    }

    pub fn derivative(amplitude: f64, width: f64, axis: usize) -> Self {
        DatumSpec { kind: DatumKind::DerivativeGaussian, amplitude, width, center: vec![], axis: Some(axis) }
    }

    pub fn second_derivative(amplitude: f64, width: f64, axis: usize) -> Self {
        DatumSpec {
            kind: DatumKind::SecondDerivativeGaussian,
            amplitude,
            width,
            center: vec![],
            axis: Some(axis),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        check_dim(n)?;
        if !(self.width > 0.0 && self.width.is_finite()) {
            return Err(Error::InvalidDatum(format!("width must be positive, got {}", self.width)));
        }
        if !self.amplitude.is_finite() {
            return Err(Error::InvalidDatum("amplitude must be finite".into()));
        }
        if !self.center.is_empty() && self.center.len() != n {
            return Err(Error::InvalidDatum(format!(
                "center has length {}, dimension is {n}",
                self.center.len()
            )));
        }
        if self.center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidDatum("center must be finite".into()));
        }
        let differentiated = matches!(
            self.kind,
            DatumKind::DerivativeGaussian | DatumKind::SecondDerivativeGaussian
        );
        match (differentiated, self.axis) {
            (true, None) => return Err(Error::InvalidDatum("derivative datum needs an axis".into())),
            (false, Some(_)) => return Err(Error::InvalidDatum("axis only applies to derivative data".into())),
            (true, Some(j)) if j == 0 || j > n => {
                return Err(Error::InvalidDatum(format!("axis {j} out of range 1..={n}")))
            }
            _ => {}
        }
        let nonzero = self.center.iter().filter(|c| **c != 0.0).count();
        match self.kind {
            DatumKind::ShiftedGaussian if nonzero > 1 => {
                Err(Error::InvalidDatum("shift must lie along a single coordinate axis".into()))
            }
            DatumKind::ShiftedGaussian => Ok(()),
            _ if nonzero > 0 => Err(Error::InvalidDatum(format!("{:?} datum must be centered", self.kind))),
            _ => Ok(()),
        }
    }

    /// Mean of the undifferentiated, unshifted Gaussian.
    fn base_mass(&self, n: usize) -> f64 {
        self.amplitude * (2.0 * PI * self.width * self.width).powf(n as f64 / 2.0)
    }

    /// Radial envelope `|f^(xi)|` as a function of `r = |xi|` (exact for
    /// shifted data, an upper bound for derivative data).
    pub fn envelope(&self, n: usize, r: f64) -> f64 {
        let g = self.base_mass(n).abs() * (-0.5 * self.width * self.width * r * r).exp();
        match self.kind {
            DatumKind::Gaussian | DatumKind::ShiftedGaussian => g,
            DatumKind::DerivativeGaussian => r * g,
            DatumKind::SecondDerivativeGaussian => r * r * g,
        }
    }

    /// Frequency beyond which the envelope is below `exp(-40)` of its peak.
    pub fn cutoff(&self) -> f64 {
        (90.0f64).sqrt() / self.width
    }

    /// Shift axis (0-based) and offset, if the datum is translated.
    pub fn shift(&self) -> Option<(usize, f64)> {
        if self.kind != DatumKind::ShiftedGaussian {
            return None;
        }
        self.center.iter().position(|c| *c != 0.0).map(|j| (j, self.center[j]))
    }

    /// True when the transform depends on `|xi|` only.
    pub fn is_radial(&self) -> bool {
        match self.kind {
            DatumKind::Gaussian => true,
            DatumKind::ShiftedGaussian => self.shift().is_none(),
            _ => self.amplitude == 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.amplitude == 0.0
    }

    /// Fourier transform at `xi` (length n).
    pub fn fourier_at(&self, xi: &[f64]) -> Complex64 {
        let n = xi.len();
        let r2: f64 = xi.iter().map(|x| x * x).sum();
        let base = self.base_mass(n) * (-0.5 * self.width * self.width * r2).exp();
        match self.kind {
            DatumKind::Gaussian => Complex64::new(base, 0.0),
            DatumKind::ShiftedGaussian => {
                let phase: f64 = xi.iter().zip(&self.center).map(|(x, c)| x * c).sum();
                Complex64::from_polar(base, -phase)
            }
            DatumKind::DerivativeGaussian => {
                let j = self.axis.unwrap_or(1) - 1;
                Complex64::new(0.0, xi[j] * base)
            }
            DatumKind::SecondDerivativeGaussian => {
                let j = self.axis.unwrap_or(1) - 1;
                Complex64::new(-xi[j] * xi[j] * base, 0.0)
            }
        }
    }

    pub fn moments(&self, n: usize) -> Result<DatumMoments> {
        self.validate(n)?;
        let mass = self.base_mass(n);
        let s = self.width;
        let nf = n as f64;
        let chi_mean = s * 2f64.sqrt() * (ln_gamma((nf + 1.0) / 2.0) - ln_gamma(nf / 2.0)).exp();
        let mut m = vec![0.0; n];
        let out = match self.kind {
            DatumKind::Gaussian => DatumMoments {
                p: mass,
                m,
                l1_norm: mass.abs(),
                l11_norm: mass.abs() * (1.0 + chi_mean),
            },
            DatumKind::ShiftedGaussian => {
                let mu = match self.shift() {
                    Some((j, c)) => {
                        m[j] = c * mass;
                        c.abs()
                    }
                    None => 0.0,
                };
                DatumMoments {
                    p: mass,
                    m,
                    l1_norm: mass.abs(),
                    l11_norm: mass.abs() * (1.0 + noncentral_chi_mean(n, s, mu)),
                }
            }
            DatumKind::DerivativeGaussian => {
                let j = self.axis.unwrap_or(1) - 1;
                m[j] = -mass;
                let l1 = 2.0 * self.amplitude.abs() * (2.0 * PI * s * s).powf((nf - 1.0) / 2.0);
                DatumMoments { p: 0.0, m, l1_norm: l1, l11_norm: l1 + mass.abs() * nf * mean_abs_direction(n) }
            }
            DatumKind::SecondDerivativeGaussian => {
                let (e_abs, e_rad) = second_derivative_abs_moments(n);
                let l1 = mass.abs() / (s * s) * e_abs;
                DatumMoments { p: 0.0, m, l1_norm: l1, l11_norm: l1 + mass.abs() / s * e_rad }
            }
        };
        Ok(out)
    }
}

pub(crate) fn gauss_legendre(order: usize) -> GaussLegendre {
    GaussLegendre::new(NonZeroUsize::new(order.max(2)).unwrap())
}

/// `E|omega_j|` for `omega` uniform on the unit sphere of R^n.
pub fn mean_abs_direction(n: usize) -> f64 {
    let nf = n as f64;
    (ln_gamma(nf / 2.0) - ln_gamma((nf + 1.0) / 2.0)).exp() / PI.sqrt()
}

/// `E|X|` for `X ~ N(mu e_1, s^2 I_n)`.
pub fn noncentral_chi_mean(n: usize, s: f64, mu: f64) -> f64 {
    let nf = n as f64;
    let x = mu * mu / (2.0 * s * s);
    let lead = s * 2f64.sqrt() * (ln_gamma((nf + 1.0) / 2.0) - ln_gamma(nf / 2.0)).exp();
    if x > 600.0 {
        return mu * (1.0 + (nf - 1.0) * s * s / (2.0 * mu * mu));
    }
    // e^{-x} 1F1((n+1)/2; n/2; x), all terms positive
    let (a, b) = ((nf + 1.0) / 2.0, nf / 2.0);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    while term > 1e-17 * sum {
        term *= (a + k) / (b + k) * x / (k + 1.0);
        sum += term;
        k += 1.0;
    }
    lead * (-x).exp() * sum
}

/// `(E|Z_1^2 - 1|, E[|Z| |Z_1^2 - 1|])` for standard normal `Z` in R^n.
fn second_derivative_abs_moments(n: usize) -> (f64, f64) {
    let phi1 = (-0.5f64).exp() / (2.0 * PI).sqrt();
    let e_abs = 4.0 * phi1;
    // polar split: rho ~ chi_n, mu = omega_1; the kink sits at rho = 1/|mu|
    let gl = gauss_legendre(40);
    let nf = n as f64;
    let norm = 1.0 / (2f64.powf(nf / 2.0 - 1.0) * gamma(nf / 2.0));
    let radial = |mu: f64| -> f64 {
        let f = |rho: f64| rho * (rho * rho * mu * mu - 1.0).abs() * norm * rho.powf(nf - 1.0) * (-0.5 * rho * rho).exp();
        let kink = if mu.abs() > 1e-12 { (1.0 / mu.abs()).min(14.0) } else { 14.0 };
        gl.integrate(0.0, kink, f) + if kink < 14.0 { gl.integrate(kink, 14.0, f) } else { 0.0 }
    };
    let e_rad = match n {
        1 => radial(1.0),
        2 => gl.integrate(0.0, PI, |p: f64| radial(p.cos())) / PI,
        _ => 0.5 * gl.integrate(-1.0, 1.0, radial),
    };
    (e_abs, e_rad)
}
