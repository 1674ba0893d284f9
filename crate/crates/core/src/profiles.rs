//! Diffusion-wave profile multipliers, the leading and second-order
//! profiles, and the closed-form norm of the second-order profile.
//!
//! Multipliers carrying a `xi_k` factor are stored divided by `i xi_k`
//! (the `*_radial` fields), so every stored value is a real function of
//! `(t, r)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::datum::{check_dim, sphere_area, DatumMoments};
use crate::error::{Error, Result};
use crate::model::{DerivedConstants, ModelParams};
use crate::norms::panel_integrate;
use crate::spectral::{sinc_t, CharRoots};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileMultipliers {
    pub t: f64,
    pub r: f64,
    pub g0: f64,
    pub g1_radial: f64,
    pub g2: f64,
    pub g3: f64,
    pub g4_radial: f64,
    pub h0: f64,
    pub h1_radial: f64,
}

/// Means and first moments of the three data, with the component index `k`
/// (0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileMoments {
    pub k: usize,
    pub p_u0: f64,
    pub p_u1: f64,
    pub p_theta: f64,
    pub m_u1: Vec<f64>,
    pub m_theta: Vec<f64>,
}

impl ProfileMoments {
    pub fn from_data(k: usize, u0: &DatumMoments, u1: &DatumMoments, theta0: &DatumMoments) -> Self {
        ProfileMoments {
            k,
            p_u0: u0.p,
            p_u1: u1.p,
            p_theta: theta0.p,
            m_u1: u1.m.clone(),
            m_theta: theta0.m.clone(),
        }
    }

    pub fn zero(n: usize, k: usize) -> Self {
        ProfileMoments { k, p_u0: 0.0, p_u1: 0.0, p_theta: 0.0, m_u1: vec![0.0; n], m_theta: vec![0.0; n] }
    }

    pub fn dim(&self) -> usize {
        self.m_u1.len()
    }
}

/// `(cos(beta1 r t) e^{-beta2 r^2 t} - e^{-beta0 r^2 t}) / r^2`, evaluated
/// through `cos z - 1 = -2 sin^2(z/2)` and `expm1` so the removable
/// singularity at `r = 0` costs no digits.
pub fn coupled_bracket(c: &DerivedConstants, t: f64, r: f64) -> f64 {
    if r < 1e-150 {
        return (c.beta0 - c.beta2) * t - c.beta1 * c.beta1 * t * t / 2.0;
    }
    let r2 = r * r;
    let h = (0.5 * c.beta1 * r * t).sin();
    let osc = -2.0 * h * h / r2 * (-c.beta2 * r2 * t).exp();
    let gap = (-c.beta0 * r2 * t).exp() * ((c.beta0 - c.beta2) * r2 * t).exp_m1() / r2;
    osc + gap
}

pub fn eval_profiles(c: &DerivedConstants, p: &ModelParams, t: f64, r: f64) -> ProfileMultipliers {
    let s = c.beta1 * c.beta1;
    let r2 = r * r;
    let w = c.beta1 * r * t;
    let e2 = (-c.beta2 * r2 * t).exp();
    let e0 = (-c.beta0 * r2 * t).exp();
    let (sn, cs) = w.sin_cos();
    let g = p.coupling();
    ProfileMultipliers {
        t,
        r,
        g0: sinc_t(c.beta1 * r, t) * e2,
        g1_radial: p.gamma1 / s * coupled_bracket(c, t, r),
        g2: g / s * e0 + p.b * p.b / s * cs * e2,
        g3: p.kappa * g / (s * s) * (e0 - cs * e2),
        g4_radial: c.a2 / (2.0 * c.beta1) * sinc_t(c.beta1 * r, t) * c.beta1 * e2,
        h0: -(c.a1 / p.gamma1) * r2 * t * cs * e2,
        h1_radial: c.a1 / c.beta1 * r * t * sn * e2,
    }
}

/// `(e^{-beta0 r^2 t} - cos(beta1 r t) e^{-beta2 r^2 t}) / r`.
pub fn mn_multiplier(c: &DerivedConstants, t: f64, r: f64) -> f64 {
    -r * coupled_bracket(c, t, r)
}

/// Leading profile at direction cosine `omega_k = xi_k / |xi|`.
pub fn phi_hat(m: &ProfileMultipliers, p_u1: f64, p_theta: f64, omega_k: f64) -> Complex64 {
    Complex64::new(m.g0 * p_u1, omega_k * m.r * m.g1_radial * p_theta)
}

/// Second-order profile at unit direction `omega`.
pub fn psi_hat(m: &ProfileMultipliers, mm: &ProfileMoments, omega: &[f64]) -> Complex64 {
    let r = m.r;
    let wk = omega[mm.k];
    let dot = |v: &[f64]| omega.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
    let xm_u1 = r * dot(&mm.m_u1);
    let xm_th = r * dot(&mm.m_theta);
    let re = xm_th * r * wk * m.g1_radial + m.g2 * mm.p_u0 + (m.h0 + m.g3) * mm.p_u1;
    let im = -xm_u1 * m.g0 + r * wk * (m.h1_radial + m.g4_radial) * mm.p_theta;
    Complex64::new(re, im)
}

/// Dominant small-frequency part of the `u1`/`theta0` response.
pub fn j0_hat(p: &ModelParams, roots: &CharRoots, t: f64, u1: Complex64, theta0_ixik: Complex64) -> Result<Complex64> {
    let d = checked_denominator(roots)?;
    let (l1, lr, li) = (roots.lambda1, roots.lambda_r, roots.lambda_i);
    let er = (lr * t).exp();
    let x_minus_y = er * ((l1 - lr) * t).exp_m1() + 2.0 * (0.5 * li * t).sin().powi(2) * er;
    Ok(-li * (li * t).sin() * er / d * u1 + p.gamma1 * x_minus_y / d * theta0_ixik)
}

/// Next-order small-frequency part.
pub fn j1_hat(
    p: &ModelParams,
    roots: &CharRoots,
    t: f64,
    u0: Complex64,
    u1: Complex64,
    theta0_ixik: Complex64,
) -> Result<Complex64> {
    let d = checked_denominator(roots)?;
    let (l1, lr, li) = (roots.lambda1, roots.lambda_r, roots.lambda_i);
    let er = (lr * t).exp();
    let x = (l1 * t).exp();
    let y = (li * t).cos() * er;
    let x_minus_y = er * ((l1 - lr) * t).exp_m1() + 2.0 * (0.5 * li * t).sin().powi(2) * er;
    let br2 = p.b * p.b * roots.r * roots.r;
    Ok(((br2 - li * li) * x - br2 * y) / d * u0
        + 2.0 * lr * x_minus_y / d * u1
        + p.gamma1 * (lr - l1) * sinc_t(li, t) * er / d * theta0_ixik)
}

fn checked_denominator(roots: &CharRoots) -> Result<f64> {
    let d = roots.denominator();
    let r2 = roots.r * roots.r;
    if !(d.abs() >= 1e-13 * (r2 + r2 * r2)) {
        return Err(Error::DegenerateDenominator { r: roots.r, d });
    }
    Ok(d)
}

/// Closed-form pieces of `||psi^||^2`. `b*` fields are frequency-space
/// integrals including the sphere measure; `total` is in physical-space
/// convention (divided by `(2 pi)^n`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsiNormBreakdown {
    pub a3: f64,
    pub a4: f64,
    pub a5: f64,
    pub a6: f64,
    pub a7: f64,
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    /// Non-oscillatory part of the sine-type piece, Gamma-function form.
    pub e7: f64,
    pub b3: f64,
    pub b4_1: f64,
    /// Oscillatory part of the cosine/exponential piece, by quadrature.
    pub remainder: f64,
    /// Oscillatory part of the sine-type piece, by quadrature; not in `total`.
    pub e7_remainder: f64,
    pub total: f64,
}

/// `int (alpha + beta W)(alpha' + beta' W) dsigma` with `W = omega_k (omega . M)`.
fn sphere_pair(n: usize, mk: f64, q: f64, a: (f64, f64), b: (f64, f64)) -> f64 {
    let nf = n as f64;
    sphere_area(n) * (a.0 * b.0 + (a.0 * b.1 + a.1 * b.0) * mk / nf + a.1 * b.1 * q)
}

/// `int_0^inf e^{-2 beta r^2 t} r^{n-1+2j} t^j dr`.
fn gauss_moment(n: usize, j: i32, beta: f64, t: f64) -> f64 {
    let m = (n as f64 + 2.0 * j as f64) / 2.0;
    0.5 * gamma(m) * (2.0 * beta).powf(-m) * t.powf(-(n as f64) / 2.0)
}

pub fn psi_norm_analytic(
    c: &DerivedConstants,
    p: &ModelParams,
    mm: &ProfileMoments,
    t: f64,
    n: usize,
) -> Result<PsiNormBreakdown> {
    check_dim(n)?;
    if mm.dim() != n || mm.m_theta.len() != n || mm.k >= n {
        return Err(Error::InvalidParameter("moment vectors must match the dimension".into()));
    }
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("time must be positive, got {t}")));
    }
    let nf = n as f64;
    let area = sphere_area(n);
    let s = c.beta1 * c.beta1;
    let g = p.coupling();
    let k = mm.k;
    let a3 = g * mm.p_u0 / s;
    let a4 = p.kappa * g * mm.p_u1 / (s * s);
    let a5 = p.gamma1 / s;
    let a6 = p.b * p.b * mm.p_u0 / s;
    let a7 = -(c.a1 / p.gamma1) * mm.p_u1;

    // sine-type piece: (sin/beta1) e^{-beta2 r^2 t} [omega . V + A1 omega_k r^2 t P_theta]
    let mut v: Vec<f64> = mm.m_u1.iter().map(|m| -m).collect();
    v[k] += c.a2 / 2.0 * mm.p_theta;
    let v2: f64 = v.iter().map(|x| x * x).sum();
    let b0 = area / nf * v2;
    let b1 = 2.0 * c.a1 * mm.p_theta * area / nf * v[k];
    let b2 = c.a1 * c.a1 * mm.p_theta * mm.p_theta * area / nf;
    let e7 = 0.5 / s
        * (b0 * gauss_moment(n, 0, c.beta2, t) + b1 * gauss_moment(n, 1, c.beta2, t) + b2 * gauss_moment(n, 2, c.beta2, t));

    // cosine/exponential piece
    let mk = mm.m_theta[k];
    let q = (mm.m_theta.iter().map(|x| x * x).sum::<f64>() + 2.0 * mk * mk) / (nf * (nf + 2.0));
    let alpha3 = (a3 + a4, -a5);
    let c0 = a6 - a4;
    let b3 = sphere_pair(n, mk, q, alpha3, alpha3) * gauss_moment(n, 0, c.beta0, t);
    let b4_1 = 0.5
        * (sphere_pair(n, mk, q, (c0, a5), (c0, a5)) * gauss_moment(n, 0, c.beta2, t)
            + 2.0 * area * a7 * (c0 + a5 * mk / nf) * gauss_moment(n, 1, c.beta2, t)
            + area * a7 * a7 * gauss_moment(n, 2, c.beta2, t));

    let wavelength = std::f64::consts::PI / (c.beta1 * t);
    let rn = |r: f64| r.powi(n as i32 - 1);
    let r_max = (45.0 / (c.beta2.min(c.beta0) * t)).sqrt();
    let alpha4 = |r: f64| (c0 + a7 * r * r * t, a5);
    let b4_2 = panel_integrate(
        |r| {
            let w = (2.0 * c.beta1 * r * t).cos() * (-2.0 * c.beta2 * r * r * t).exp();
            0.5 * w * sphere_pair(n, mk, q, alpha4(r), alpha4(r)) * rn(r)
        },
        0.0,
        r_max,
        wavelength / 4.0,
    );
    let b5 = panel_integrate(
        |r| {
            let w = (c.beta1 * r * t).cos() * (-(c.beta0 + c.beta2) * r * r * t).exp();
            w * sphere_pair(n, mk, q, alpha3, alpha4(r)) * rn(r)
        },
        0.0,
        r_max,
        wavelength / 4.0,
    );
    let remainder = b4_2 + 2.0 * b5;
    let e7_remainder = panel_integrate(
        |r| {
            let rr = r * r * t;
            let w = (2.0 * c.beta1 * r * t).cos() * (-2.0 * c.beta2 * r * r * t).exp();
            -0.5 / s * w * (b0 + b1 * rr + b2 * rr * rr) * rn(r)
        },
        0.0,
        r_max,
        wavelength / 4.0,
    );
    let conv = (2.0 * std::f64::consts::PI).powi(n as i32);
    let total = ((e7 + b3 + b4_1 + remainder) / conv).max(0.0);
    Ok(PsiNormBreakdown { a3, a4, a5, a6, a7, b0, b1, b2, e7, b3, b4_1, remainder, e7_remainder, total })
}
