//! Characteristic roots of the potential part and the exact solution
//! multipliers built from them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DerivedConstants, ModelParams};

/// Frequencies below this are treated as `r = 0`.
const R_FLOOR: f64 = 1e-150;

/// Roots of `l^3 + kappa r^2 l^2 + (b^2 + g1 g2) r^2 l + kappa b^2 r^4 = 0`:
/// one real root `lambda1` and the pair `lambda_r +- i lambda_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharRoots {
    pub r: f64,
    pub lambda1: f64,
    pub lambda_r: f64,
    pub lambda_i: f64,
}

impl CharRoots {
    pub fn pair(&self) -> Complex64 {
        Complex64::new(self.lambda_r, self.lambda_i)
    }

    /// `2 lR l1 - lI^2 - lR^2 - l1^2`, written as a negative sum of squares.
    pub fn denominator(&self) -> f64 {
        let d = self.lambda1 - self.lambda_r;
        -(d * d + self.lambda_i * self.lambda_i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZoneConfig {
    pub epsilon0: f64,
    pub n0: f64,
}

impl ZoneConfig {
    pub fn for_params(p: &ModelParams) -> Self {
        let beta1 = p.speed_sq().sqrt();
        let eps = 0.1 * 1f64.min(beta1 / p.kappa).min(beta1 * beta1 / (p.kappa * beta1));
        ZoneConfig { epsilon0: eps, n0: 10.0 * 1f64.max(p.speed_sq() / p.kappa) }
    }

    pub fn classify(&self, r: f64) -> Zone {
        if r <= self.epsilon0 {
            Zone::Interior
        } else if r >= self.n0 {
            Zone::Exterior
        } else {
            Zone::Middle
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zone {
    Interior,
    Middle,
    Exterior,
}

fn cubic_coefficients(p: &ModelParams, r: f64) -> (f64, f64, f64) {
    let r2 = r * r;
    (p.kappa * r2, p.speed_sq() * r2, p.kappa * p.b * p.b * r2 * r2)
}

pub fn char_roots(p: &ModelParams, r: f64) -> Result<CharRoots> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("frequency must be nonnegative, got {r}")));
    }
    if r < R_FLOOR {
        return Ok(CharRoots { r, lambda1: 0.0, lambda_r: 0.0, lambda_i: 0.0 });
    }
    let (a2, a1, a0) = cubic_coefficients(p, r);
    let disc = 18.0 * a2 * a1 * a0 - 4.0 * a2.powi(3) * a0 + a2 * a2 * a1 * a1 - 4.0 * a1.powi(3) - 27.0 * a0 * a0;
    let scale = (4.0 * a2.powi(3) * a0).max(4.0 * a1.powi(3)).max(27.0 * a0 * a0).max(a2 * a2 * a1 * a1);
    if disc >= -1e-13 * scale {
        return Err(Error::NoConjugatePair { r, discriminant: disc });
    }

    // Cardano on the depressed cubic, larger-magnitude branch
    let pp = a1 - a2 * a2 / 3.0;
    let q = 2.0 * a2.powi(3) / 27.0 - a2 * a1 / 3.0 + a0;
    let dq = -disc / 108.0;
    let w = (-q / 2.0 - q.signum() * dq.sqrt()).cbrt();
    let y = if w != 0.0 { w - pp / (3.0 * w) } else { 0.0 };
    let mut l1 = y - a2 / 3.0;
    let f = |l: f64| ((l + a2) * l + a1) * l + a0;
    let df = |l: f64| (3.0 * l + 2.0 * a2) * l + a1;
    for _ in 0..8 {
        let step = f(l1) / df(l1);
        l1 -= step;
        if step.abs() <= 1e-16 * l1.abs() {
            break;
        }
    }

    // pair from Vieta, picking the better conditioned of the two real-part forms
    let modulus2 = -a0 / l1;
    let lr_sum = (-a2 - l1) / 2.0;
    let lr_prod = (a1 - modulus2) / (2.0 * l1);
    let cond_sum = (a2.abs() + l1.abs()) / lr_sum.abs().max(f64::MIN_POSITIVE);
    let cond_prod = (a1.abs() + modulus2) / (a1 - modulus2).abs().max(f64::MIN_POSITIVE);
    let lr = if cond_sum <= cond_prod { lr_sum } else { lr_prod };
    let li2 = modulus2 - lr * lr;
    if li2 <= 0.0 {
        return Err(Error::NoConjugatePair { r, discriminant: disc });
    }
    let mut z = Complex64::new(lr, li2.sqrt());
    let fc = |z: Complex64| ((z + a2) * z + a1) * z + a0;
    let dfc = |z: Complex64| (3.0 * z + 2.0 * a2) * z + a1;
    for _ in 0..3 {
        let step = fc(z) / dfc(z);
        z -= step;
        if step.norm() <= 1e-16 * z.norm() {
            break;
        }
    }
    if !(z.im > 0.0) || !l1.is_finite() {
        return Err(Error::NoConjugatePair { r, discriminant: disc });
    }
    Ok(CharRoots { r, lambda1: l1, lambda_r: z.re, lambda_i: z.im })
}

/// Relative Vieta residuals (sum, pairwise sum, product).
pub fn vieta_residuals(p: &ModelParams, roots: &CharRoots) -> [f64; 3] {
    let (a2, a1, a0) = cubic_coefficients(p, roots.r);
    let (l1, lr, li) = (roots.lambda1, roots.lambda_r, roots.lambda_i);
    let m2 = lr * lr + li * li;
    let rel = |x: f64, y: f64, s: f64| (x - y).abs() / s.max(f64::MIN_POSITIVE);
    [
        rel(l1 + 2.0 * lr, -a2, a2.abs().max(l1.abs())),
        rel(2.0 * lr * l1 + m2, a1, a1.abs().max(m2)),
        rel(l1 * m2, -a0, a0.abs()),
    ]
}

/// Truncated small-frequency expansions.
pub fn roots_expansion_interior(c: &DerivedConstants, p: &ModelParams, r: f64) -> CharRoots {
    let s = p.speed_sq();
    let g = p.coupling();
    let b2 = p.b * p.b;
    let r2 = r * r;
    CharRoots {
        r,
        lambda1: -c.beta0 * r2 - p.kappa.powi(3) * b2 * b2 * g / s.powi(4) * r2 * r2,
        lambda_r: -c.beta2 * r2,
        lambda_i: c.beta1 * r - p.kappa * p.kappa * g * (g + 4.0 * b2) / (8.0 * s.powf(2.5)) * r2 * r,
    }
}

/// Leading large-frequency behaviour.
pub fn roots_expansion_exterior(p: &ModelParams, r: f64) -> CharRoots {
    CharRoots { r, lambda1: -p.kappa * r * r, lambda_r: -p.coupling() / (2.0 * p.kappa), lambda_i: p.b * r }
}

/// `u^(t) = m_u0 u0^ + m_u1 u1^ + i xi_k m_theta theta0^`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolutionMultipliers {
    pub m_u0: f64,
    pub m_u1: f64,
    pub m_theta: f64,
}

impl SolutionMultipliers {
    /// `theta0_ixik` is `i xi_k theta0^`.
    pub fn apply(&self, u0: Complex64, u1: Complex64, theta0_ixik: Complex64) -> Complex64 {
        self.m_u0 * u0 + self.m_u1 * u1 + self.m_theta * theta0_ixik
    }
}

/// `sin(x t)/x`, with a series near zero.
pub fn sinc_t(x: f64, t: f64) -> f64 {
    let z = x * t;
    if z.abs() < 1e-4 {
        t * (1.0 - z * z / 6.0)
    } else {
        z.sin() / x
    }
}

fn degeneracy_check(roots: &CharRoots) -> Result<f64> {
    let r = roots.r;
    let d = roots.denominator();
    let r2 = r * r;
    if !(d.abs() >= 1e-13 * (r2 + r2 * r2)) {
        return Err(Error::DegenerateDenominator { r, d });
    }
    Ok(d)
}

pub fn solution_multipliers(p: &ModelParams, roots: &CharRoots, t: f64) -> Result<SolutionMultipliers> {
    let r = roots.r;
    if r < R_FLOOR {
        return Ok(SolutionMultipliers { m_u0: 1.0, m_u1: t, m_theta: -p.gamma1 * t * t / 2.0 });
    }
    if !(roots.lambda_i > 0.0) {
        return Err(Error::NoConjugatePair { r, discriminant: f64::NAN });
    }
    let d = degeneracy_check(roots)?;
    let (l1, lr, li) = (roots.lambda1, roots.lambda_r, roots.lambda_i);
    let er = (lr * t).exp();
    let half = (0.5 * li * t).sin();
    let y = (li * t).cos() * er;
    // e^{l1 t} - cos(lI t) e^{lR t}
    let x_minus_y = er * ((l1 - lr) * t).exp_m1() + 2.0 * half * half * er;
    let se = sinc_t(li, t) * er;
    let br2 = p.b * p.b * r * r;
    let m_u0 = y
        + (br2 - li * li - lr * lr) * x_minus_y / d
        + (l1 * (lr * l1 + li * li - lr * lr) + br2 * (lr - l1)) * se / d;
    let m_u1 = (2.0 * lr * x_minus_y + (lr * lr - li * li - l1 * l1) * se) / d;
    let m_theta = p.gamma1 * (x_minus_y + (lr - l1) * se) / d;
    Ok(SolutionMultipliers { m_u0, m_u1, m_theta })
}

/// `m(t) = e exp(l1 t) + c Re exp(l t) + s Im exp(l t)` with `l = lR + i lI`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modes {
    pub e: f64,
    pub c: f64,
    pub s: f64,
}

impl Modes {
    pub fn derivative(&self, roots: &CharRoots, t: f64, order: i32) -> f64 {
        let l = roots.pair();
        let z = l.powi(order) * (l * t).exp();
        self.e * roots.lambda1.powi(order) * (roots.lambda1 * t).exp() + self.c * z.re + self.s * z.im
    }
}

/// Modal coefficients of the three groups, for `r > 0`.
pub fn modal_coefficients(p: &ModelParams, roots: &CharRoots) -> Result<[Modes; 3]> {
    if roots.r < R_FLOOR {
        return Err(Error::ZeroFrequency(roots.r));
    }
    let d = degeneracy_check(roots)?;
    let (l1, lr, li) = (roots.lambda1, roots.lambda_r, roots.lambda_i);
    let br2 = p.b * p.b * roots.r * roots.r;
    let e0 = (br2 - li * li - lr * lr) / d;
    let u0 = Modes { e: e0, c: 1.0 - e0, s: (l1 * (lr * l1 + li * li - lr * lr) + br2 * (lr - l1)) / (li * d) };
    let e1 = 2.0 * lr / d;
    let u1 = Modes { e: e1, c: -e1, s: (lr * lr - li * li - l1 * l1) / (li * d) };
    let et = p.gamma1 / d;
    let th = Modes { e: et, c: -et, s: p.gamma1 * (lr - l1) / (li * d) };
    Ok([u0, u1, th])
}

/// Temperature multipliers: `theta^(t) = (q_u0 u0^ + q_u1 u1^) / (i xi_k) + q_theta theta0^`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaMultipliers {
    pub q_u0: f64,
    pub q_u1: f64,
    pub q_theta: f64,
}

impl ThetaMultipliers {
    /// Returns `i xi_k theta^(t)` from `(u0^, u1^, i xi_k theta0^)`.
    pub fn apply(&self, u0: Complex64, u1: Complex64, theta0_ixik: Complex64) -> Complex64 {
        self.q_u0 * u0 + self.q_u1 * u1 + self.q_theta * theta0_ixik
    }
}

pub fn theta_multiplier(p: &ModelParams, roots: &CharRoots, t: f64) -> Result<ThetaMultipliers> {
    let modes = modal_coefficients(p, roots)?;
    let br2 = p.b * p.b * roots.r * roots.r;
    let q = |m: &Modes| -(m.derivative(roots, t, 2) + br2 * m.derivative(roots, t, 0)) / p.gamma1;
    Ok(ThetaMultipliers { q_u0: q(&modes[0]), q_u1: q(&modes[1]), q_theta: q(&modes[2]) })
}

fn rk4<const N: usize>(
    mut y: [Complex64; N],
    t: f64,
    dt: f64,
    f: impl Fn(&[Complex64; N]) -> [Complex64; N],
) -> [Complex64; N] {
    if t <= 0.0 {
        return y;
    }
    let steps = (t / dt).ceil().max(1.0) as usize;
    let h = t / steps as f64;
    let axpy = |y: &[Complex64; N], k: &[Complex64; N], a: f64| {
        let mut out = *y;
        for i in 0..N {
            out[i] += a * k[i];
        }
        out
    };
    for _ in 0..steps {
        let k1 = f(&y);
        let k2 = f(&axpy(&y, &k1, h / 2.0));
        let k3 = f(&axpy(&y, &k2, h / 2.0));
        let k4 = f(&axpy(&y, &k3, h));
        for i in 0..N {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    y
}

fn step_limit(p: &ModelParams, r: f64) -> Result<f64> {
    let roots = char_roots(p, r)?;
    Ok((0.1 / roots.lambda_i.max(1.0)).min(0.1 / roots.lambda1.abs().max(1.0)))
}

/// Classical RK4 on the third-order scalar equation for the potential part.
pub fn ode_oracle(
    p: &ModelParams,
    r: f64,
    u0: Complex64,
    u1: Complex64,
    theta0_ixik: Complex64,
    t: f64,
    dt: f64,
) -> Result<Complex64> {
    let limit = step_limit(p, r)?;
    if !(dt > 0.0) || dt > limit {
        return Err(Error::StepSize { dt, limit });
    }
    let r2 = r * r;
    let (k, s, b2) = (p.kappa, p.speed_sq(), p.b * p.b);
    let y0 = [u0, u1, -b2 * r2 * u0 - p.gamma1 * theta0_ixik];
    let y = rk4(y0, t, dt, |y| [y[1], y[2], -k * r2 * y[2] - s * r2 * y[1] - k * b2 * r2 * r2 * y[0]]);
    Ok(y[0])
}

/// RK4 on the coupled first-order system in `(u^, u^_t, i xi_k theta^)`.
/// Returns `(u^(t), i xi_k theta^(t))`.
pub fn coupled_oracle(
    p: &ModelParams,
    r: f64,
    u0: Complex64,
    u1: Complex64,
    theta0_ixik: Complex64,
    t: f64,
    dt: f64,
) -> Result<(Complex64, Complex64)> {
    let limit = step_limit(p, r)?;
    if !(dt > 0.0) || dt > limit {
        return Err(Error::StepSize { dt, limit });
    }
    let r2 = r * r;
    let (k, b2) = (p.kappa, p.b * p.b);
    let y = rk4([u0, u1, theta0_ixik], t, dt, |y| {
        [y[1], -b2 * r2 * y[0] - p.gamma1 * y[2], -k * r2 * y[2] + p.gamma2 * r2 * y[1]]
    });
    Ok((y[0], y[2]))
}

/// Potential projection `xi (xi . u) / |xi|^2`.
pub fn helmholtz_project(xi: &[f64], u: &[Complex64]) -> Result<Vec<Complex64>> {
    if xi.len() != u.len() {
        return Err(Error::InvalidParameter("xi and u differ in length".into()));
    }
    let r2: f64 = xi.iter().map(|x| x * x).sum();
    if !(r2 > 0.0) {
        return Err(Error::ZeroFrequency(0.0));
    }
    let dot: Complex64 = xi.iter().zip(u).map(|(x, v)| *x * v).sum();
    Ok(xi.iter().map(|x| *x * dot / r2).collect())
}

/// Convenience: roots and multipliers in one call.
pub fn multipliers_at(p: &ModelParams, r: f64, t: f64) -> Result<SolutionMultipliers> {
    solution_multipliers(p, &char_roots(p, r)?, t)
}
