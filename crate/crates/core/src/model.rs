//! Material parameters and the constants derived from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of the linear thermoelastic system.
///
/// `kappa` is the heat diffusivity, `a < b` the transverse and longitudinal
/// wave speeds, `gamma1`/`gamma2` the coupling coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    pub kappa: f64,
    pub a: f64,
    pub b: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl ModelParams {
    pub fn new(kappa: f64, a: f64, b: f64, gamma1: f64, gamma2: f64) -> Result<Self> {
        let p = ModelParams { kappa, a, b, gamma1, gamma2 };
        p.validate()?;
        Ok(p)
    }

    /// kappa = 1, a = 0.5, b = 1, gamma1 = gamma2 = 1.
    pub fn reference() -> Self {
        ModelParams { kappa: 1.0, a: 0.5, b: 1.0, gamma1: 1.0, gamma2: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.kappa, self.a, self.b, self.gamma1, self.gamma2];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        if self.kappa <= 0.0 {
            return Err(Error::InvalidParameter(format!("kappa must be positive, got {}", self.kappa)));
        }
        if self.a <= 0.0 {
            return Err(Error::InvalidParameter(format!("a must be positive, got {}", self.a)));
        }
        if self.b <= self.a {
            return Err(Error::InvalidParameter(format!(
                "need b > a, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        if self.gamma1 * self.gamma2 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "need gamma1 * gamma2 > 0, got {}",
                self.gamma1 * self.gamma2
            )));
        }
        Ok(())
    }

    pub fn coupling(&self) -> f64 {
        self.gamma1 * self.gamma2
    }

    /// b^2 + gamma1 gamma2
    pub fn speed_sq(&self) -> f64 {
        self.b * self.b + self.coupling()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedConstants {
    pub beta0: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub a1: f64,
    pub a2: f64,
}

pub fn derive_constants(p: &ModelParams) -> Result<DerivedConstants> {
    p.validate()?;
    let g = p.coupling();
    let s = p.speed_sq();
    let beta1 = s.sqrt();
    let b2 = p.b * p.b;
    Ok(DerivedConstants {
        beta0: p.kappa * b2 / s,
        beta1,
        beta2: p.kappa * g / (2.0 * s),
        a1: p.kappa * p.kappa * p.gamma1 * p.gamma1 * p.gamma2 * (g + 4.0 * b2) / (8.0 * s * s * s),
        a2: p.gamma1 * p.kappa * (g - 2.0 * b2) / (s * s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-14 * (1.0 + b.abs())
    }

    #[test]
    fn reference_constants() {
        let c = derive_constants(&ModelParams::reference()).unwrap();
        assert!(close(c.beta0, 0.5));
        assert!(close(c.beta1, 2f64.sqrt()));
        assert!(close(c.beta2, 0.25));
        assert!(close(c.a1, 5.0 / 64.0));
        assert!(close(c.a2, -0.25));
    }

    #[test]
    fn weak_coupling_limit() {
        let p = ModelParams::new(2.0, 0.3, 1.0, 1e-4, 1e-4).unwrap();
        let c = derive_constants(&p).unwrap();
        assert!((c.beta0 - 2.0).abs() < 1e-7);
        assert!((c.beta1 - 1.0).abs() < 1e-7);
        assert!(c.beta2.abs() < 1e-7);
    }

    #[test]
    fn rejects_inadmissible() {
        assert!(ModelParams::new(1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(0.0, 0.5, 1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 0.5, 1.0, 1.0, -1.0).is_err());
        assert!(ModelParams::new(1.0, -0.5, 1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(f64::NAN, 0.5, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn negative_pair_is_admissible() {
        let c = derive_constants(&ModelParams::new(1.0, 0.5, 1.0, -1.0, -2.0).unwrap()).unwrap();
        assert!(c.beta2 > 0.0);
    }
}
