//! Scenario files: model, data, grids and requested outputs.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::datum::{check_dim, DatumSpec};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::norms::QuadConfig;
use crate::spectral::ZoneConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    ThmOptimalEst,
    ThmOptimalLead,
    CoroSecondOrder,
    PropMn,
    AppendixWave,
}

impl Claim {
    pub fn name(&self) -> &'static str {
        match self {
            Claim::ThmOptimalEst => "thm_optimal_est",
            Claim::ThmOptimalLead => "thm_optimal_lead",
            Claim::CoroSecondOrder => "coro_second_order",
            Claim::PropMn => "prop_mn",
            Claim::AppendixWave => "appendix_wave",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSet {
    pub u0: DatumSpec,
    pub u1: DatumSpec,
    pub theta0: DatumSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_min: f64,
    pub t_max: f64,
    #[serde(default = "default_ppd")]
    pub points_per_decade: usize,
}

fn default_ppd() -> usize {
    12
}

impl TimeGrid {
    /// Geometric grid including both endpoints.
    pub fn times(&self) -> Vec<f64> {
        geometric_grid(self.t_min, self.t_max, self.points_per_decade)
    }
}

pub fn geometric_grid(a: f64, b: f64, per_decade: usize) -> Vec<f64> {
    let decades = (b / a).log10();
    let m = ((decades * per_decade as f64).round() as usize).max(1);
    (0..=m).map(|i| a * 10f64.powf(decades * i as f64 / m as f64)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Solution,
    ErrorPhi,
    ErrorPhiPsi,
    Phi,
    Psi,
}

impl NormKind {
    pub fn name(&self) -> &'static str {
        match self {
            NormKind::Solution => "solution",
            NormKind::ErrorPhi => "error_phi",
            NormKind::ErrorPhiPsi => "error_phi_psi",
            NormKind::Phi => "phi",
            NormKind::Psi => "psi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootsGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

impl Default for RootsGrid {
    fn default() -> Self {
        RootsGrid { r_min: 1e-3, r_max: 1e3, points: 61 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileGrid {
    pub times: Vec<f64>,
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

impl Default for ProfileGrid {
    fn default() -> Self {
        ProfileGrid { times: vec![100.0], r_min: 0.0, r_max: 0.5, points: 51 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default = "default_norms")]
    pub norms: Vec<NormKind>,
    #[serde(default)]
    pub roots: RootsGrid,
    #[serde(default)]
    pub profiles: ProfileGrid,
    /// Datum used by the wave-multiplier sweep; defaults to `data.u1`.
    #[serde(default)]
    pub wave_datum: Option<DatumSpec>,
}

fn default_norms() -> Vec<NormKind> {
    vec![NormKind::Solution]
}

impl Default for Outputs {
    fn default() -> Self {
        Outputs { norms: default_norms(), roots: RootsGrid::default(), profiles: ProfileGrid::default(), wave_datum: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    /// Harness claims run by `rates`.
    #[serde(default)]
    pub claims: Vec<Claim>,
    pub dimension: usize,
    /// 1-based component index.
    pub component: usize,
    pub params: ModelParams,
    pub data: DataSet,
    /// Counterpart data for the degenerate comparison in the harness.
    #[serde(default)]
    pub degenerate: Option<DataSet>,
    pub time: TimeGrid,
    #[serde(default)]
    pub quadrature: QuadConfig,
    #[serde(default)]
    pub zones: Option<ZoneConfig>,
    #[serde(default)]
    pub outputs: Outputs,
}

impl Scenario {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let scn: Scenario = toml::from_str(s).map_err(|e| Error::Scenario(e.to_string()))?;
        scn.validate()?;
        Ok(scn)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Scenario(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Scenario(m) => Error::Scenario(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Scenario(e.to_string()))
    }

    pub fn k(&self) -> usize {
        self.component - 1
    }

    pub fn zones(&self) -> ZoneConfig {
        self.zones.unwrap_or_else(|| ZoneConfig::for_params(&self.params))
    }

    /// Same scenario with the degenerate counterpart data swapped in.
    pub fn degenerate_counterpart(&self) -> Option<Scenario> {
        self.degenerate.as_ref().map(|d| {
            let mut s = self.clone();
            s.data = d.clone();
            s.degenerate = None;
            s.name = format!("{}_degenerate", self.name);
            s
        })
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dimension;
        check_dim(n).map_err(|e| Error::Scenario(format!("dimension: {e}")))?;
        if self.component == 0 || self.component > n {
            return Err(Error::Scenario(format!("component must be in 1..={n}, got {}", self.component)));
        }
        self.params.validate().map_err(|e| Error::Scenario(format!("params: {e}")))?;
        let mut sets = vec![("data", &self.data)];
        if let Some(d) = &self.degenerate {
            sets.push(("degenerate", d));
        }
        for (label, set) in sets {
            for (name, d) in [("u0", &set.u0), ("u1", &set.u1), ("theta0", &set.theta0)] {
                d.validate(n).map_err(|e| Error::Scenario(format!("{label}.{name}: {e}")))?;
            }
        }
        if let Some(w) = &self.outputs.wave_datum {
            w.validate(n).map_err(|e| Error::Scenario(format!("outputs.wave_datum: {e}")))?;
        }
        let tg = &self.time;
        if !(tg.t_min >= 1.0) || !(tg.t_max > tg.t_min) || !tg.t_max.is_finite() {
            return Err(Error::Scenario(format!(
                "time: need 1 <= t_min < t_max, got [{}, {}]",
                tg.t_min, tg.t_max
            )));
        }
        if tg.points_per_decade < 8 {
            return Err(Error::Scenario(format!(
                "time.points_per_decade must be >= 8, got {}",
                tg.points_per_decade
            )));
        }
        self.quadrature.validate().map_err(|e| Error::Scenario(format!("quadrature: {e}")))?;
        if let Some(z) = &self.zones {
            if !(z.epsilon0 > 0.0 && z.n0 > z.epsilon0) {
                return Err(Error::Scenario("zones: need 0 < epsilon0 < n0".into()));
            }
        }
        let rg = &self.outputs.roots;
        if !(rg.r_min > 0.0 && rg.r_max > rg.r_min && rg.points >= 2) {
            return Err(Error::Scenario("outputs.roots: need 0 < r_min < r_max and points >= 2".into()));
        }
        let pg = &self.outputs.profiles;
        if !(pg.r_min >= 0.0 && pg.r_max > pg.r_min && pg.points >= 2) || pg.times.iter().any(|t| !(*t >= 0.0)) {
            return Err(Error::Scenario("outputs.profiles: need 0 <= r_min < r_max, points >= 2, times >= 0".into()));
        }
        Ok(())
    }
}
