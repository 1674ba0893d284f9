#![allow(dead_code)]

use std::path::PathBuf;

use thermoelastic::datum::DatumSpec;
use thermoelastic::model::ModelParams;
use thermoelastic::norms::QuadConfig;
use thermoelastic::scenario::{DataSet, Outputs, Scenario, TimeGrid};

pub fn scenario(n: usize, u0: DatumSpec, u1: DatumSpec, theta0: DatumSpec) -> Scenario {
    Scenario {
        name: format!("test_n{n}"),
        claims: vec![],
        dimension: n,
        component: 1,
        params: ModelParams::reference(),
        data: DataSet { u0, u1, theta0 },
        degenerate: None,
        time: TimeGrid { t_min: 1e2, t_max: 1e4, points_per_decade: 12 },
        quadrature: QuadConfig::default(),
        zones: None,
        outputs: Outputs::default(),
    }
}

pub fn gauss() -> DatumSpec {
    DatumSpec::gaussian(1.0, 1.0)
}

pub fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

pub fn load(name: &str) -> Scenario {
    Scenario::load(&scenario_path(name)).unwrap()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let m = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / m, ly.iter().sum::<f64>() / m);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}
