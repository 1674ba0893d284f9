//! Scenario-driven command line: `roots`, `norms`, `rates`, `multiplier`,
//! `profiles`. Tables are CSV with a leading `#` line naming units and the
//! Fourier convention.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::derive_constants;
use crate::norms::{mn_norm, wave_multiplier_norm, NormEngine, RadialGrid};
use crate::profiles::eval_profiles;
use crate::rates::{angular_moment_mc, rate_function, sweep, theorem_harness, Comparison, Verdict};
use crate::scenario::{geometric_grid, NormKind, Scenario};
use crate::spectral::{char_roots, roots_expansion_exterior, roots_expansion_interior, CharRoots};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

pub const MC_SAMPLES: usize = 1_000_000;
pub const MC_TOLERANCE: f64 = 2e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Exact vs expansion roots over the scenario's r-grid.
    Roots,
    /// Time sweep of the requested norms.
    Norms,
    /// Harness verdicts for the scenario's claims.
    Rates,
    /// Coupled-multiplier and wave-multiplier norm sweeps.
    Multiplier,
    /// Profile multiplier values.
    Profiles,
}

#[derive(Debug, Parser)]
#[command(name = "thermoelastic", version, about = "Large-time asymptotics for linear thermoelasticity")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long)]
    pub scenario: PathBuf,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Seed for the Monte-Carlo angular checks in `rates`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub comment: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Set when a harness verdict failed.
    pub failed: bool,
}

impl Table {
    fn new(comment: impl Into<String>, header: &[&str]) -> Self {
        Table { comment: comment.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: vec![], failed: false }
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut buf = format!("# {}\n", self.comment).into_bytes();
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(&self.header).map_err(io)?;
            for r in &self.rows {
                w.write_record(r).map_err(io)?;
            }
            w.flush()?;
        }
        Ok(buf)
    }
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

const CONVENTION: &str = "norms are physical-space L2 norms from frequency integrals times (2 pi)^(-n/2); t and r are dimensionless";

fn roots_error(exact: &CharRoots, approx: &CharRoots) -> f64 {
    let d1 = (exact.lambda1 - approx.lambda1).abs();
    let d2 = (exact.pair() - approx.pair()).norm();
    d1.max(d2)
}

pub fn roots_table(scn: &Scenario) -> Result<Table> {
    let p = &scn.params;
    let c = derive_constants(p)?;
    let g = &scn.outputs.roots;
    let mut t = Table::new(
        format!("characteristic roots; r is |xi|; err_* = max(|d lambda1|, |d (lambdaR + i lambdaI)|); {CONVENTION}"),
        &["r", "lambda1_exact", "lambdaR_exact", "lambdaI_exact", "lambda1_int", "lambdaI_int", "lambda1_ext", "err_int", "err_ext"],
    );
    let ratio = (g.r_max / g.r_min).powf(1.0 / (g.points - 1) as f64);
    for i in 0..g.points {
        let r = if i + 1 == g.points { g.r_max } else { g.r_min * ratio.powi(i as i32) };
        let ex = char_roots(p, r)?;
        let int = roots_expansion_interior(&c, p, r);
        let ext = roots_expansion_exterior(p, r);
        t.rows.push(
            [r, ex.lambda1, ex.lambda_r, ex.lambda_i, int.lambda1, int.lambda_i, ext.lambda1, roots_error(&ex, &int), roots_error(&ex, &ext)]
                .map(num)
                .to_vec(),
        );
    }
    Ok(t)
}

/// Reference rate for a norm kind: `A_n(t)` for solution and `phi`, `t^{-n/4}` otherwise.
pub fn reference_rate(kind: NormKind, n: usize, t: f64) -> f64 {
    match kind {
        NormKind::Solution | NormKind::Phi => rate_function(n, t),
        _ => t.powf(-(n as f64) / 4.0),
    }
}

pub fn norms_table(scn: &Scenario) -> Result<Table> {
    let engine = NormEngine::new(scn)?;
    let n = scn.dimension;
    let times = scn.time.times();
    let mut t = Table::new(
        format!("norm sweep for scenario {}; n = {n}; rate_ref is A_n(t) or t^(-n/4); {CONVENTION}", scn.name),
        &["t", "norm", "rate_ref", "quantity", "tail_bound"],
    );
    for &kind in &scn.outputs.norms {
        for (time, r) in sweep(&engine, kind, &times)? {
            t.rows.push(vec![num(time), num(r.value), num(reference_rate(kind, n, time)), kind.name().into(), num(r.tail_bound)]);
        }
    }
    Ok(t)
}

fn verdict_row(v: &Verdict) -> Vec<String> {
    vec![
        v.claim.clone(),
        v.n.to_string(),
        num(v.fitted),
        num(v.target),
        num(v.tolerance),
        num(v.residual),
        if v.pass { "pass" } else { "fail" }.into(),
    ]
}

pub fn rates_table(scn: &Scenario, seed: u64) -> Result<Table> {
    let n = scn.dimension;
    let mut t = Table::new(
        format!("harness verdicts for scenario {}; fitted/target are exponents, slopes or ratios as named by claim; residual is max |log residual|; {CONVENTION}", scn.name),
        &["claim", "n", "fitted", "target", "tolerance", "residual", "verdict"],
    );
    let mut verdicts = Vec::new();
    for &claim in &scn.claims {
        verdicts.extend(theorem_harness(scn, claim)?);
    }
    if n >= 2 {
        let engine = NormEngine::new(scn)?;
        let m = &engine.moments.m_u1;
        let moment: Vec<f64> = if m.iter().any(|x| *x != 0.0) {
            m.clone()
        } else {
            (0..n).map(|i| if i == scn.k() { 1.0 } else { 0.0 }).collect()
        };
        let mc = angular_moment_mc(n, scn.k(), &moment, MC_SAMPLES, seed)?;
        for (name, got, want) in [("angular_mc:riesz", mc.riesz, mc.riesz_exact), ("angular_mc:mixed", mc.mixed, mc.mixed_exact)] {
            verdicts.push(Verdict::new(name.into(), n, (got / want - 1.0).abs(), 0.0, MC_TOLERANCE, 0.0, Comparison::AtMost));
        }
    }
    t.failed = verdicts.iter().any(|v| !v.pass);
    t.rows = verdicts.iter().map(verdict_row).collect();
    Ok(t)
}

pub fn multiplier_table(scn: &Scenario) -> Result<Table> {
    let n = scn.dimension;
    let c = derive_constants(&scn.params)?;
    let q = scn.quadrature;
    let times = scn.time.times();
    let mut t = Table::new(
        format!("multiplier norm sweep for scenario {}; n = {n}; mn is the coupled multiplier, wave is sin(|xi| t)/|xi| on the wave datum; {CONVENTION}", scn.name),
        &["t", "norm", "rate_ref", "quantity"],
    );
    let mn: Vec<f64> = times
        .par_iter()
        .map(|&time| mn_norm(&c, time, n, &RadialGrid::for_profiles(&c, time, &q)?))
        .collect::<Result<_>>()?;
    for (time, v) in times.iter().zip(mn) {
        t.rows.push(vec![num(*time), num(v), num(rate_function(n, *time)), "mn".into()]);
    }
    if n <= 2 {
        let g = scn.outputs.wave_datum.clone().unwrap_or_else(|| scn.data.u1.clone());
        let wave: Vec<f64> = times
            .par_iter()
            .map(|&time| wave_multiplier_norm(&g, time, n, &RadialGrid::for_wave(&g, time, &q)?))
            .collect::<Result<_>>()?;
        for (time, v) in times.iter().zip(wave) {
            t.rows.push(vec![num(*time), num(v), num(rate_function(n, *time)), "wave".into()]);
        }
    }
    Ok(t)
}

pub fn profiles_table(scn: &Scenario) -> Result<Table> {
    let p = &scn.params;
    let c = derive_constants(p)?;
    let g = &scn.outputs.profiles;
    let mut t = Table::new(
        format!("profile multipliers; columns with iξ_k factors are stored divided by iξ_k; {CONVENTION}"),
        &["t", "r", "g0", "g1_radial", "g2", "g3", "g4_radial", "h0", "h1_radial"],
    );
    let rs = geometric_or_linear(g.r_min, g.r_max, g.points);
    for &time in &g.times {
        for &r in &rs {
            let m = eval_profiles(&c, p, time, r);
            t.rows.push([time, r, m.g0, m.g1_radial, m.g2, m.g3, m.g4_radial, m.h0, m.h1_radial].map(num).to_vec());
        }
    }
    Ok(t)
}

fn geometric_or_linear(a: f64, b: f64, points: usize) -> Vec<f64> {
    if a > 0.0 {
        let per_decade = ((points - 1) as f64 / (b / a).log10()).max(1.0).round() as usize;
        geometric_grid(a, b, per_decade)
    } else {
        (0..points).map(|i| a + (b - a) * i as f64 / (points - 1) as f64).collect()
    }
}

pub fn build_table(command: Command, scn: &Scenario, seed: u64) -> Result<Table> {
    match command {
        Command::Roots => roots_table(scn),
        Command::Norms => norms_table(scn),
        Command::Rates => rates_table(scn, seed),
        Command::Multiplier => multiplier_table(scn),
        Command::Profiles => profiles_table(scn),
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_)
        | Error::InvalidDatum(_)
        | Error::UnsupportedDimension(_)
        | Error::Scenario(_)
        | Error::Io(_) => EXIT_CONFIG,
        _ => EXIT_FAILURE,
    }
}

pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(failed) => {
            if failed {
                EXIT_FAILURE
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli) -> Result<bool> {
    let scn = Scenario::load(&cli.scenario)?;
    let table = match cli.threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("threads: {e}")))?;
            pool.install(|| build_table(cli.command, &scn, cli.seed))?
        }
        None => build_table(cli.command, &scn, cli.seed)?,
    };
    let bytes = table.to_csv()?;
    match &cli.out {
        Some(path) => write_atomic(path, &bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(table.failed)
}

/// Parses `args` (including the program name) and runs.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
