mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::scenario_path;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thermoelastic"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_on(cmd: &str, scn: &Path) -> Output {
    run(&[cmd, "--scenario", scn.to_str().unwrap()])
}

fn csv_lines(out: &Output) -> Vec<String> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().map(str::to_owned).collect()
}

#[test]
fn rates_on_bundled_n1_scenario() {
    let out = run_on("rates", &scenario_path("est_n1.toml"));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let lines = csv_lines(&out);
    assert!(lines[0].starts_with("# ") && lines[0].contains("(2 pi)^(-n/2)"));
    assert_eq!(lines[1], "claim,n,fitted,target,tolerance,residual,verdict");
    let row = lines.iter().find(|l| l.starts_with("thm_optimal_est:norm2_exponent,")).unwrap();
    let fitted: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!((fitted - 1.0).abs() < 0.05 && row.ends_with(",pass"), "{row}");
}

#[test]
fn roots_schema() {
    let out = run_on("roots", &scenario_path("est_n1.toml"));
    assert_eq!(out.status.code(), Some(0));
    let lines = csv_lines(&out);
    assert_eq!(lines[1], "r,lambda1_exact,lambdaR_exact,lambdaI_exact,lambda1_int,lambdaI_int,lambda1_ext,err_int,err_ext");
    assert!(lines.len() > 10);
}

#[test]
fn every_subcommand_has_a_header_comment() {
    let dir = tempfile::tempdir().unwrap();
    let scn = scenario_path("est_n2.toml");
    for cmd in ["roots", "norms", "multiplier", "profiles"] {
        let path = dir.path().join(format!("{cmd}.csv"));
        let out = run(&[cmd, "--scenario", scn.to_str().unwrap(), "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
        let text = std::fs::read_to_string(&path).unwrap();
        let first = text.lines().next().unwrap();
        assert!(first.starts_with("# ") && first.contains("(2 pi)^(-n/2)"), "{cmd}: {first}");
    }
    // only the outputs remain: the temporary file was renamed into place
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 4);
}

#[test]
fn reruns_are_byte_identical_across_thread_counts() {
    let scn = scenario_path("lead_n2.toml");
    let s = scn.to_str().unwrap();
    let a = run(&["norms", "--scenario", s]);
    let b = run(&["norms", "--scenario", s]);
    let c = run(&["norms", "--scenario", s, "--threads", "1"]);
    let d = run(&["norms", "--scenario", s, "--threads", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(a.stdout, d.stdout);
}

#[test]
fn missing_file_is_a_configuration_error() {
    let out = run(&["rates", "--scenario", "/nonexistent/none.toml"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("none.toml"));
}

#[test]
fn malformed_scenario_reports_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(scenario_path("est_n1.toml")).unwrap();

    let syntax = dir.path().join("syntax.toml");
    std::fs::write(&syntax, text.replace("kappa = 1.0", "kappa = = 1.0")).unwrap();
    let out = run_on("rates", &syntax);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 7"), "{}", String::from_utf8_lossy(&out.stderr));

    let field = dir.path().join("field.toml");
    std::fs::write(&field, text.replace("kappa = 1.0", "kappa = 1.0\nmu = 2.0")).unwrap();
    let out = run_on("rates", &field);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mu"));

    let value = dir.path().join("value.toml");
    std::fs::write(&value, text.replace("dimension = 1", "dimension = 4")).unwrap();
    assert_eq!(run_on("rates", &value).status.code(), Some(1));
}

#[test]
fn unknown_subcommand_is_a_configuration_error() {
    assert_eq!(run(&["plot", "--scenario", "x.toml"]).status.code(), Some(1));
}

#[test]
fn harness_failure_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(scenario_path("est_n1.toml")).unwrap();
    // wide u1 over a pre-asymptotic window: the n=1 growth law is not yet visible
    let text = text
        .replace("claims = [\"thm_optimal_est\", \"prop_mn\", \"appendix_wave\"]", "claims = [\"thm_optimal_est\"]")
        .replacen("[data.u1]\nkind = \"gaussian\"\namplitude = 1.0\nwidth = 1.0", "[data.u1]\nkind = \"gaussian\"\namplitude = 1.0\nwidth = 40.0", 1)
        .replace("t_min = 100.0", "t_min = 1.0")
        .replace("t_max = 10000.0", "t_max = 100.0");
    let path = dir.path().join("wide.toml");
    std::fs::write(&path, text).unwrap();
    let out = run_on("rates", &path);
    assert_eq!(out.status.code(), Some(2));
    assert!(csv_lines(&out).iter().any(|l| l.ends_with(",fail")));
}
