use std::ffi::{c_char, CString};
use std::ptr;

use thermoelastic_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    let n = unsafe { te_last_error_message(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..n.min(255)].iter().map(|c| *c as u8).collect();
    String::from_utf8(bytes).unwrap()
}

#[test]
fn params_round_trip() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { te_params_new(1.0, 0.5, 1.0, 1.0, 1.0, &mut p) }, TeStatus::Ok);
    let mut c = TeConstants::default();
    assert_eq!(unsafe { te_derive_constants(p, &mut c) }, TeStatus::Ok);
    assert!((c.beta1 - 2f64.sqrt()).abs() < 1e-15);
    assert_eq!(c.a1, 5.0 / 64.0);
    let mut z = TeRoots::default();
    assert_eq!(unsafe { te_char_roots(p, 0.1, &mut z) }, TeStatus::Ok);
    assert!(z.lambda1 < 0.0 && z.lambda_i > 0.0);
    let mut m = TeMultipliers::default();
    assert_eq!(unsafe { te_solution_multipliers(p, 0.0, 2.0, &mut m) }, TeStatus::Ok);
    assert_eq!((m.m_u0, m.m_u1, m.m_theta), (1.0, 2.0, -2.0));
    assert_eq!(unsafe { te_solution_multipliers(p, 0.1, -1.0, &mut m) }, TeStatus::InvalidParameter);
    unsafe { te_params_free(p) };
}

#[test]
fn invalid_params_and_nulls() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { te_params_new(1.0, 1.0, 1.0, 1.0, 1.0, &mut p) }, TeStatus::InvalidParameter);
    assert!(p.is_null());
    assert!(last_error().contains("b > a"), "{}", last_error());
    assert_eq!(unsafe { te_params_new(1.0, 0.5, 1.0, 1.0, 1.0, ptr::null_mut()) }, TeStatus::NullPointer);
    let mut c = TeConstants::default();
    assert_eq!(unsafe { te_derive_constants(ptr::null(), &mut c) }, TeStatus::NullPointer);
    unsafe { te_params_free(ptr::null_mut()) };
    unsafe { te_scenario_free(ptr::null_mut()) };
    assert_eq!(unsafe { te_last_error_message(ptr::null_mut(), 0) }, last_error().len());
}

#[test]
fn scenario_norms() {
    let path = CString::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/scenarios/est_n3.toml")).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { te_scenario_load(path.as_ptr(), &mut s) }, TeStatus::Ok);
    let mut v = 0.0;
    assert_eq!(unsafe { te_scenario_norm(s, TeNormKind::Solution as i32, 100.0, &mut v) }, TeStatus::Ok);
    assert!(v > 0.0 && v.is_finite());
    assert_eq!(unsafe { te_scenario_norm(s, 42, 100.0, &mut v) }, TeStatus::InvalidParameter);
    unsafe { te_scenario_free(s) };
    let missing = CString::new("/nonexistent/scenario.toml").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { te_scenario_load(missing.as_ptr(), &mut s) }, TeStatus::Scenario);
    assert!(s.is_null());
}

#[test]
fn header_lists_entry_points() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/thermoelastic.h")).unwrap();
    for name in ["te_params_new", "te_char_roots", "te_scenario_norm", "te_last_error_message", "TE_NORM_KIND_PSI", "TE_STATUS_PANIC"] {
        assert!(h.contains(name), "{name}");
    }
}
