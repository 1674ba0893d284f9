//! C ABI over the thermoelastic engine. Handles are opaque; every call
//! returns a `TeStatus` and writes results through out-pointers. The message
//! for the last failure on the calling thread is available from
//! `te_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use thermoelastic::model::{derive_constants, ModelParams};
use thermoelastic::norms::NormEngine;
use thermoelastic::scenario::{NormKind, Scenario};
use thermoelastic::spectral::{char_roots, solution_multipliers};
use thermoelastic::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    InvalidDatum = 3,
    UnsupportedDimension = 4,
    Numerical = 5,
    Scenario = 6,
    Io = 7,
    InvalidUtf8 = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TeNormKind {
    Solution = 0,
    ErrorPhi = 1,
    ErrorPhiPsi = 2,
    Phi = 3,
    Psi = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TeConstants {
    pub beta0: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub a1: f64,
    pub a2: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TeRoots {
    pub lambda1: f64,
    pub lambda_r: f64,
    pub lambda_i: f64,
}

/// `u^ = m_u0 u0^ + m_u1 u1^ + i xi_k m_theta theta0^`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TeMultipliers {
    pub m_u0: f64,
    pub m_u1: f64,
    pub m_theta: f64,
}

/// Opaque model parameters.
pub struct TeParams(ModelParams);

/// Opaque loaded scenario with its norm engine.
pub struct TeScenario {
    engine: NormEngine,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> TeStatus {
    match e {
        Error::InvalidParameter(_) => TeStatus::InvalidParameter,
        Error::InvalidDatum(_) => TeStatus::InvalidDatum,
        Error::UnsupportedDimension(_) => TeStatus::UnsupportedDimension,
        Error::Scenario(_) => TeStatus::Scenario,
        Error::Io(_) => TeStatus::Io,
        _ => TeStatus::Numerical,
    }
}

fn guard(f: impl FnOnce() -> Result<(), TeStatus>) -> TeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TeStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            TeStatus::Panic
        }
    }
}

fn check<T>(r: thermoelastic::Result<T>) -> Result<T, TeStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn non_null<T>(p: *const T) -> Result<(), TeStatus> {
    if p.is_null() {
        set_error("null pointer argument".into());
        return Err(TeStatus::NullPointer);
    }
    Ok(())
}

/// Copies the last error message (NUL-terminated, truncated to `len`) into
/// `buf` and returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn te_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn te_params_new(
    kappa: f64,
    a: f64,
    b: f64,
    gamma1: f64,
    gamma2: f64,
    out: *mut *mut TeParams,
) -> TeStatus {
    guard(|| {
        non_null(out)?;
        let p = check(ModelParams::new(kappa, a, b, gamma1, gamma2))?;
        *out = Box::into_raw(Box::new(TeParams(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from `te_params_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn te_params_free(p: *mut TeParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn te_derive_constants(p: *const TeParams, out: *mut TeConstants) -> TeStatus {
    guard(|| {
        non_null(p)?;
        non_null(out)?;
        let c = check(derive_constants(&(*p).0))?;
        *out = TeConstants { beta0: c.beta0, beta1: c.beta1, beta2: c.beta2, a1: c.a1, a2: c.a2 };
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn te_char_roots(p: *const TeParams, r: f64, out: *mut TeRoots) -> TeStatus {
    guard(|| {
        non_null(p)?;
        non_null(out)?;
        let z = check(char_roots(&(*p).0, r))?;
        *out = TeRoots { lambda1: z.lambda1, lambda_r: z.lambda_r, lambda_i: z.lambda_i };
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn te_solution_multipliers(p: *const TeParams, r: f64, t: f64, out: *mut TeMultipliers) -> TeStatus {
    guard(|| {
        non_null(p)?;
        non_null(out)?;
        if !(t >= 0.0) {
            set_error(format!("time must be nonnegative, got {t}"));
            return Err(TeStatus::InvalidParameter);
        }
        let params = &(*p).0;
        let z = check(char_roots(params, r))?;
        let m = check(solution_multipliers(params, &z, t))?;
        *out = TeMultipliers { m_u0: m.m_u0, m_u1: m.m_u1, m_theta: m.m_theta };
        Ok(())
    })
}

/// Loads and validates a TOML scenario file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn te_scenario_load(path: *const c_char, out: *mut *mut TeScenario) -> TeStatus {
    guard(|| {
        non_null(path)?;
        non_null(out)?;
        let s = CStr::from_ptr(path).to_str().map_err(|e| {
            set_error(e.to_string());
            TeStatus::InvalidUtf8
        })?;
        let scn = check(Scenario::load(Path::new(s)))?;
        let engine = check(NormEngine::new(&scn))?;
        *out = Box::into_raw(Box::new(TeScenario { engine }));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from `te_scenario_load` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn te_scenario_free(s: *mut TeScenario) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Physical-space L2 norm at time `t`; `kind` is a `TeNormKind` value.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn te_scenario_norm(s: *const TeScenario, kind: i32, t: f64, out: *mut f64) -> TeStatus {
    guard(|| {
        non_null(s)?;
        non_null(out)?;
        let kind = match kind {
            x if x == TeNormKind::Solution as i32 => NormKind::Solution,
            x if x == TeNormKind::ErrorPhi as i32 => NormKind::ErrorPhi,
            x if x == TeNormKind::ErrorPhiPsi as i32 => NormKind::ErrorPhiPsi,
            x if x == TeNormKind::Phi as i32 => NormKind::Phi,
            x if x == TeNormKind::Psi as i32 => NormKind::Psi,
            other => {
                set_error(format!("unknown norm kind {other}"));
                return Err(TeStatus::InvalidParameter);
            }
        };
        *out = check((*s).engine.norm(kind, t))?.value;
        Ok(())
    })
}
