//! C interface to the regulator computations.
//!
//! Every function returns an [`AchowStatus`]. Strings handed back to the
//! caller are owned by the caller and must be released with
//! [`achow_string_free`]. The message of the last failing call on the current
//! thread is available through [`achow_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use achow::cli::{parse_file, ExitCode, Session};
use achow::cycles::{boundary_surface_with, CycleError};
use achow::forms::{check_omega_wedge_identity, check_poincare_lemma};
use achow::regulator::{regulator_cycle_with, RegulatorConvention, RegulatorValue};

/// Result codes; the first four agree with the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AchowStatus {
    Ok = 0,
    AssertionFailed = 1,
    InputError = 2,
    CapabilityLimit = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AchowConvention {
    Cyclic = 0,
    Alternating = 1,
}

impl From<AchowConvention> for RegulatorConvention {
    fn from(c: AchowConvention) -> Self {
        match c {
            AchowConvention::Cyclic => RegulatorConvention::Cyclic,
            AchowConvention::Alternating => RegulatorConvention::Alternating,
        }
    }
}

impl From<ExitCode> for AchowStatus {
    fn from(c: ExitCode) -> Self {
        match c {
            ExitCode::Ok => AchowStatus::Ok,
            ExitCode::AssertionFailed => AchowStatus::AssertionFailed,
            ExitCode::InputError => AchowStatus::InputError,
            ExitCode::CapabilityLimit => AchowStatus::CapabilityLimit,
        }
    }
}

/// A parsed cycle file.
pub struct AchowSession {
    inner: Session,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(AchowStatus);

impl From<CycleError> for Failure {
    fn from(e: CycleError) -> Self {
        set_error(e.to_string());
        Failure(ExitCode::of_error(&e).into())
    }
}

fn fail(status: AchowStatus, msg: impl Into<String>) -> Failure {
    set_error(msg);
    Failure(status)
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AchowStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AchowStatus::Ok,
        Ok(Err(Failure(s))) => s,
        Err(_) => {
            set_error("internal panic");
            AchowStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(AchowStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(AchowStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn session_arg<'a>(p: *const AchowSession) -> Result<&'a AchowSession, Failure> {
    p.as_ref().ok_or_else(|| fail(AchowStatus::NullPointer, "null session"))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(AchowStatus::NullPointer, "null output pointer"));
    }
    let c = CString::new(s).map_err(|_| fail(AchowStatus::InvalidUtf8, "interior NUL"))?;
    *out = c.into_raw();
    Ok(())
}

/// Parses the text of a cycle file into a new session stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn achow_session_parse(text: *const c_char, out: *mut *mut AchowSession) -> AchowStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(AchowStatus::NullPointer, "null output pointer"));
        }
        *out = ptr::null_mut();
        let text = str_arg(text)?;
        let inner = parse_file(text).map_err(|e| fail(AchowStatus::InputError, e.to_string()))?;
        *out = Box::into_raw(Box::new(AchowSession { inner }));
        Ok(())
    })
}

/// Adds user face parametrizations in the `[face NAME]` format.
///
/// # Safety
/// `session` must come from [`achow_session_parse`]; `text` must be a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn achow_session_add_faces(session: *mut AchowSession, text: *const c_char) -> AchowStatus {
    guard(|| {
        let s = session.as_mut().ok_or_else(|| fail(AchowStatus::NullPointer, "null session"))?;
        let text = str_arg(text)?;
        let faces = s.inner.parse_faces(text).map_err(|e| fail(AchowStatus::InputError, e.to_string()))?;
        s.inner.faces.extend(faces);
        Ok(())
    })
}

/// Releases a session. Null is ignored.
///
/// # Safety
/// `session` must come from [`achow_session_parse`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn achow_session_free(session: *mut AchowSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Regulator of the named cycle, written in canonical form to `*out`.
///
/// # Safety
/// Pointers must be valid; `name` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn achow_regulator(
    session: *const AchowSession,
    name: *const c_char,
    convention: AchowConvention,
    out: *mut *mut c_char,
) -> AchowStatus {
    guard(|| {
        let s = session_arg(session)?;
        let name = str_arg(name)?;
        if s.inner.lookup(name).is_none() {
            return Err(fail(AchowStatus::InputError, format!("unknown name '{name}'")));
        }
        if s.inner.surface(name).is_some() {
            return Err(fail(AchowStatus::InputError, format!("'{name}' is a surface")));
        }
        let z = s.inner.cycle(name)?;
        let v = regulator_cycle_with(&z, convention.into())?;
        put_string(out, v.render())
    })
}

/// Regulator of the boundary of the named surface. The canonical value is
/// written to `*out` when `out` is not null; the status is
/// `ACHOW_STATUS_ASSERTION_FAILED` when it is not zero.
///
/// # Safety
/// `session` and `name` must be valid; `out` may be null.
#[no_mangle]
pub unsafe extern "C" fn achow_verify_boundary(
    session: *const AchowSession,
    name: *const c_char,
    convention: AchowConvention,
    out: *mut *mut c_char,
) -> AchowStatus {
    guard(|| {
        let s = session_arg(session)?;
        let name = str_arg(name)?;
        let surface = s.inner.surface(name).ok_or_else(|| fail(AchowStatus::InputError, format!("'{name}' is not a surface")))?;
        let bd = boundary_surface_with(surface, &s.inner.user_faces(name))?;
        let v = if bd.is_empty() { RegulatorValue::zero(surface.dim() - 1) } else { regulator_cycle_with(&bd, convention.into())? };
        if !out.is_null() {
            put_string(out, v.render())?;
        }
        if v.is_zero() {
            Ok(())
        } else {
            Err(fail(AchowStatus::AssertionFailed, format!("R(boundary of {name}) = {}", v.render())))
        }
    })
}

/// Checks the wedge and residue identities of the cyclic forms for all
/// indices; the number of failing cases is stored in `*failures` when it is
/// not null.
///
/// # Safety
/// `failures` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn achow_check_identities(n: usize, m: u32, failures: *mut usize) -> AchowStatus {
    guard(|| {
        if n < 1 || m < 2 {
            return Err(fail(AchowStatus::InputError, "need n >= 1 and m >= 2"));
        }
        let mut bad = 0usize;
        for i in 1..=n + 1 {
            for l in 1..=n {
                let w = check_omega_wedge_identity(n, i, l, m).map_err(|e| fail(AchowStatus::InputError, e.to_string()))?;
                bad += usize::from(!w);
                for at_inf in [false, true] {
                    let p = check_poincare_lemma(n, i, at_inf, l, m)
                        .map_err(|e| fail(AchowStatus::InputError, e.to_string()))?;
                    bad += usize::from(!p);
                }
            }
        }
        if !failures.is_null() {
            *failures = bad;
        }
        if bad == 0 {
            Ok(())
        } else {
            Err(fail(AchowStatus::AssertionFailed, format!("{bad} identity cases fail")))
        }
    })
}

/// Message of the last failing call on this thread, or null. The pointer is
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn achow_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn achow_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
