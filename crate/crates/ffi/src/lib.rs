//! C ABI over the `silting` crate.
//!
//! Algebras and modules are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns a
//! [`SiltStatus`]; on failure [`silt_last_error`] describes the problem.
//! Strings handed out by the library must be released with
//! [`silt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use silting::algebra::BasedAlgebra;
use silting::complex::{is_presilting, ProjComplex};
use silting::decisions::{check_teo, is_n_tilting, is_tau_n_tilting, is_tau_nm_tilting};
use silting::harness::{run_suite, RunOptions, Suite};
use silting::homology::{ext, in_perp_tau_n, is_tau_n_rigid, min_resolution, tau_n};
use silting::io::{fixture, module_to_json, parse_algebra, parse_module, FieldSpec};
use silting::linalg::Field;
use silting::module::Module;
use silting::verdict::{Outcome, Verdict};

pub struct SiltAlgebra {
    inner: Arc<BasedAlgebra>,
}

pub struct SiltModule {
    inner: Module,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiltStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Precondition = 4,
    Computation = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiltOutcome {
    Holds = 0,
    Fails = 1,
    Inconclusive = 2,
}

impl From<Outcome> for SiltOutcome {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Holds => SiltOutcome::Holds,
            Outcome::Fails => SiltOutcome::Fails,
            Outcome::Inconclusive => SiltOutcome::Inconclusive,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiltProperty {
    TauRigid = 0,
    TauTilting = 1,
    NTilting = 2,
    Presilting = 3,
    Teo = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Error(SiltStatus, String);

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Error>) -> SiltStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SiltStatus::Ok
        }
        Ok(Err(Error(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SiltStatus::Panic
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Error {
    Error(SiltStatus::InvalidInput, e.to_string())
}

fn computation<E: std::fmt::Display>(e: E) -> Error {
    let msg = e.to_string();
    if msg.starts_with("precondition") {
        Error(SiltStatus::Precondition, msg)
    } else {
        Error(SiltStatus::Computation, msg)
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(Error(SiltStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Error(SiltStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn field_arg(p: *const c_char) -> Result<Option<Field>, Error> {
    if p.is_null() {
        return Ok(None);
    }
    let spec = FieldSpec::parse(text(p)?).map_err(input)?;
    Ok(Some(spec.field().map_err(input)?))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Error> {
    p.as_ref().ok_or_else(|| Error(SiltStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Error> {
    if out.is_null() {
        return Err(Error(SiltStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn silt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn silt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an algebra from its JSON description. `field` is null or `"Q"` /
/// `"Fp:<p>"` and overrides the field in the JSON.
///
/// # Safety
/// Pointers must be valid; `json` and `field` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn silt_algebra_from_json(json: *const c_char, field: *const c_char, out: *mut *mut SiltAlgebra) -> SiltStatus {
    guard(|| {
        let alg = parse_algebra(text(json)?, field_arg(field)?).map_err(input)?;
        put(out, Box::into_raw(Box::new(SiltAlgebra { inner: alg })))
    })
}

/// The algebra of a bundled fixture pack (`eximp`, `ejp1`, `radsq3`,
/// `gamma-eximp`); `field` defaults to `F_2`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn silt_algebra_from_fixture(name: *const c_char, field: *const c_char, out: *mut *mut SiltAlgebra) -> SiltStatus {
    guard(|| {
        let fx = fixture(text(name)?, field_arg(field)?).map_err(input)?;
        put(out, Box::into_raw(Box::new(SiltAlgebra { inner: fx.algebra })))
    })
}

/// # Safety
/// `alg` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn silt_algebra_free(alg: *mut SiltAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn silt_algebra_dim(alg: *const SiltAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.inner.dim())
}

/// # Safety
/// Pointers must be valid; `json` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn silt_module_from_json(alg: *const SiltAlgebra, json: *const c_char, out: *mut *mut SiltModule) -> SiltStatus {
    guard(|| {
        let a = deref(alg)?;
        let m = parse_module(text(json)?, &a.inner).map_err(input)?;
        put(out, Box::into_raw(Box::new(SiltModule { inner: m })))
    })
}

/// A named module of a fixture pack, or `P(v)`, `I(v)`, `S(v)`, `A`, over
/// the algebra `alg` (which must be that pack's algebra).
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn silt_module_from_fixture(
    alg: *const SiltAlgebra,
    pack: *const c_char,
    name: *const c_char,
    out: *mut *mut SiltModule,
) -> SiltStatus {
    guard(|| {
        let a = deref(alg)?;
        let fx = fixture(text(pack)?, Some(a.inner.field())).map_err(input)?;
        if *fx.algebra != *a.inner {
            return Err(Error(SiltStatus::InvalidInput, "the module lives over a different algebra".into()));
        }
        let m = fx.resolve(text(name)?).map_err(input)?.with_algebra(a.inner.clone());
        put(out, Box::into_raw(Box::new(SiltModule { inner: m })))
    })
}

/// # Safety
/// `m` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn silt_module_free(m: *mut SiltModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn silt_module_dim(m: *const SiltModule) -> usize {
    m.as_ref().map_or(0, |m| m.inner.dim())
}

/// # Safety
/// Pointers must be valid. The string is released with [`silt_string_free`].
#[no_mangle]
pub unsafe extern "C" fn silt_module_to_json(m: *const SiltModule, out: *mut *mut c_char) -> SiltStatus {
    guard(|| {
        let m = deref(m)?;
        put(out, owned_string(module_to_json(&m.inner)))
    })
}

/// `tau_n(M)` as a new module handle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn silt_tau_n(m: *const SiltModule, n: u32, out: *mut *mut SiltModule) -> SiltStatus {
    guard(|| {
        let m = deref(m)?;
        if n == 0 {
            return Err(Error(SiltStatus::Precondition, "n must be at least 1".into()));
        }
        put(
            out,
            Box::into_raw(Box::new(SiltModule {
                inner: tau_n(&m.inner, n as usize),
            })),
        )
    })
}

/// `dim Ext^i(M, N)`.
///
/// # Safety
/// Pointers must be valid; both modules over the same algebra.
#[no_mangle]
pub unsafe extern "C" fn silt_ext_dim(m: *const SiltModule, n: *const SiltModule, i: u32, out: *mut usize) -> SiltStatus {
    guard(|| {
        let (m, n) = (deref(m)?, deref(n)?);
        if *m.inner.algebra() != *n.inner.algebra() {
            return Err(Error(SiltStatus::InvalidInput, "modules over different algebras".into()));
        }
        put(out, ext(&m.inner, &n.inner, i as usize))
    })
}

/// Whether `N` lies in the `tau_n` perpendicular category of `M`.
///
/// # Safety
/// Pointers must be valid; both modules over the same algebra.
#[no_mangle]
pub unsafe extern "C" fn silt_in_perp(n_mod: *const SiltModule, m: *const SiltModule, n: u32, out: *mut bool) -> SiltStatus {
    guard(|| {
        let (x, m) = (deref(n_mod)?, deref(m)?);
        if *m.inner.algebra() != *x.inner.algebra() {
            return Err(Error(SiltStatus::InvalidInput, "modules over different algebras".into()));
        }
        put(out, in_perp_tau_n(&x.inner, &m.inner, n as usize))
    })
}

/// Decides `prop` for `M`. `m` is only read for `TauTilting`, where a
/// nonzero value asks for `tau_{n,m}`-tilting. `json` may be null;
/// otherwise it receives the verdict with its certificate.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn silt_check(
    module: *const SiltModule,
    prop: SiltProperty,
    n: u32,
    m: u32,
    outcome: *mut SiltOutcome,
    json: *mut *mut c_char,
) -> SiltStatus {
    guard(|| {
        let x = &deref(module)?.inner;
        if n == 0 {
            return Err(Error(SiltStatus::Precondition, "n must be at least 1".into()));
        }
        let n = n as usize;
        let (o, text) = match prop {
            SiltProperty::TauTilting if m > 0 => {
                let r = is_tau_nm_tilting(x, n, m as usize).map_err(computation)?;
                (r.outcome, serde_json::to_string(&r).map_err(computation)?)
            }
            _ => {
                let v: Verdict = match prop {
                    SiltProperty::TauRigid => is_tau_n_rigid(x, n),
                    SiltProperty::TauTilting => is_tau_n_tilting(x, n).map_err(computation)?,
                    SiltProperty::NTilting => is_n_tilting(x, n).map_err(computation)?,
                    SiltProperty::Presilting => is_presilting(&ProjComplex::from_resolution(&min_resolution(x, n), n)),
                    SiltProperty::Teo => check_teo(x, n).map_err(computation)?,
                };
                (v.outcome, serde_json::to_string(&v).map_err(computation)?)
            }
        };
        put(outcome, o.into())?;
        if !json.is_null() {
            json.write(owned_string(text));
        }
        Ok(())
    })
}

/// Runs a claim suite over the bundled fixtures and returns the report.
///
/// # Safety
/// Pointers must be valid; `field` may be null.
#[no_mangle]
pub unsafe extern "C" fn silt_verify(
    suite: *const c_char,
    field: *const c_char,
    outcome: *mut SiltOutcome,
    json: *mut *mut c_char,
) -> SiltStatus {
    guard(|| {
        let suite = Suite::parse(text(suite)?).map_err(input)?;
        let opts = RunOptions {
            field: field_arg(field)?.unwrap_or(Field::Prime(2)),
            ..RunOptions::default()
        };
        let report = run_suite(suite, &opts);
        put(outcome, report.outcome.into())?;
        if !json.is_null() {
            json.write(owned_string(serde_json::to_string(&report).map_err(computation)?));
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn errors_are_reported_per_thread() {
        let mut out = ptr::null_mut();
        let bad = CString::new("{").unwrap();
        let s = unsafe { silt_algebra_from_json(bad.as_ptr(), ptr::null(), &mut out) };
        assert_eq!(s, SiltStatus::InvalidInput);
        assert!(out.is_null());
        let msg = unsafe { CStr::from_ptr(silt_last_error()) }.to_str().unwrap();
        assert!(msg.contains("JSON"), "{msg}");
    }

    #[test]
    fn null_arguments() {
        let s = unsafe { silt_algebra_from_json(ptr::null(), ptr::null(), ptr::null_mut()) };
        assert_eq!(s, SiltStatus::NullPointer);
        unsafe {
            silt_algebra_free(ptr::null_mut());
            silt_module_free(ptr::null_mut());
            silt_string_free(ptr::null_mut());
        }
        assert_eq!(unsafe { silt_module_dim(ptr::null()) }, 0);
    }
}
