//! C ABI over `pderiv`.
//!
//! Integers cross the boundary as NUL-terminated strings: a decimal integer
//! or a standard form `a*p^(b*p^k)`. Every fallible call returns a
//! [`PdStatus`]; on failure [`pd_last_error_message`] describes it. Strings
//! handed out through `out` parameters are owned by the caller and released
//! with [`pd_string_free`]; handles are released with their `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use pderiv::antideriv::{count_anti_rational, ConstructionResult};
use pderiv::padic::{parse_value, Parsed};
use pderiv::{render, AntiSet, Error, IncProfile, OrbitClass, PValue, Prime};

/// Mirrors the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdStatus {
    Ok = 0,
    Internal = 1,
    InvalidInput = 2,
    TooLarge = 3,
    VerificationFailed = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdOrbitClass {
    Zero = 0,
    FixedPoint = 1,
    DivergesPositive = 2,
    DivergesNegative = 3,
}

/// Opaque increment profile.
pub struct PdIncProfile {
    inner: IncProfile,
}

/// Opaque set of integral anti-partial derivatives.
pub struct PdAntiSet {
    inner: AntiSet,
}

/// Opaque result of a prescribed-count construction.
pub struct PdConstruction {
    inner: ConstructionResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PdStatus {
    match e.exit_code() {
        2 => PdStatus::InvalidInput,
        3 => PdStatus::TooLarge,
        4 => PdStatus::VerificationFailed,
        _ => PdStatus::Internal,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Error>) -> PdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PdStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            PdStatus::Internal
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Error> {
    if s.is_null() {
        return Err(Error::InvalidInput(format!("{what} is NULL")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Error::InvalidInput(format!("{what} is not UTF-8")))
}

unsafe fn value(p: Prime, s: *const c_char) -> Result<PValue, Error> {
    parse_value(text(s, "value")?)?.to_pvalue(p)
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Error> {
    if out.is_null() {
        return Err(Error::InvalidInput("output pointer is NULL".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Error> {
    let c = CString::new(s).map_err(|_| Error::InvalidInput("interior NUL".into()))?;
    put(out, c.into_raw())
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, Error> {
    h.as_ref()
        .ok_or_else(|| Error::InvalidInput("handle is NULL".into()))
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next `pd_*` call on the same thread.
#[no_mangle]
pub extern "C" fn pd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn pd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Sets the size guard, in bits, for materialized integers (process-wide).
#[no_mangle]
pub extern "C" fn pd_set_max_bits(bits: u64) {
    pderiv::limits::set_max_bits(bits);
}

/// `D_p(x)`. The result is a decimal, or a standard form when it is too
/// large to print.
///
/// # Safety
/// `x` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_dp(p: u64, x: *const c_char, out: *mut *mut c_char) -> PdStatus {
    guard(|| {
        let p = Prime::new(p)?;
        let r = match parse_value(text(x, "x")?)? {
            Parsed::Int(v) => PValue::from_int(p, &pderiv::dp(p, &v)),
            form => form.to_pvalue(p)?.dp(),
        };
        put_string(out, render::text_value(&r))
    })
}

/// The full arithmetic derivative `D(x)`.
///
/// # Safety
/// `x` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_d_full(x: *const c_char, out: *mut *mut c_char) -> PdStatus {
    guard(|| {
        let v = parse_value(text(x, "x")?)?.to_int()?;
        put_string(out, pderiv::d_full(&v)?.to_string())
    })
}

/// `ord_p(x)` as a decimal, or `"inf"` for zero.
///
/// # Safety
/// `x` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_ord(p: u64, x: *const c_char, out: *mut *mut c_char) -> PdStatus {
    guard(|| {
        let p = Prime::new(p)?;
        put_string(out, value(p, x)?.ord().to_string())
    })
}

/// # Safety
/// `x` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_period(p: u64, x: *const c_char, out: *mut u64) -> PdStatus {
    guard(|| {
        let p = Prime::new(p)?;
        put(out, pderiv::period(p, &value(p, x)?))
    })
}

/// # Safety
/// `x` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_classify(p: u64, x: *const c_char, out: *mut PdOrbitClass) -> PdStatus {
    guard(|| {
        let p = Prime::new(p)?;
        let class = match pderiv::classify(p, &value(p, x)?) {
            OrbitClass::Zero => PdOrbitClass::Zero,
            OrbitClass::FixedPoint { .. } => PdOrbitClass::FixedPoint,
            OrbitClass::DivergesPositive => PdOrbitClass::DivergesPositive,
            OrbitClass::DivergesNegative => PdOrbitClass::DivergesNegative,
        };
        put(out, class)
    })
}

/// `ℓ` for the run lengths `runs[0..len]`, as a decimal.
///
/// # Safety
/// `runs` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_reverse_construct(
    p: u64,
    runs: *const u64,
    len: usize,
    out: *mut *mut c_char,
) -> PdStatus {
    guard(|| {
        let p = Prime::new(p)?;
        if runs.is_null() {
            return Err(Error::InvalidInput("runs is NULL".into()));
        }
        let runs = std::slice::from_raw_parts(runs, len);
        put_string(out, pderiv::reverse_construct(p, runs)?.to_string())
    })
}

/// # Safety
/// `y` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_count_anti(p: u64, y: *const c_char, out: *mut usize) -> PdStatus {
    guard(|| {
        let p = Prime::new(p)?;
        put(out, pderiv::count_anti(p, &value(p, y)?)?)
    })
}

/// # Safety
/// `y` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_count_anti_rational(
    p: u64,
    y: *const c_char,
    out: *mut usize,
) -> PdStatus {
    guard(|| {
        let p = Prime::new(p)?;
        put(out, count_anti_rational(p, &value(p, y)?)?)
    })
}

/// # Safety
/// `ell` must be a valid C string (a natural number ≥ p); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_inc_profile_new(
    p: u64,
    ell: *const c_char,
    out: *mut *mut PdIncProfile,
) -> PdStatus {
    guard(|| {
        let p = Prime::new(p)?;
        let ell = match parse_value(text(ell, "ell")?)? {
            Parsed::Int(v) => v
                .to_biguint()
                .ok_or_else(|| Error::InvalidInput(format!("ell = {v} is negative")))?,
            Parsed::Form(_) => {
                return Err(Error::InvalidInput(
                    "ell must be a decimal natural number".into(),
                ))
            }
        };
        let inner = pderiv::inc_profile(p, &ell)?;
        put(out, Box::into_raw(Box::new(PdIncProfile { inner })))
    })
}

/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pd_inc_profile_free(h: *mut PdIncProfile) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pd_inc_profile_period(h: *const PdIncProfile) -> u64 {
    h.as_ref().map_or(0, |h| h.inner.period)
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pd_inc_profile_prefix_len(h: *const PdIncProfile) -> u64 {
    h.as_ref().map_or(0, |h| h.inner.prefix_len)
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pd_inc_profile_segment_count(h: *const PdIncProfile) -> usize {
    h.as_ref().map_or(0, |h| h.inner.segments.len())
}

/// Segment `index`: its `k`, head term `k − 1` and number of `−1`s.
///
/// # Safety
/// `h` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_inc_profile_segment(
    h: *const PdIncProfile,
    index: usize,
    k: *mut u64,
    head: *mut i64,
    run_len: *mut u64,
) -> PdStatus {
    guard(|| {
        let h = handle(h)?;
        let s = h
            .inner
            .segments
            .get(index)
            .ok_or_else(|| Error::InvalidInput(format!("segment {index} out of range")))?;
        put(k, s.k)?;
        put(head, s.head)?;
        put(run_len, s.run_len)
    })
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_inc_profile_to_json(
    h: *const PdIncProfile,
    out: *mut *mut c_char,
) -> PdStatus {
    guard(|| {
        let json = pderiv::render::json_profile(&handle(h)?.inner);
        put_string(out, json.to_string())
    })
}

/// # Safety
/// `y` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_anti_set_new(
    p: u64,
    y: *const c_char,
    out: *mut *mut PdAntiSet,
) -> PdStatus {
    guard(|| {
        let p = Prime::new(p)?;
        let inner = pderiv::anti_derivatives(p, &value(p, y)?)?;
        put(out, Box::into_raw(Box::new(PdAntiSet { inner })))
    })
}

/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pd_anti_set_free(h: *mut PdAntiSet) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pd_anti_set_count(h: *const PdAntiSet) -> usize {
    h.as_ref().map_or(0, |h| h.inner.count())
}

/// Member `index` (ascending `k`) in standard form `a*p^(b*p^k)`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_anti_set_member(
    h: *const PdAntiSet,
    index: usize,
    out: *mut *mut c_char,
) -> PdStatus {
    guard(|| {
        let m = handle(h)?
            .inner
            .members
            .get(index)
            .ok_or_else(|| Error::InvalidInput(format!("member {index} out of range")))?;
        put_string(out, m.to_string())
    })
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_anti_set_to_json(
    h: *const PdAntiSet,
    out: *mut *mut c_char,
) -> PdStatus {
    guard(|| put_string(out, render::json_anti_set(&handle(h)?.inner).to_string()))
}

/// `x0` whose image has exactly `n` anti-partial derivatives, verified.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_construct(
    p: u64,
    n: u64,
    k0: u64,
    out: *mut *mut PdConstruction,
) -> PdStatus {
    guard(|| {
        let inner = pderiv::antideriv::construct_with_n_antis(Prime::new(p)?, n, k0)?;
        put(out, Box::into_raw(Box::new(PdConstruction { inner })))
    })
}

/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pd_construction_free(h: *mut PdConstruction) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pd_construction_count(h: *const PdConstruction) -> usize {
    h.as_ref().map_or(0, |h| h.inner.count)
}

/// `x0` in standard form.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_construction_x0(
    h: *const PdConstruction,
    out: *mut *mut c_char,
) -> PdStatus {
    guard(|| put_string(out, handle(h)?.inner.x0.to_string()))
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pd_construction_to_json(
    h: *const PdConstruction,
    out: *mut *mut c_char,
) -> PdStatus {
    guard(|| {
        put_string(
            out,
            render::json_construction(&handle(h)?.inner).to_string(),
        )
    })
}
