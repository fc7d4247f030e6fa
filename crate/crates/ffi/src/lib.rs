//! C ABI for qtrace.
//!
//! Every fallible call returns a [`QtStatus`]; on failure the message is
//! available from [`qt_last_error`] until the next call on the same thread.
//! Series and reports are opaque handles released with their `_free` function.
//! Strings returned by the library are released with [`qt_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;
use num_complex::Complex64;
use qtrace::fock::{trace_gh, Twist};
use qtrace::modforms::{eisenstein_e, eta_series, q_series_q, RootOfUnity};
use qtrace::series::{EvalPoint, QSeries, SeriesJson};
use qtrace::sl2::SL2Matrix;
use qtrace::suites::{criterion_samples, run_suite, trace_transform};
use qtrace::{Error, VerificationReport};

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotInvertible = 3,
    OutsideDomain = 4,
    Unsupported = 5,
    BudgetExceeded = 6,
    UnknownSuite = 7,
    Panic = 8,
}

/// Opaque exact q-series.
pub struct QtSeries(QSeries);

/// Opaque verification report.
pub struct QtReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> QtStatus {
    match e {
        Error::NotInvertible | Error::ZeroDivision => QtStatus::NotInvertible,
        Error::OutsideUpperHalfPlane(_)
        | Error::OutsideConvergenceRegion
        | Error::NotAbsolutelyConvergent(_)
        | Error::DegenerateSample(_) => QtStatus::OutsideDomain,
        Error::UnsupportedPair(..)
        | Error::UndefinedAtTrivialPair(_)
        | Error::InvalidDimension(_) => QtStatus::Unsupported,
        Error::BudgetExceeded(_) => QtStatus::BudgetExceeded,
        Error::UnknownSuite(_) => QtStatus::UnknownSuite,
        _ => QtStatus::InvalidArgument,
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Error>) -> QtStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QtStatus::Ok,
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            QtStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(Error::Precondition(format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Error::Parse(format!("{what} is not valid UTF-8")))
}

unsafe fn series_ref<'a>(p: *const QtSeries) -> Result<&'a QSeries, Error> {
    p.as_ref()
        .map(|s| &s.0)
        .ok_or_else(|| Error::Precondition("series handle is null".into()))
}

fn root(j: i64, m: u32) -> Result<RootOfUnity, Error> {
    if m == 0 {
        return Err(Error::Parse("root of unity order must be positive".into()));
    }
    Ok(RootOfUnity::new(j, m))
}

unsafe fn put_series(out: *mut *mut QtSeries, s: QSeries) {
    *out = Box::into_raw(Box::new(QtSeries(s)));
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

macro_rules! check_out {
    ($out:expr) => {
        if $out.is_null() {
            set_error("output pointer is null");
            return QtStatus::NullPointer;
        }
    };
}

/// Message of the last failed call on this thread, or NULL.
///
/// The pointer stays valid until the next qtrace call on this thread.
#[no_mangle]
pub extern "C" fn qt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qt_series_free(s: *mut QtSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Normalised Eisenstein series E_k to order `order`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qt_series_eisenstein(
    k: u32,
    order: u64,
    out: *mut *mut QtSeries,
) -> QtStatus {
    check_out!(out);
    guard(|| {
        put_series(out, eisenstein_e(k, order)?);
        Ok(())
    })
}

/// Q_k(μ, λ) with μ = e(mu_j/mu_m), λ = e(lambda_j/lambda_m).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qt_series_q(
    k: u32,
    mu_j: i64,
    mu_m: u32,
    lambda_j: i64,
    lambda_m: u32,
    order: u64,
    out: *mut *mut QtSeries,
) -> QtStatus {
    check_out!(out);
    guard(|| {
        let s = q_series_q(k, root(mu_j, mu_m)?, root(lambda_j, lambda_m)?, order)?;
        put_series(out, s);
        Ok(())
    })
}

/// Dedekind η to order `order`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qt_series_eta(order: u64, out: *mut *mut QtSeries) -> QtStatus {
    check_out!(out);
    guard(|| {
        put_series(out, eta_series(order));
        Ok(())
    })
}

/// Trace function T(1, (x, y)) for l fermions; x, y are "1", "sigma", "g" or "gsigma".
///
/// # Safety
/// `x` and `y` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qt_series_trace(
    x: *const c_char,
    y: *const c_char,
    l: u32,
    order: u64,
    out: *mut *mut QtSeries,
) -> QtStatus {
    check_out!(out);
    guard(|| {
        let x: Twist = read_str(x, "x")?.parse()?;
        let y: Twist = read_str(y, "y")?.parse()?;
        put_series(out, trace_gh(x, y, l, order)?);
        Ok(())
    })
}

/// Parses the canonical JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qt_series_from_json(
    json: *const c_char,
    out: *mut *mut QtSeries,
) -> QtStatus {
    check_out!(out);
    guard(|| {
        let text = read_str(json, "json")?;
        let j: SeriesJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        put_series(out, QSeries::from_json(&j)?);
        Ok(())
    })
}

/// Canonical JSON form, or NULL on failure. Free with [`qt_string_free`].
///
/// # Safety
/// `s` must be a live series handle.
#[no_mangle]
pub unsafe extern "C" fn qt_series_to_json(s: *const QtSeries) -> *mut c_char {
    let mut text = None;
    let status = guard(|| {
        let j = serde_json::to_string(&series_ref(s)?.to_json())
            .map_err(|e| Error::Parse(e.to_string()))?;
        text = Some(j);
        Ok(())
    });
    match (status, text) {
        (QtStatus::Ok, Some(t)) => into_c_string(t),
        _ => ptr::null_mut(),
    }
}

/// Human-readable form, or NULL on failure. Free with [`qt_string_free`].
///
/// # Safety
/// `s` must be a live series handle.
#[no_mangle]
pub unsafe extern "C" fn qt_series_to_string(s: *const QtSeries) -> *mut c_char {
    match series_ref(s) {
        Ok(s) => into_c_string(s.to_string()),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

unsafe fn binary(
    a: *const QtSeries,
    b: *const QtSeries,
    out: *mut *mut QtSeries,
    op: fn(&QSeries, &QSeries) -> QSeries,
) -> QtStatus {
    check_out!(out);
    guard(|| {
        let r = op(series_ref(a)?, series_ref(b)?);
        put_series(out, r);
        Ok(())
    })
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qt_series_add(
    a: *const QtSeries,
    b: *const QtSeries,
    out: *mut *mut QtSeries,
) -> QtStatus {
    binary(a, b, out, QSeries::add)
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qt_series_sub(
    a: *const QtSeries,
    b: *const QtSeries,
    out: *mut *mut QtSeries,
) -> QtStatus {
    binary(a, b, out, QSeries::sub)
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qt_series_mul(
    a: *const QtSeries,
    b: *const QtSeries,
    out: *mut *mut QtSeries,
) -> QtStatus {
    binary(a, b, out, QSeries::mul)
}

/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qt_series_invert(a: *const QtSeries, out: *mut *mut QtSeries) -> QtStatus {
    check_out!(out);
    guard(|| {
        let r = series_ref(a)?.invert()?;
        put_series(out, r);
        Ok(())
    })
}

/// 1 if the two series agree up to their common precision, 0 otherwise or on error.
///
/// # Safety
/// `a`, `b` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn qt_series_equal(a: *const QtSeries, b: *const QtSeries) -> bool {
    matches!((series_ref(a), series_ref(b)), (Ok(a), Ok(b)) if a == b)
}

/// Evaluates at τ = re + i·im with a bound on the omitted tail.
///
/// # Safety
/// `s` must be a live handle; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qt_series_eval(
    s: *const QtSeries,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
    out_tail: *mut f64,
) -> QtStatus {
    check_out!(out_re);
    check_out!(out_im);
    check_out!(out_tail);
    guard(|| {
        let v = series_ref(s)?.eval(EvalPoint::new(Complex64::new(re, im))?);
        *out_re = v.value.re;
        *out_im = v.value.im;
        *out_tail = v.tail_bound;
        Ok(())
    })
}

/// Runs a named suite. `out_json` (optional) receives the JSON result.
///
/// # Safety
/// `name` must be a NUL-terminated string, `out_pass` valid, `out_json` valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn qt_verify_suite(
    name: *const c_char,
    out_pass: *mut bool,
    out_json: *mut *mut c_char,
) -> QtStatus {
    check_out!(out_pass);
    guard(|| {
        let r = run_suite(read_str(name, "name")?)?;
        *out_pass = r.pass;
        if !out_json.is_null() {
            *out_json = into_c_string(r.to_json().to_string());
        }
        Ok(())
    })
}

/// Checks T(1,(x,y))(γτ) against T(1,(x,y)γ)(τ) with γ = (a b; c d).
///
/// # Safety
/// `x`, `y` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn qt_transform(
    x: *const c_char,
    y: *const c_char,
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    l: u32,
    weight: f64,
    tol: f64,
    out: *mut *mut QtReport,
) -> QtStatus {
    check_out!(out);
    guard(|| {
        let x: Twist = read_str(x, "x")?.parse()?;
        let y: Twist = read_str(y, "y")?.parse()?;
        let g = SL2Matrix::new(a, b, c, d)?;
        let r = trace_transform(x, y, l, &g, weight, &criterion_samples(), tol)?;
        *out = Box::into_raw(Box::new(QtReport(r)));
        Ok(())
    })
}

/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qt_report_pass(r: *const QtReport) -> bool {
    r.as_ref().is_some_and(|r| r.0.pass)
}

/// Measured constant; returns NullPointer if the report has none.
///
/// # Safety
/// `r` must be a live report handle and the outputs valid.
#[no_mangle]
pub unsafe extern "C" fn qt_report_constant(
    r: *const QtReport,
    out_re: *mut f64,
    out_im: *mut f64,
) -> QtStatus {
    check_out!(out_re);
    check_out!(out_im);
    guard(|| {
        let r = r
            .as_ref()
            .ok_or_else(|| Error::Precondition("report handle is null".into()))?;
        let c =
            r.0.constant
                .ok_or_else(|| Error::Precondition("report has no constant".into()))?;
        *out_re = c.re;
        *out_im = c.im;
        Ok(())
    })
}

/// Residual of a numeric report, or NaN.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qt_report_residual(r: *const QtReport) -> f64 {
    r.as_ref().and_then(|r| r.0.residual).unwrap_or(f64::NAN)
}

/// JSON form of the report. Free with [`qt_string_free`].
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qt_report_to_json(r: *const QtReport) -> *mut c_char {
    match r.as_ref() {
        Some(r) => into_c_string(r.0.to_json().to_string()),
        None => {
            set_error("report handle is null");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `r` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qt_report_free(r: *mut QtReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
