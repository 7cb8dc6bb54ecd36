//! C ABI for skewberger.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Every fallible call returns an `SbStatus` and
//! stores a message retrievable with [`sb_last_error`] on the calling thread.
//! Strings returned as `char *` are released with [`sb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use skewberger::curvature::skew_curvature_space_with;
use skewberger::linalg::{Arithmetic, SolveOptions};
use skewberger::registry::{emit_report, parse_spec, run_check, CheckOptions, CheckReport, Format, RepSpec};
use skewberger::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Semantic = 4,
    InvalidParameter = 5,
    ResourceLimit = 6,
    Construction = 7,
    /// The requested field was not computed.
    Unavailable = 8,
    Io = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbArithmetic {
    Auto = 0,
    Rational = 1,
    Modular = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SbOptions {
    pub arithmetic: SbArithmetic,
    /// Row cap per stage; 0 means none.
    pub max_rows: usize,
    pub timings: bool,
}

/// A parsed representation spec.
pub struct SbSpec(RepSpec);

/// The result of a full check.
pub struct SbReport(CheckReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SbStatus {
    match e {
        Error::Syntax { .. } => SbStatus::Syntax,
        Error::Semantic(_) => SbStatus::Semantic,
        Error::InvalidParameter(_) | Error::TooFewPrimes(_) | Error::PrimeDividesDenominator(_) => {
            SbStatus::InvalidParameter
        }
        Error::ResourceLimit { .. } => SbStatus::ResourceLimit,
        Error::Construction(_) => SbStatus::Construction,
        Error::Io(_) => SbStatus::Io,
        _ => SbStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), SbStatus>) -> SbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SbStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            SbStatus::Internal
        }
    }
}

fn fail(e: Error) -> SbStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(what: &str) -> SbStatus {
    set_error(format!("{what} is null"));
    SbStatus::NullPointer
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, SbStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        SbStatus::InvalidUtf8
    })
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, SbStatus> {
    p.as_mut().ok_or_else(|| null(what))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn solve_options(o: Option<&SbOptions>) -> SolveOptions {
    let mut s = SolveOptions::default();
    if let Some(o) = o {
        s.arithmetic = match o.arithmetic {
            SbArithmetic::Auto => Arithmetic::Auto,
            SbArithmetic::Rational => Arithmetic::Rational,
            SbArithmetic::Modular => Arithmetic::Modular,
        };
        s.max_rows = (o.max_rows > 0).then_some(o.max_rows);
    }
    s
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Defaults: automatic arithmetic, no row cap, no timings.
#[no_mangle]
pub extern "C" fn sb_options_default() -> SbOptions {
    SbOptions {
        arithmetic: SbArithmetic::Auto,
        max_rows: 0,
        timings: false,
    }
}

/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sb_spec_parse(text: *const c_char, out: *mut *mut SbSpec) -> SbStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let s = parse_spec(str_arg(text, "text")?).map_err(fail)?;
        *out = Box::into_raw(Box::new(SbSpec(s)));
        Ok(())
    })
}

/// # Safety
/// `spec` must come from [`sb_spec_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sb_spec_free(spec: *mut SbSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Canonical form of the spec, or null when `spec` is null.
///
/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sb_spec_canonical(spec: *const SbSpec) -> *mut c_char {
    spec.as_ref().map_or(ptr::null_mut(), |s| to_c_string(s.0.to_string()))
}

/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sb_spec_dim_v(spec: *const SbSpec) -> usize {
    spec.as_ref().map_or(0, |s| s.0.dim_v())
}

/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sb_spec_dim_g(spec: *const SbSpec) -> usize {
    spec.as_ref().map_or(0, |s| s.0.dim_g())
}

/// Dimension of the skew-curvature space alone.
///
/// # Safety
/// `spec` must be a live handle, `opts` null or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sb_curvature_dim(spec: *const SbSpec, opts: *const SbOptions, out: *mut usize) -> SbStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let spec = spec.as_ref().ok_or_else(|| null("spec"))?;
        let rep = spec.0.build().map_err(fail)?;
        let cs = skew_curvature_space_with(&rep, &solve_options(opts.as_ref())).map_err(fail)?;
        *out = cs.dim();
        Ok(())
    })
}

/// Runs every stage. A stage stopped by the row cap still yields a report
/// whose missing fields read as [`SbStatus::Unavailable`].
///
/// # Safety
/// `spec` must be a live handle, `opts` null or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sb_check(spec: *const SbSpec, opts: *const SbOptions, out: *mut *mut SbReport) -> SbStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let spec = spec.as_ref().ok_or_else(|| null("spec"))?;
        let o = opts.as_ref();
        let co = CheckOptions {
            solve: solve_options(o),
            timings: o.is_some_and(|o| o.timings),
            ..Default::default()
        };
        let r = run_check(&spec.0, &co).map_err(fail)?;
        *out = Box::into_raw(Box::new(SbReport(r)));
        Ok(())
    })
}

/// # Safety
/// `report` must come from [`sb_check`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sb_report_free(report: *mut SbReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

unsafe fn field<T: Copy>(
    report: *const SbReport,
    out: *mut T,
    name: &str,
    get: impl FnOnce(&CheckReport) -> Option<T>,
) -> SbStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        match get(&r.0) {
            Some(v) => {
                *out = v;
                Ok(())
            }
            None => {
                set_error(format!("{name} was not computed"));
                Err(SbStatus::Unavailable)
            }
        }
    })
}

/// # Safety
/// `report` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sb_report_dim_rbar(report: *const SbReport, out: *mut usize) -> SbStatus {
    field(report, out, "dimRbar", |r| r.dim_rbar)
}

/// # Safety
/// `report` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sb_report_dim_prolong1(report: *const SbReport, out: *mut usize) -> SbStatus {
    field(report, out, "dimProlong1", |r| r.dim_prolong1)
}

/// # Safety
/// `report` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sb_report_dim_h22(report: *const SbReport, out: *mut usize) -> SbStatus {
    field(report, out, "dimH22", |r| r.dim_h22)
}

/// # Safety
/// `report` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sb_report_is_skew_berger(report: *const SbReport, out: *mut bool) -> SbStatus {
    field(report, out, "isSkewBerger", |r| r.is_skew_berger)
}

/// Number of fields that differ from the registry expectation.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sb_report_delta_count(report: *const SbReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.expected_deltas.len())
}

/// Whether a resource cap stopped the run.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sb_report_aborted(report: *const SbReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.aborted.is_some())
}

/// The report as pretty JSON, or null on failure.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sb_report_json(report: *const SbReport) -> *mut c_char {
    let Some(r) = report.as_ref() else {
        null("report");
        return ptr::null_mut();
    };
    match emit_report(std::slice::from_ref(&r.0), true, Format::Json) {
        Ok(bytes) => to_c_string(String::from_utf8_lossy(&bytes).into_owned()),
        Err(e) => {
            fail(e);
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn sb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
