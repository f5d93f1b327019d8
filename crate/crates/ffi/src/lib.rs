//! C interface to `finseries`.
//!
//! Series are opaque `FsSeries` handles released with `fs_series_free`.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and released with `fs_string_free`. Every function returns an `FsStatus`;
//! on failure `fs_last_error_message` describes the error on this thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use finseries::coeff::AnyRing;
use finseries::expr::{self, Context};
use finseries::finpf::{check_category, VerifyConfig};
use finseries::json as j;
use finseries::{GenSeries, Window};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Mismatch = 4,
    CheckFailed = 5,
    Panic = 6,
}

/// Opaque series handle.
pub struct FsSeries {
    inner: GenSeries<AnyRing>,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FsClassification {
    pub artinian: bool,
    pub noetherian: bool,
    pub narrow: bool,
    pub finite: bool,
    pub admitted: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior NUL"));
}

struct Fail(FsStatus, String);

impl Fail {
    fn invalid(e: impl ToString) -> Self {
        Fail(FsStatus::InvalidArgument, e.to_string())
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> FsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            FsStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error: invariant violated");
            FsStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(FsStatus::NullPointer, format!("`{name}` is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(FsStatus::InvalidUtf8, format!("`{name}` is not valid UTF-8")))
}

unsafe fn series_arg<'a>(p: *const FsSeries, name: &str) -> Result<&'a GenSeries<AnyRing>, Fail> {
    p.as_ref()
        .map(|s| &s.inner)
        .ok_or_else(|| Fail(FsStatus::NullPointer, format!("`{name}` is null")))
}

unsafe fn put_series(out: *mut *mut FsSeries, s: GenSeries<AnyRing>) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(FsStatus::NullPointer, "`out` is null".into()));
    }
    *out = Box::into_raw(Box::new(FsSeries { inner: s }));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(FsStatus::NullPointer, "`out` is null".into()));
    }
    *out = CString::new(s).map_err(Fail::invalid)?.into_raw();
    Ok(())
}

fn window(has_min: bool, min: i64, max: i64) -> Window {
    if has_min {
        Window::between(min, max)
    } else {
        Window::upto(max)
    }
}

/// Evaluates a series expression over `monoid` (a carrier name such as
/// `"nat"`) and `ring` (`"int"`, `"rat"`, `"mod:N"`, `"mat2"`).
/// `bound` tabulates `moebius` and must be at least 1 when it is used.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_series_from_expr(
    monoid: *const c_char,
    ring: *const c_char,
    expr: *const c_char,
    bound: i64,
    out: *mut *mut FsSeries,
) -> FsStatus {
    guard(|| {
        let monoid = j::carrier_from_str(str_arg(monoid, "monoid")?).map_err(Fail::invalid)?;
        let ring = AnyRing::parse(str_arg(ring, "ring")?).map_err(Fail::invalid)?;
        let ctx = Context {
            monoid,
            ring,
            window: Window::upto(bound),
            input: None,
        };
        let s = expr::evaluate(str_arg(expr, "expr")?, &ctx).map_err(Fail::invalid)?;
        put_series(out, s)
    })
}

/// Builds a series from its JSON description.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_series_from_json(json: *const c_char, out: *mut *mut FsSeries) -> FsStatus {
    guard(|| {
        let v = j::parse(str_arg(json, "json")?).map_err(Fail::invalid)?;
        let s = j::series_from_json(&v).map_err(Fail::invalid)?;
        put_series(out, s)
    })
}

fn mismatch(e: impl ToString) -> Fail {
    Fail(FsStatus::Mismatch, e.to_string())
}

/// `*out = a + b`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_series_add(a: *const FsSeries, b: *const FsSeries, out: *mut *mut FsSeries) -> FsStatus {
    guard(|| {
        let s = series_arg(a, "a")?.add(series_arg(b, "b")?).map_err(mismatch)?;
        put_series(out, s)
    })
}

/// `*out = a · b`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_series_mul(a: *const FsSeries, b: *const FsSeries, out: *mut *mut FsSeries) -> FsStatus {
    guard(|| {
        let s = series_arg(a, "a")?.mul(series_arg(b, "b")?).map_err(mismatch)?;
        put_series(out, s)
    })
}

/// `*out = -a`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_series_neg(a: *const FsSeries, out: *mut *mut FsSeries) -> FsStatus {
    guard(|| {
        let s = series_arg(a, "a")?.neg();
        put_series(out, s)
    })
}

/// The coefficient at `element` (textual form, e.g. `"3"`, `"1/2"`, `"xy"`).
///
/// # Safety
/// `s` must be a live handle; `element` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_series_coeff(s: *const FsSeries, element: *const c_char, out: *mut *mut c_char) -> FsStatus {
    guard(|| {
        let s = series_arg(s, "s")?;
        let m = s.monoid().parse_element(str_arg(element, "element")?).map_err(Fail::invalid)?;
        put_string(out, s.coeff(&m).to_string())
    })
}

/// Renders the terms of `s` inside the window `[min, max]` (or `≤ max` when
/// `has_min` is false).
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_series_render(
    s: *const FsSeries,
    has_min: bool,
    min: i64,
    max: i64,
    out: *mut *mut c_char,
) -> FsStatus {
    guard(|| {
        let s = series_arg(s, "s")?;
        if has_min && min > max {
            return Err(Fail::invalid("window minimum exceeds maximum"));
        }
        put_string(out, s.render(&window(has_min, min, max)))
    })
}

/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fs_series_free(s: *mut FsSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Classifies a descriptor (JSON) on a carrier (name or JSON object).
///
/// # Safety
/// Strings must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_classify(
    carrier: *const c_char,
    descriptor_json: *const c_char,
    out: *mut FsClassification,
) -> FsStatus {
    guard(|| {
        let m = j::carrier_from_str(str_arg(carrier, "carrier")?).map_err(Fail::invalid)?;
        let dv = j::parse(str_arg(descriptor_json, "descriptor_json")?).map_err(Fail::invalid)?;
        let d = j::descriptor_from_json(&m, &dv).map_err(Fail::invalid)?;
        let cls = m.classify(&d).map_err(mismatch)?;
        if out.is_null() {
            return Err(Fail(FsStatus::NullPointer, "`out` is null".into()));
        }
        *out = FsClassification {
            artinian: cls.artinian,
            noetherian: cls.noetherian,
            narrow: cls.narrow,
            finite: cls.finite,
            admitted: m.admits(&d).is_ok(),
        };
        Ok(())
    })
}

/// Runs the finite category checks on carriers of size ≤ `max_size` (at
/// most 3). Returns `CheckFailed` if any universal property fails.
///
/// # Safety
/// `verified` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fs_category_check(max_size: usize, seed: u64, verified: *mut bool) -> FsStatus {
    guard(|| {
        if max_size > 3 {
            return Err(Fail::invalid("max_size is limited to 3"));
        }
        let cfg = VerifyConfig {
            max_size,
            ..VerifyConfig::default()
        };
        let rep = check_category(&cfg, seed).map_err(Fail::invalid)?;
        if !verified.is_null() {
            *verified = rep.holds();
        }
        if rep.holds() {
            Ok(())
        } else {
            Err(Fail(FsStatus::CheckFailed, rep.failures.join("; ")))
        }
    })
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn fs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
