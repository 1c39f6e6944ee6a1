//! C interface to `moufang-forge`.
//!
//! Handles are opaque and owned by the caller once returned; release them with
//! the matching `_free` function. Every fallible call returns a
//! [`ForgeStatus`] and records a message readable through
//! [`forge_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use moufang_forge::extension::{build_table, ExtensionSpec};
use moufang_forge::io::{export_table, parse_pair, parse_table, RawPair, TableFormat};
use moufang_forge::loops::LoopTable;
use moufang_forge::pair::{verify_construction_pair, ConstructionPair};
use moufang_forge::ForgeError;

/// Parsed pair data, not necessarily a valid construction pair.
pub struct ForgePair(RawPair);

/// A validated loop table.
pub struct ForgeLoop(LoopTable);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForgeStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Structural = 4,
    Validation = 5,
    IllDefined = 6,
    Resource = 7,
    Precondition = 8,
    OutOfRange = 9,
    Io = 10,
    Internal = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForgeFormat {
    Text = 0,
    Json = 1,
    Gap = 2,
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

fn status_of(e: &ForgeError) -> ForgeStatus {
    match e {
        ForgeError::Structural(_) => ForgeStatus::Structural,
        ForgeError::Validation(_) => ForgeStatus::Validation,
        ForgeError::IllDefined(_) => ForgeStatus::IllDefined,
        ForgeError::Resource(_) => ForgeStatus::Resource,
        ForgeError::Precondition(_) => ForgeStatus::Precondition,
        ForgeError::Internal(_) => ForgeStatus::Internal,
        ForgeError::Parse(_) => ForgeStatus::Parse,
        ForgeError::Io(_) => ForgeStatus::Io,
    }
}

type Body<'a> = Box<dyn FnOnce() -> Result<(), (ForgeStatus, String)> + 'a>;

fn guard(body: Body<'_>) -> ForgeStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ForgeStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ForgeStatus::Panic
        }
    }
}

fn forge_err(e: ForgeError) -> (ForgeStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (ForgeStatus, String) {
    (ForgeStatus::NullArgument, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (ForgeStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (ForgeStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn forge_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a pair file. The pair is not checked against the axioms.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn forge_pair_from_json(json: *const c_char, out: *mut *mut ForgePair) -> ForgeStatus {
    guard(Box::new(move || {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let raw = parse_pair(text).map_err(forge_err)?;
        *out = Box::into_raw(Box::new(ForgePair(raw)));
        Ok(())
    }))
}

/// Checks C1 to C3 and the map properties; the outcome goes to `holds`.
///
/// # Safety
/// `pair` must come from [`forge_pair_from_json`]; `holds` must be valid.
#[no_mangle]
pub unsafe extern "C" fn forge_pair_verify(pair: *const ForgePair, holds: *mut bool) -> ForgeStatus {
    guard(Box::new(move || {
        let p = pair.as_ref().ok_or_else(|| null("pair"))?;
        if holds.is_null() {
            return Err(null("holds"));
        }
        let v = verify_construction_pair(&p.0.group, &p.0.g, &p.0.gamma).map_err(forge_err)?;
        *holds = v.holds;
        if let Some(w) = v.first_failure() {
            set_error(format!("{} fails at {:?}", w.axiom, w.elements));
        }
        Ok(())
    }))
}

/// # Safety
/// `pair` must come from [`forge_pair_from_json`] or be null.
#[no_mangle]
pub unsafe extern "C" fn forge_pair_free(pair: *mut ForgePair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Builds the loop on `C_n × X`.
///
/// # Safety
/// `pair` must come from [`forge_pair_from_json`]; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn forge_loop_build(pair: *const ForgePair, cyclic: u64, out: *mut *mut ForgeLoop) -> ForgeStatus {
    guard(Box::new(move || {
        let p = pair.as_ref().ok_or_else(|| null("pair"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cp = ConstructionPair::new(p.0.g.clone(), p.0.gamma.clone()).map_err(forge_err)?;
        let spec = ExtensionSpec::new(cyclic, cp).map_err(forge_err)?;
        let t = build_table(&spec).map_err(forge_err)?;
        *out = Box::into_raw(Box::new(ForgeLoop(t)));
        Ok(())
    }))
}

/// Reads a table in any supported format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn forge_loop_from_text(text: *const c_char, out: *mut *mut ForgeLoop) -> ForgeStatus {
    guard(Box::new(move || {
        if out.is_null() {
            return Err(null("out"));
        }
        let t = parse_table(read_str(text, "text")?).map_err(forge_err)?;
        *out = Box::into_raw(Box::new(ForgeLoop(t)));
        Ok(())
    }))
}

/// Order of the loop, or 0 for a null handle.
///
/// # Safety
/// `lp` must be a live loop handle or null.
#[no_mangle]
pub unsafe extern "C" fn forge_loop_order(lp: *const ForgeLoop) -> usize {
    lp.as_ref().map_or(0, |l| l.0.order())
}

/// # Safety
/// `lp` must be a live loop handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn forge_loop_mul(lp: *const ForgeLoop, a: usize, b: usize, out: *mut usize) -> ForgeStatus {
    guard(Box::new(move || {
        let l = lp.as_ref().ok_or_else(|| null("loop"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let n = l.0.order();
        if a >= n || b >= n {
            return Err((ForgeStatus::OutOfRange, format!("element index out of range for order {n}")));
        }
        *out = l.0.mul(a, b);
        Ok(())
    }))
}

/// Exhaustive check of the four defining Moufang identities.
///
/// # Safety
/// `lp` must be a live loop handle and `holds` valid.
#[no_mangle]
pub unsafe extern "C" fn forge_loop_check_moufang(lp: *const ForgeLoop, holds: *mut bool) -> ForgeStatus {
    guard(Box::new(move || {
        let l = lp.as_ref().ok_or_else(|| null("loop"))?;
        if holds.is_null() {
            return Err(null("holds"));
        }
        let report = l.0.check_moufang();
        *holds = report.all_hold();
        if let Some(r) = report.identities.iter().find(|r| r.witness.is_some()) {
            set_error(format!("{} fails at {:?}", r.identity, r.witness.unwrap_or_default()));
        }
        Ok(())
    }))
}

/// Serializes the table; release the string with [`forge_string_free`].
///
/// # Safety
/// `lp` must be a live loop handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn forge_loop_export(lp: *const ForgeLoop, format: ForgeFormat, out: *mut *mut c_char) -> ForgeStatus {
    guard(Box::new(move || {
        let l = lp.as_ref().ok_or_else(|| null("loop"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let fmt = match format {
            ForgeFormat::Text => TableFormat::Text,
            ForgeFormat::Json => TableFormat::Json,
            ForgeFormat::Gap => TableFormat::Gap,
        };
        let s = CString::new(export_table(&l.0, fmt)).map_err(|e| (ForgeStatus::Internal, e.to_string()))?;
        *out = s.into_raw();
        Ok(())
    }))
}

/// # Safety
/// `lp` must be a loop handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn forge_loop_free(lp: *mut ForgeLoop) {
    if !lp.is_null() {
        drop(Box::from_raw(lp));
    }
}

/// # Safety
/// `s` must be a string returned by this library or null.
#[no_mangle]
pub unsafe extern "C" fn forge_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
