//! C ABI over `mlcoh`.
//!
//! Instances are opaque handles. Every call returns an [`MlcohStatus`];
//! results come back as NUL-terminated JSON strings owned by the caller
//! and released with [`mlcoh_string_free`]. After a failure,
//! [`mlcoh_last_error_message`] describes it; the pointer stays valid
//! until the next failing call on the same thread. Panics never cross the
//! boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::{json, Value};

use mlcoh::instance_io::{parse_pattern, parse_task_call, Instance};
use mlcoh::invariants::ends::end_in;
use mlcoh::invariants::finiteness::g_in;
use mlcoh::invariants::verify::{run_task, verify_instance};
use mlcoh::invariants::CohomologyTable;
use mlcoh::render::json_boxes;
use mlcoh::Error;

/// Result codes; `MLCOH_STATUS_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlcohStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownName = 4,
    /// The requested invariant is not defined (no directions).
    Undefined = 5,
    PreconditionFailed = 6,
    Inconsistent = 7,
    Panic = 8,
}

/// A parsed instance file.
pub struct MlcohInstance {
    inner: Instance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

type Failure = (MlcohStatus, String);

fn status_of(e: &Error) -> MlcohStatus {
    match e {
        Error::Parse { .. } => MlcohStatus::ParseError,
        Error::UnknownName { .. } => MlcohStatus::UnknownName,
        Error::EndUndefined | Error::NoDirections => MlcohStatus::Undefined,
        Error::Inconsistent(_) => MlcohStatus::Inconsistent,
        _ => MlcohStatus::PreconditionFailed,
    }
}

fn fail(e: Error) -> Failure {
    (status_of(&e), e.to_string())
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs were replaced");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MlcohStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MlcohStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MlcohStatus::Panic
        }
    }
}

/// # Safety
/// `p` is NULL or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((MlcohStatus::NullArgument, format!("{what} is NULL")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (MlcohStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `h` is NULL or a handle from [`mlcoh_instance_parse`].
unsafe fn instance<'a>(h: *const MlcohInstance) -> Result<&'a Instance, Failure> {
    h.as_ref().map(|i| &i.inner).ok_or((MlcohStatus::NullArgument, "instance is NULL".into()))
}

/// # Safety
/// `ideal` and `module` are NULL or NUL-terminated.
unsafe fn table(inst: &Instance, ideal: *const c_char, module: *const c_char) -> Result<CohomologyTable, Failure> {
    let b = inst.ideal(text(ideal, "ideal")?).map_err(fail)?;
    let m = inst.module(text(module, "module")?).map_err(fail)?;
    Ok(CohomologyTable::new(&b, &m))
}

/// # Safety
/// `out` is NULL or writable.
unsafe fn emit(out: *mut *mut c_char, value: &Value) -> Result<(), Failure> {
    if out.is_null() {
        return Err((MlcohStatus::NullArgument, "output pointer is NULL".into()));
    }
    let s = CString::new(value.to_string()).expect("JSON text has no NUL");
    *out = s.into_raw();
    Ok(())
}

/// Parses instance text into a new handle stored in `*out`.
///
/// # Safety
/// `source` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mlcoh_instance_parse(source: *const c_char, out: *mut *mut MlcohInstance) -> MlcohStatus {
    guard(|| {
        if out.is_null() {
            return Err((MlcohStatus::NullArgument, "output pointer is NULL".into()));
        }
        let inst = Instance::parse(text(source, "source")?).map_err(fail)?;
        *out = Box::into_raw(Box::new(MlcohInstance { inner: inst }));
        Ok(())
    })
}

/// Releases a handle; NULL is ignored.
///
/// # Safety
/// `h` is NULL or an unreleased handle from [`mlcoh_instance_parse`].
#[no_mangle]
pub unsafe extern "C" fn mlcoh_instance_free(h: *mut MlcohInstance) {
    if !h.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(h))));
    }
}

/// 64-bit hash of the canonical serialization; 0 for NULL.
///
/// # Safety
/// `h` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mlcoh_instance_hash(h: *const MlcohInstance) -> u64 {
    h.as_ref().map_or(0, |i| i.inner.hash())
}

/// Coarse support of `H^i_b(M)` as `{"rank":…, "boxes":[…]}`.
///
/// # Safety
/// `h` is a live handle, the strings are NUL-terminated, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mlcoh_support_json(
    h: *const MlcohInstance,
    ideal: *const c_char,
    module: *const c_char,
    index: usize,
    out: *mut *mut c_char,
) -> MlcohStatus {
    guard(|| {
        let inst = instance(h)?;
        let t = table(inst, ideal, module)?;
        emit(out, &json_boxes(&t.coarse(index)))
    })
}

/// `end(H^i_b(M))` as `{"directions":[…], "points":[[…],…]}`.
///
/// # Safety
/// As for [`mlcoh_support_json`].
#[no_mangle]
pub unsafe extern "C" fn mlcoh_end_json(
    h: *const MlcohInstance,
    ideal: *const c_char,
    module: *const c_char,
    index: usize,
    out: *mut *mut c_char,
) -> MlcohStatus {
    guard(|| {
        let inst = instance(h)?;
        let t = table(inst, ideal, module)?;
        let end = end_in(&t, index).map_err(fail)?;
        let points: Vec<Vec<i64>> = end.points.to_points().unwrap_or_default().into_iter().map(|p| p.0).collect();
        let dirs: Vec<usize> = end.directions.iter().map(|c| c + 1).collect();
        emit(out, &json!({ "directions": dirs, "points": points }))
    })
}

/// `g^Q_b(M)` as `{"value": n | "inf", "witnesses": [...]}`; `q` is a
/// 1-based color set such as `{1,2}`.
///
/// # Safety
/// As for [`mlcoh_support_json`].
#[no_mangle]
pub unsafe extern "C" fn mlcoh_gdim_json(
    h: *const MlcohInstance,
    ideal: *const c_char,
    module: *const c_char,
    q: *const c_char,
    out: *mut *mut c_char,
) -> MlcohStatus {
    guard(|| {
        let inst = instance(h)?;
        let q = parse_pattern(text(q, "q")?, inst.grading.rank()).map_err(fail)?;
        let t = table(inst, ideal, module)?;
        let report = g_in(&t, &q).map_err(fail)?;
        let witnesses: Vec<String> = report.witnesses.iter().map(ToString::to_string).collect();
        emit(out, &json!({ "value": report.value.to_string(), "witnesses": witnesses }))
    })
}

/// Evaluates one task call such as `fdim(b, b, M)`; the rendered value
/// is returned as a JSON string.
///
/// # Safety
/// As for [`mlcoh_support_json`].
#[no_mangle]
pub unsafe extern "C" fn mlcoh_task_json(h: *const MlcohInstance, call: *const c_char, out: *mut *mut c_char) -> MlcohStatus {
    guard(|| {
        let inst = instance(h)?;
        let task = parse_task_call(text(call, "call")?).map_err(fail)?;
        emit(out, &json!(run_task(inst, &task).map_err(fail)?))
    })
}

/// Runs every check; `*passed` is 1 when none failed.
///
/// # Safety
/// As for [`mlcoh_support_json`]; `passed` is writable.
#[no_mangle]
pub unsafe extern "C" fn mlcoh_verify_json(
    h: *const MlcohInstance,
    label: *const c_char,
    out: *mut *mut c_char,
    passed: *mut i32,
) -> MlcohStatus {
    guard(|| {
        let inst = instance(h)?;
        if passed.is_null() {
            return Err((MlcohStatus::NullArgument, "passed is NULL".into()));
        }
        let report = verify_instance(inst, text(label, "label")?, &[]).map_err(fail)?;
        let value = serde_json::to_value(&report).expect("reports serialize");
        emit(out, &value)?;
        *passed = i32::from(report.passed());
        Ok(())
    })
}

/// Releases a string returned by this library; NULL is ignored.
///
/// # Safety
/// `s` is NULL or an unreleased string from this library.
#[no_mangle]
pub unsafe extern "C" fn mlcoh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or NULL.
#[no_mangle]
pub extern "C" fn mlcoh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
