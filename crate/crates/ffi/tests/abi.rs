use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use mlcoh_ffi::*;
use serde_json::Value;

const E1: &str = include_str!("../../core/instances/e1.inst");

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn parse(text: &str) -> *mut MlcohInstance {
    let src = c(text);
    let mut h = ptr::null_mut();
    let status = unsafe { mlcoh_instance_parse(src.as_ptr(), &mut h) };
    assert_eq!(status, MlcohStatus::Ok);
    assert!(!h.is_null());
    h
}

fn take(out: *mut c_char) -> Value {
    let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    unsafe { mlcoh_string_free(out) };
    serde_json::from_str(&s).unwrap()
}

fn last_error() -> String {
    let p = mlcoh_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn gdim_and_end_round_trip() {
    let h = parse(E1);
    let (by, sx, q) = (c("by"), c("Sx"), c("{2}"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mlcoh_gdim_json(h, by.as_ptr(), sx.as_ptr(), q.as_ptr(), &mut out) }, MlcohStatus::Ok);
    assert_eq!(take(out)["value"], "1");

    let (m, s) = (c("m"), c("S"));
    assert_eq!(unsafe { mlcoh_end_json(h, m.as_ptr(), s.as_ptr(), 2, &mut out) }, MlcohStatus::Ok);
    let v = take(out);
    assert_eq!(v["points"], serde_json::json!([[-1, -1]]));
    assert_eq!(v["directions"], serde_json::json!([1, 2]));

    let call = c("fdim(by, by, Sx)");
    assert_eq!(unsafe { mlcoh_task_json(h, call.as_ptr(), &mut out) }, MlcohStatus::Ok);
    assert_eq!(take(out), "1");
    unsafe { mlcoh_instance_free(h) };
}

#[test]
fn support_is_box_json() {
    let h = parse(E1);
    let (bx, s) = (c("bx"), c("S"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mlcoh_support_json(h, bx.as_ptr(), s.as_ptr(), 1, &mut out) }, MlcohStatus::Ok);
    let v = take(out);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["boxes"][0][0]["hi"], -1);
    assert!(v["boxes"][0][0]["lo"].is_null());
    unsafe { mlcoh_instance_free(h) };
}

#[test]
fn verify_reports_pass() {
    let h = parse(E1);
    let label = c("e1");
    let mut out = ptr::null_mut();
    let mut passed = -1;
    assert_eq!(unsafe { mlcoh_verify_json(h, label.as_ptr(), &mut out, &mut passed) }, MlcohStatus::Ok);
    assert_eq!(passed, 1);
    let v = take(out);
    assert_eq!(v["label"], "e1");
    assert!(v["lines"].as_array().unwrap().len() > 10);
    assert_ne!(unsafe { mlcoh_instance_hash(h) }, 0);
    unsafe { mlcoh_instance_free(h) };
}

#[test]
fn errors_map_to_codes() {
    let mut h = ptr::null_mut();
    let bad = c("[ring]\nvariables = x\ncolors = 1, 2\n");
    assert_eq!(unsafe { mlcoh_instance_parse(bad.as_ptr(), &mut h) }, MlcohStatus::ParseError);
    assert!(h.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { mlcoh_instance_parse(ptr::null(), &mut h) }, MlcohStatus::NullArgument);

    let h = parse(E1);
    let (bxy, nope, s) = (c("bxy"), c("nope"), c("S"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mlcoh_end_json(h, bxy.as_ptr(), s.as_ptr(), 1, &mut out) }, MlcohStatus::Undefined);
    assert_eq!(unsafe { mlcoh_end_json(h, nope.as_ptr(), s.as_ptr(), 1, &mut out) }, MlcohStatus::UnknownName);
    assert!(last_error().contains("nope"));

    let invalid = [0xffu8 as c_char, 0];
    assert_eq!(unsafe { mlcoh_end_json(h, invalid.as_ptr(), s.as_ptr(), 1, &mut out) }, MlcohStatus::InvalidUtf8);
    assert_eq!(unsafe { mlcoh_end_json(ptr::null(), s.as_ptr(), s.as_ptr(), 1, &mut out) }, MlcohStatus::NullArgument);
    unsafe { mlcoh_instance_free(h) };
    unsafe { mlcoh_instance_free(ptr::null_mut()) };
    unsafe { mlcoh_string_free(ptr::null_mut()) };
    assert_eq!(unsafe { mlcoh_instance_hash(ptr::null()) }, 0);
}
