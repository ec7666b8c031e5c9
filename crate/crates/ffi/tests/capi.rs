use std::ffi::{c_char, CStr, CString};
use std::ptr;

use serde_json::Value;
use tworb_ffi::*;

fn take_json(p: *mut c_char) -> Value {
    assert!(!p.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(p) }.to_str().unwrap()).unwrap();
    unsafe { tworb_string_free(p) };
    v
}

fn last_error() -> String {
    let p = tworb_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn rational(tau: i64) -> *mut TworbModel {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { tworb_model_rational(tau, &mut m) }, TworbStatus::Ok);
    m
}

#[test]
fn model_lifecycle_and_errors() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { tworb_model_rational(4, &mut m) }, TworbStatus::BadField);
    assert!(m.is_null());
    assert!(last_error().contains("square"));
    assert_eq!(unsafe { tworb_model_finite(6, &mut m) }, TworbStatus::BadField);
    assert_eq!(unsafe { tworb_model_finite(9, &mut m) }, TworbStatus::Ok);
    assert!(tworb_last_error_message().is_null());
    unsafe { tworb_model_free(m) };
    unsafe { tworb_model_free(ptr::null_mut()) };
    assert_eq!(unsafe { tworb_model_rational(2, ptr::null_mut()) }, TworbStatus::NullPointer);
}

#[test]
fn centralizer_matches_invariants() {
    let m = rational(2);
    for parts in [vec![3usize, 1], vec![2, 2], vec![1, 1, 1]] {
        let mut dim = 0usize;
        let st = unsafe { tworb_centralizer_dim(m, parts.as_ptr(), parts.len(), &mut dim) };
        assert_eq!(st, TworbStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { tworb_orbit_invariants_json(parts.as_ptr(), parts.len(), &mut out) }, TworbStatus::Ok);
        let v = take_json(out);
        assert_eq!(v["invariants"]["centralizer_dim_f"].as_u64().unwrap() as usize, dim);
    }
    let mut dim = 0usize;
    assert_eq!(unsafe { tworb_centralizer_dim(ptr::null(), [1usize].as_ptr(), 1, &mut dim) }, TworbStatus::NullPointer);
    unsafe { tworb_model_free(m) };
}

#[test]
fn induce_and_verify() {
    let m = rational(3);
    let levi = CString::new("2,1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tworb_induce_json(m, levi.as_ptr(), ptr::null(), 5, &mut out) }, TworbStatus::Ok);
    assert_eq!(take_json(out)["induction"]["induced_type"], serde_json::json!([2, 1]));

    let bad = CString::new("2,0").unwrap();
    assert_eq!(unsafe { tworb_induce_json(m, bad.as_ptr(), ptr::null(), 5, &mut out) }, TworbStatus::BadComposition);

    let suite = CString::new("identity").unwrap();
    assert_eq!(unsafe { tworb_verify_json(m, suite.as_ptr(), 4, 0, &mut out) }, TworbStatus::Ok);
    let v = take_json(out);
    assert_eq!(v["schema"], "tworb/1");
    assert_eq!(v["passed"], true);

    let suite = CString::new("bogus").unwrap();
    assert_eq!(unsafe { tworb_verify_json(m, suite.as_ptr(), 4, 0, &mut out) }, TworbStatus::InvalidArgument);
    unsafe { tworb_model_free(m) };
}

#[test]
fn zeta_json() {
    let parts = [2usize];
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tworb_zeta_json(parts.as_ptr(), 1, 2, &mut out) }, TworbStatus::Ok);
    let v = take_json(out);
    assert_eq!(v["half_dim"], 2);
    assert_eq!(v["series"].as_array().unwrap().len(), 3);
}
