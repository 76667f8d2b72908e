use std::ffi::{c_char, CStr, CString};
use std::ptr;

use kodaira_ffi::*;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { kd_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(kd_last_error_message()) }.to_str().unwrap().to_owned()
}

fn field(desc: &str) -> *mut KdField {
    let d = CString::new(desc).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { kd_field_parse(d.as_ptr(), &mut f) }, KdStatus::Ok);
    f
}

fn curve(f: *const KdField, coeffs: &str) -> Result<*mut KdCurve, KdStatus> {
    let c = CString::new(coeffs).unwrap();
    let mut out = ptr::null_mut();
    match unsafe { kd_curve_parse(f, c.as_ptr(), &mut out) } {
        KdStatus::Ok => Ok(out),
        s => Err(s),
    }
}

#[test]
fn local_data_roundtrip() {
    let f = field("qp:2");
    let c = curve(f, "0,0,0,-2,0").unwrap();
    let mut ld = ptr::null_mut();
    assert_eq!(unsafe { kd_run_tate(c, &mut ld) }, KdStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { kd_local_data_kodaira(ld, &mut s) }, KdStatus::Ok);
    assert_eq!(take_string(s), "III");
    assert_eq!(unsafe { kd_local_data_v_disc_min(ld) }, 9);
    assert_eq!(unsafe { kd_local_data_tamagawa(ld) }, 2);
    assert_eq!(unsafe { kd_local_data_eth(ld) }, 3);
    assert_eq!(unsafe { kd_local_data_to_json(ld, &mut s) }, KdStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["min_weighted_val"], "1/4");

    assert_eq!(unsafe { kd_predict_json(ld, 25, &mut s) }, KdStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["type_f"], "III");
    assert_eq!(v["v_disc_f"], 153);

    assert_eq!(unsafe { kd_predict_json(ld, 4, &mut s) }, KdStatus::Wild);
    assert!(last_error().contains("wild"));

    unsafe {
        kd_local_data_free(ld);
        kd_curve_free(c);
        kd_field_free(f);
    }
}

#[test]
fn classify_and_verify() {
    let f = field("eis:2:x^4+2");
    let c = curve(f, "0,0,0,-2,0").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { kd_classify_json(c, &mut s) }, KdStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["match"]["kodaira"], "I3*");
    assert_eq!(v["match"]["certificate"]["instar"]["n"], 3);
    unsafe { kd_curve_free(c) };
    unsafe { kd_field_free(f) };

    let f = field("fqt:5");
    let c = curve(f, "0,0,0,t^2,t^3").unwrap();
    assert_eq!(unsafe { kd_verify_json(c, 2, &mut s) }, KdStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["match"], true);
    assert_eq!(v["computed"]["kodaira"], "I0");
    assert_eq!(unsafe { kd_curve_to_string(c, &mut s) }, KdStatus::Ok);
    assert_eq!(take_string(s), "[0,0,0,t^2,t^3]");
    unsafe { kd_curve_free(c) };
    unsafe { kd_field_free(f) };
}

#[test]
fn error_statuses() {
    let bad = CString::new("qp:6").unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { kd_field_parse(bad.as_ptr(), &mut f) }, KdStatus::Parse);
    assert!(f.is_null());
    assert!(last_error().contains("not prime"));

    assert_eq!(unsafe { kd_field_parse(ptr::null(), &mut f) }, KdStatus::NullPointer);

    let f = field("qp:3");
    assert_eq!(curve(f, "0,0,0,0,0").unwrap_err(), KdStatus::Singular);
    assert_eq!(curve(f, "1,2").unwrap_err(), KdStatus::Parse);
    assert_eq!(curve(ptr::null(), "0,0,0,1,1").unwrap_err(), KdStatus::NullPointer);

    let short = CString::new("-1,0").unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { kd_curve_parse_short(f, short.as_ptr(), &mut c) }, KdStatus::Ok);
    assert_eq!(last_error(), "");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { kd_classify_json(c, &mut s) }, KdStatus::Unsupported);
    unsafe {
        kd_curve_free(c);
        kd_field_free(f);
        kd_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/kodaira.h")).unwrap();
    for name in [
        "kd_field_parse",
        "kd_curve_parse",
        "kd_run_tate",
        "kd_local_data_to_json",
        "kd_predict_json",
        "kd_verify_json",
        "kd_string_free",
        "kd_last_error_message",
        "typedef struct KdCurve KdCurve",
        "KD_STATUS_WILD",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
