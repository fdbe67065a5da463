use std::ffi::{CStr, CString};
use std::ptr;

use mdcycle_ffi::*;

fn last_error() -> Option<String> {
    let p = mdc_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn to_json(cert: *const MdcCertificate) -> String {
    unsafe {
        let s = mdc_certificate_to_json(cert);
        assert!(!s.is_null());
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        mdc_string_free(s);
        text
    }
}

#[test]
fn theorem_mt_round_trip() {
    unsafe {
        let mut cert = ptr::null_mut();
        assert_eq!(mdc_certify_theorem_mt(2, 3, 0, &mut cert), MdcStatus::Ok);
        assert!(!cert.is_null());
        assert_eq!(mdc_certificate_m(cert), 7);
        assert_eq!(mdc_certificate_verify(cert), MdcStatus::Ok);
        assert!(last_error().is_none());

        let json = to_json(cert);
        assert!(json.contains("\"kind\": \"theorem-mt\""));
        let text = CString::new(json.clone()).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(mdc_certificate_from_json(text.as_ptr(), &mut back), MdcStatus::Ok);
        assert_eq!(to_json(back), json);
        assert_eq!(mdc_certificate_verify(back), MdcStatus::Ok);

        mdc_certificate_free(back);
        mdc_certificate_free(cert);
    }
}

#[test]
fn prop_p7_found_and_exhausted() {
    unsafe {
        let mut cert = ptr::null_mut();
        assert_eq!(mdc_certify_prop_p7(5, 5, 1, 200, &mut cert), MdcStatus::Ok);
        assert_eq!(mdc_certificate_m(cert), 6);
        assert_eq!(mdc_certificate_verify(cert), MdcStatus::Ok);
        mdc_certificate_free(cert);

        let mut none = ptr::null_mut();
        assert_eq!(mdc_certify_prop_p7(5, 5, 1, 5, &mut none), MdcStatus::NotFound);
        assert!(none.is_null());
        assert!(last_error().is_some());
    }
}

#[test]
fn invalid_parameters_set_message() {
    unsafe {
        let mut cert = ptr::null_mut();
        assert_eq!(mdc_certify_theorem_mt(2, 2, 0, &mut cert), MdcStatus::InvalidParameters);
        assert!(cert.is_null());
        assert!(!last_error().unwrap().is_empty());

        assert_eq!(mdc_certify_theorem_mt(2, 3, 0, &mut cert), MdcStatus::Ok);
        assert!(last_error().is_none());
        mdc_certificate_free(cert);
    }
}

#[test]
fn parse_errors() {
    unsafe {
        let mut cert = ptr::null_mut();
        let bad = CString::new("{\"kind\": \"theorem-mt\",").unwrap();
        assert_eq!(mdc_certificate_from_json(bad.as_ptr(), &mut cert), MdcStatus::ParseError);
        assert!(cert.is_null());
        assert!(last_error().unwrap().contains("line"));

        let invalid_utf8 = [0xffu8, 0xfe, 0];
        assert_eq!(
            mdc_certificate_from_json(invalid_utf8.as_ptr().cast(), &mut cert),
            MdcStatus::ParseError
        );
    }
}

#[test]
fn tampered_certificate_fails_verification() {
    unsafe {
        let mut cert = ptr::null_mut();
        assert_eq!(mdc_certify_theorem_mt(2, 3, 0, &mut cert), MdcStatus::Ok);
        let json = to_json(cert);
        mdc_certificate_free(cert);

        let tampered = json.replacen("\"15\"", "\"16\"", 1);
        assert_ne!(tampered, json);
        let text = CString::new(tampered).unwrap();
        let mut bad = ptr::null_mut();
        assert_eq!(mdc_certificate_from_json(text.as_ptr(), &mut bad), MdcStatus::Ok);
        assert_eq!(mdc_certificate_verify(bad), MdcStatus::NotFound);
        assert!(last_error().is_some());
        mdc_certificate_free(bad);
    }
}

#[test]
fn null_pointers() {
    unsafe {
        assert_eq!(mdc_certify_theorem_mt(2, 3, 0, ptr::null_mut()), MdcStatus::NullPointer);
        assert_eq!(mdc_certify_prop_p7(5, 5, 1, 10, ptr::null_mut()), MdcStatus::NullPointer);
        let mut cert = ptr::null_mut();
        assert_eq!(mdc_certificate_from_json(ptr::null(), &mut cert), MdcStatus::NullPointer);
        assert_eq!(mdc_certificate_verify(ptr::null()), MdcStatus::NullPointer);
        assert!(mdc_certificate_to_json(ptr::null()).is_null());
        assert_eq!(mdc_certificate_m(ptr::null()), 0);
        mdc_certificate_free(ptr::null_mut());
        mdc_string_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(mdc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/mdcycle.h");
    for name in [
        "mdc_certify_theorem_mt",
        "mdc_certify_prop_p7",
        "mdc_certificate_from_json",
        "mdc_certificate_to_json",
        "mdc_certificate_verify",
        "mdc_certificate_m",
        "mdc_certificate_free",
        "mdc_string_free",
        "mdc_last_error",
        "mdc_version",
        "typedef struct MdcCertificate MdcCertificate",
        "MDC_STATUS_PARSE_ERROR = 3",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
