use std::ffi::{CStr, CString};
use std::ptr;

use isochrone_ffi::*;

fn parse(text: &str) -> *mut IsoSystem {
    let text = CString::new(text).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { iso_system_parse(text.as_ptr(), &mut s) }, IsoStatus::Ok);
    assert!(!s.is_null());
    s
}

fn last_error() -> String {
    let p = iso_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn counterexample_round_trip() {
    let q = CString::new("y^3 - 3*x*y^2 + 2*x^2*y").unwrap();
    let one = CString::new("1").unwrap();
    let a = [one.as_ptr(), one.as_ptr()];
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(iso_system_factored(q.as_ptr(), a.as_ptr(), 2, &mut s), IsoStatus::Ok);
        let mut center = false;
        assert_eq!(iso_is_center(s, &mut center), IsoStatus::Ok);
        assert!(center);
        let mut nu = 0;
        assert_eq!(iso_nu(s, &mut nu), IsoStatus::Ok);
        assert_eq!(nu, 1);
        let mut rho = 0.0;
        assert_eq!(iso_boundary_radius(s, 0.0, &mut rho), IsoStatus::Ok);
        assert!((rho - 0.44598766).abs() < 1e-6);
        assert_eq!(iso_return_map(s, 0.2, 1e-12, &mut rho), IsoStatus::Ok);
        assert!((rho - 0.2).abs() < 1e-9);
        let h = iso_system_to_string(s);
        assert!(CStr::from_ptr(h).to_str().unwrap().contains("y^5"));
        iso_string_free(h);
        iso_system_free(s);
    }
}

#[test]
fn analyze_returns_versioned_json() {
    let s = parse("Q = \"x*y\"\na = [1]\n[settings]\ngrid = 16\n");
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(iso_analyze_json(s, &mut json), IsoStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap();
        assert!(text.contains("\"report_version\": 1"));
        iso_string_free(json);
        iso_system_free(s);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let bad = CString::new("Q = \"x^2").unwrap();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(iso_system_parse(bad.as_ptr(), &mut s), IsoStatus::Parse);
        assert!(s.is_null());
        assert!(last_error().contains("TOML"));
        assert_eq!(iso_system_parse(ptr::null(), &mut s), IsoStatus::NullPointer);

        let s = parse(r#"{"Q": "x^2", "a": [1]}"#);
        let mut nu = 0;
        assert_eq!(iso_nu(s, &mut nu), IsoStatus::NotACenter);
        assert_eq!(iso_nu(s, ptr::null_mut()), IsoStatus::NotACenter);
        iso_system_free(s);

        let s = parse(r#"{"H": "x + x*y^2"}"#);
        let mut c = false;
        assert_eq!(iso_is_center(s, &mut c), IsoStatus::NotFactored);
        iso_system_free(s);
        iso_system_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/isochrone.h")).unwrap();
    for name in [
        "typedef struct IsoSystem IsoSystem",
        "iso_system_parse",
        "iso_system_factored",
        "iso_system_free",
        "iso_analyze_json",
        "iso_boundary_radius",
        "ISO_STATUS_NOT_A_CENTER",
        "iso_last_error",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
