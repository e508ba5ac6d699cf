use std::ffi::{CStr, CString};
use std::ptr;

use affine_index_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(aip_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    aip_string_free(s);
    out
}

unsafe fn parse(s: &str) -> *mut AipCode {
    let mut code = ptr::null_mut();
    assert_eq!(aip_code_parse(cstr(s).as_ptr(), &mut code), AipStatus::Ok);
    code
}

unsafe fn poly_text(p: *const AipPolynomial) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(aip_polynomial_to_string(p, &mut s), AipStatus::Ok);
    take(s)
}

#[test]
fn code_round_trip() {
    unsafe {
        let code = parse("O1+  O2+ U1+ U2+");
        let mut s = ptr::null_mut();
        assert_eq!(aip_code_to_string(code, &mut s), AipStatus::Ok);
        assert_eq!(take(s), "O1+ O2+ U1+ U2+");

        let mut w = 0;
        assert_eq!(aip_code_writhe(code, &mut w), AipStatus::Ok);
        assert_eq!(w, 2);
        let mut n = 0;
        assert_eq!(aip_code_num_components(code, &mut n), AipStatus::Ok);
        assert_eq!(n, 1);

        let mut m = ptr::null_mut();
        assert_eq!(aip_code_mirror(code, &mut m), AipStatus::Ok);
        assert_eq!(aip_code_writhe(m, &mut w), AipStatus::Ok);
        assert_eq!(w, -2);
        let mut r = ptr::null_mut();
        assert_eq!(aip_code_reverse(code, &mut r), AipStatus::Ok);
        let mut c = ptr::null_mut();
        assert_eq!(aip_code_canonicalize(r, &mut c), AipStatus::Ok);
        assert_eq!(aip_code_to_string(c, &mut s), AipStatus::Ok);
        assert!(!take(s).is_empty());

        for h in [code, m, r, c] {
            aip_code_free(h);
        }
    }
}

#[test]
fn polynomial_terms() {
    unsafe {
        let code = parse("O1+ O2+ U1+ U2+");
        let mut p = ptr::null_mut();
        assert_eq!(aip_polynomial(code, &mut p), AipStatus::Ok);
        assert_eq!(poly_text(p), "t^-1 - 2 + t");
        let mut n = 0;
        assert_eq!(aip_polynomial_num_terms(p, &mut n), AipStatus::Ok);
        assert_eq!(n, 3);
        let mut terms = Vec::new();
        for i in 0..n {
            let (mut e, mut c) = (0, 0);
            assert_eq!(aip_polynomial_term(p, i, &mut e, &mut c), AipStatus::Ok);
            terms.push((e, c));
        }
        assert_eq!(terms, vec![(-1, 1), (0, -2), (1, 1)]);
        let (mut e, mut c) = (0, 0);
        assert_eq!(
            aip_polynomial_term(p, 3, &mut e, &mut c),
            AipStatus::InvalidArgument
        );
        aip_polynomial_free(p);

        let (mut num, mut den) = (0, 0);
        assert_eq!(aip_vassiliev(code, 4, &mut num, &mut den), AipStatus::Ok);
        assert_eq!((num, den), (1, 12));
        assert_eq!(
            aip_vassiliev(code, 0, &mut num, &mut den),
            AipStatus::InvalidArgument
        );
        aip_code_free(code);
    }
}

#[test]
fn link_polynomial_offsets() {
    unsafe {
        let hopf = parse("O1+ U2+ ; U1+ O2+");
        let mut p = ptr::null_mut();
        assert_eq!(
            aip_polynomial(hopf, &mut p),
            AipStatus::InvalidArgument,
            "{}",
            last_error()
        );
        let offsets = [0i64, 0];
        assert_eq!(
            aip_link_polynomial(hopf, offsets.as_ptr(), 2, &mut p),
            AipStatus::Ok,
            "{}",
            last_error()
        );
        aip_polynomial_free(p);
        assert_eq!(
            aip_link_polynomial(hopf, ptr::null(), 2, &mut p),
            AipStatus::InvalidArgument
        );
        aip_code_free(hopf);
    }
}

#[test]
fn status_codes() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(
            aip_code_parse(cstr("O1+ O1+").as_ptr(), &mut code),
            AipStatus::Parse
        );
        assert!(!last_error().is_empty());
        assert!(code.is_null());
        assert_eq!(
            aip_code_parse(cstr("X1+").as_ptr(), &mut code),
            AipStatus::Parse
        );
        assert_eq!(
            aip_code_parse(ptr::null(), &mut code),
            AipStatus::InvalidArgument
        );
        assert_eq!(
            aip_code_parse(cstr("O1+ U1+").as_ptr(), ptr::null_mut()),
            AipStatus::InvalidArgument
        );

        let mut w = 0;
        assert_eq!(
            aip_code_writhe(ptr::null(), &mut w),
            AipStatus::InvalidArgument
        );

        // Single-crossing two-component link: unbalanced, so no coloring exists.
        let link = parse("O1+ ; U1+");
        let offsets = [0i64, 0];
        let mut p = ptr::null_mut();
        assert_eq!(
            aip_link_polynomial(link, offsets.as_ptr(), 2, &mut p),
            AipStatus::Uncolorable
        );
        aip_code_free(link);

        let ok = parse("O1+ U1+");
        assert_eq!(aip_code_writhe(ok, &mut w), AipStatus::Ok);
        assert!(last_error().is_empty());
        aip_code_free(ok);

        aip_code_free(ptr::null_mut());
        aip_polynomial_free(ptr::null_mut());
        aip_biquandle_free(ptr::null_mut());
        aip_string_free(ptr::null_mut());
    }
}

#[test]
fn biquandles() {
    unsafe {
        let mut b = ptr::null_mut();
        assert_eq!(
            aip_biquandle_affine(3, 1, 0, 0, 1, 0, 0, &mut b),
            AipStatus::Ok
        );
        let (mut pre, mut flat) = (false, false);
        assert_eq!(aip_biquandle_check(b, &mut pre, &mut flat), AipStatus::Ok);
        assert!(pre && flat);
        let mut count = 0;
        assert_eq!(
            aip_biquandle_count_colorings(b, cstr("R1 R2 L1 L2").as_ptr(), &mut count),
            AipStatus::Ok,
            "{}",
            last_error()
        );
        assert_eq!(count, 3);
        aip_biquandle_free(b);

        assert_eq!(
            aip_biquandle_parse(cstr("3 1 0 0 1 0 0").as_ptr(), &mut b),
            AipStatus::Ok
        );
        aip_biquandle_free(b);
        assert_eq!(
            aip_biquandle_parse(cstr("nonsense").as_ptr(), &mut b),
            AipStatus::Parse
        );
        assert_eq!(
            aip_biquandle_affine(0, 1, 0, 0, 1, 0, 0, &mut b),
            AipStatus::InvalidArgument
        );
    }
}

#[test]
fn flat_certificate() {
    unsafe {
        let mut certified = true;
        assert_eq!(
            aip_flat_certificate(cstr("L1 R1").as_ptr(), &mut certified),
            AipStatus::Ok
        );
        assert!(!certified);
        assert_eq!(
            aip_flat_certificate(cstr("L1 L2 L3 R1 R3 R2").as_ptr(), &mut certified),
            AipStatus::Ok
        );
        assert!(certified);
        assert_eq!(
            aip_flat_certificate(cstr("L1 ; R1").as_ptr(), &mut certified),
            AipStatus::InvalidArgument
        );
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/affine_index.h");
    let source = include_str!("../src/lib.rs");
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 20);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing");
    }
    assert!(header.contains("AIP_STATUS_UNCOLORABLE = 3"));
    assert!(header.contains("typedef struct AipCode AipCode;"));
}
