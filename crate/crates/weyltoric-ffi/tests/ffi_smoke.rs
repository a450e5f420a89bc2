//! In-process exercise of the C ABI: handle lifecycle, round trips, algebra
//! calls, realization lookup, the transform, suite runs, and error paths.

use std::ffi::{CStr, CString};

use weyltoric_ffi::*;

unsafe fn text_of(el: *const WtElement) -> String {
    let mut s: *mut libc::c_char = std::ptr::null_mut();
    assert_eq!(wt_element_to_text(el, &mut s), WtStatus::Ok);
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    wt_string_free(s);
    out
}

unsafe fn parse(text: &str, rank: usize, laurent: bool) -> *mut WtElement {
    let c = CString::new(text).unwrap();
    let mut el: *mut WtElement = std::ptr::null_mut();
    assert_eq!(
        wt_element_parse(c.as_ptr(), rank, laurent, &mut el),
        WtStatus::Ok
    );
    el
}

#[test]
fn canonical_commutation_through_the_abi() {
    unsafe {
        let p1 = parse("1 * Q^[0,0,0] P^[1,0,0]", 2, false);
        let q1 = parse("1 * Q^[1,0,0] P^[0,0,0]", 2, false);
        let mut c: *mut WtElement = std::ptr::null_mut();
        assert_eq!(wt_element_commutator(p1, q1, &mut c), WtStatus::Ok);
        assert_eq!(text_of(c), "1 * Q^[0,0,0] P^[0,0,0]");
        assert_eq!(wt_element_num_terms(c), 1);
        assert_eq!(wt_element_rank(c), 2);
        let mut d = 0i64;
        assert_eq!(wt_element_degree(c, &mut d), WtStatus::Ok);
        assert_eq!(d, 0);
        wt_element_free(c);
        wt_element_free(p1);
        wt_element_free(q1);
    }
}

#[test]
fn text_and_json_round_trips() {
    unsafe {
        let el = parse("-3/2 * Q^[2,0,-1] P^[0,1,0] + 1/4 * Q^[0,0,0] P^[0,0,0]", 2, true);
        let text = text_of(el);
        let back = parse(&text, 2, true);
        assert_eq!(text_of(back), text);

        let mut js: *mut libc::c_char = std::ptr::null_mut();
        assert_eq!(wt_element_to_json(el, &mut js), WtStatus::Ok);
        let mut from_json: *mut WtElement = std::ptr::null_mut();
        assert_eq!(wt_element_from_json(js, &mut from_json), WtStatus::Ok);
        assert_eq!(text_of(from_json), text);
        wt_string_free(js);
        wt_element_free(el);
        wt_element_free(back);
        wt_element_free(from_json);
    }
}

#[test]
fn membership_and_transform() {
    unsafe {
        // P_1 P_2 Q_3^{-1} is singular-ring only, and has no transform
        let laurent = parse("1 * Q^[0,0,-1] P^[1,1,0]", 2, true);
        let mut member = false;
        assert_eq!(
            wt_element_is_member(laurent, WtRingKind::SingularX, 0, &mut member),
            WtStatus::Ok
        );
        assert!(member);
        assert_eq!(
            wt_element_is_member(laurent, WtRingKind::ResolutionX, 0, &mut member),
            WtStatus::Ok
        );
        assert!(!member);
        let mut image: *mut WtElement = std::ptr::null_mut();
        assert_eq!(
            wt_fourier_transform(laurent, &mut image),
            WtStatus::LaurentViolation
        );
        wt_element_free(laurent);

        // F(-Q_3 P_3) = Q_3 P_3 + 1
        let z_ell = parse("-1 * Q^[0,0,1] P^[0,0,1]", 2, false);
        assert_eq!(wt_fourier_transform(z_ell, &mut image), WtStatus::Ok);
        assert_eq!(
            text_of(image),
            "1 * Q^[0,0,0] P^[0,0,0] + 1 * Q^[0,0,1] P^[0,0,1]"
        );
        wt_element_free(z_ell);
        wt_element_free(image);
    }
}

#[test]
fn realization_lookup() {
    unsafe {
        let mut r: *mut WtRealization = std::ptr::null_mut();
        assert_eq!(wt_realization_new(2, 0, &mut r), WtStatus::Ok);
        let sym = CString::new("e2").unwrap();
        let mut e2: *mut WtElement = std::ptr::null_mut();
        assert_eq!(wt_realization_element(r, sym.as_ptr(), &mut e2), WtStatus::Ok);
        assert_eq!(text_of(e2), "1/2 * Q^[0,0,-1] P^[0,2,0]");
        wt_element_free(e2);

        let bad = CString::new("e9x").unwrap();
        let mut out: *mut WtElement = std::ptr::null_mut();
        assert_eq!(
            wt_realization_element(r, bad.as_ptr(), &mut out),
            WtStatus::ParseError
        );
        let mut msg: *mut libc::c_char = std::ptr::null_mut();
        assert_eq!(wt_last_error(&mut msg), WtStatus::Ok);
        assert!(CStr::from_ptr(msg).to_str().unwrap().contains("e9x"));
        wt_string_free(msg);
        wt_realization_free(r);

        let mut small: *mut WtRealization = std::ptr::null_mut();
        assert_eq!(wt_realization_new(1, 0, &mut small), WtStatus::InvalidArgument);
    }
}

#[test]
fn rank_mismatch_and_null_arguments() {
    unsafe {
        let a = parse("1 * Q^[1,0] P^[0,0]", 1, false);
        let b = parse("1 * Q^[1,0,0] P^[0,0,0]", 2, false);
        let mut out: *mut WtElement = std::ptr::null_mut();
        assert_eq!(wt_element_product(a, b, &mut out), WtStatus::RankMismatch);
        assert_eq!(
            wt_element_product(std::ptr::null(), b, &mut out),
            WtStatus::NullArgument
        );
        wt_element_free(a);
        wt_element_free(b);
    }
}

#[test]
fn suite_run_through_the_abi() {
    unsafe {
        let config = CString::new(
            serde_json::json!({
                "n": 2,
                "ells": [-2],
                "suites": ["module-t0neg"],
                "format": "json",
            })
            .to_string(),
        )
        .unwrap();
        let mut manifest: *mut libc::c_char = std::ptr::null_mut();
        assert_eq!(wt_run_suites(config.as_ptr(), &mut manifest), WtStatus::Ok);
        let text = CStr::from_ptr(manifest).to_str().unwrap();
        let value: serde_json::Value = serde_json::from_str(text).unwrap();
        assert_eq!(value["pass"], serde_json::json!(true));
        wt_string_free(manifest);

        // odd twist for the isomorphism suite is a configuration error
        let bad = CString::new(
            serde_json::json!({
                "n": 2,
                "ells": [1],
                "suites": ["fourier-iso"],
            })
            .to_string(),
        )
        .unwrap();
        let mut out: *mut libc::c_char = std::ptr::null_mut();
        assert_eq!(
            wt_run_suites(bad.as_ptr(), &mut out),
            WtStatus::InvalidArgument
        );
    }
}

#[test]
fn generated_header_exists() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("weyltoric.h");
    let text = std::fs::read_to_string(header).unwrap();
    assert!(text.contains("wt_element_product"));
    assert!(text.contains("WtStatus"));
    assert!(text.contains("WEYLTORIC_H"));
}
