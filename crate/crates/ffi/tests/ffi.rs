use std::ffi::{CStr, CString};
use std::ptr;

use otx_ffi::*;

fn parse(text: &str) -> *mut OtxPattern {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { otx_pattern_parse(c.as_ptr(), &mut out) };
    assert_eq!(status, OtxStatus::Ok, "parse {text}");
    out
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { otx_string_free(s) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(otx_last_error()) }
        .to_str()
        .unwrap()
        .to_owned()
}

#[test]
fn pattern_round_trip() {
    let p = parse("[2,3,1]");
    unsafe {
        assert_eq!(otx_pattern_period(p), 3);
        let mut buf = [0usize; 3];
        assert_eq!(otx_pattern_images(p, buf.as_mut_ptr(), 3), OtxStatus::Ok);
        assert_eq!(buf, [2, 3, 1]);
        assert_eq!(
            otx_pattern_images(p, buf.as_mut_ptr(), 2),
            OtxStatus::InvalidArgument
        );
        let (mut num, mut den) = (0u64, 0u64);
        assert_eq!(
            otx_pattern_over_rotation(p, &mut num, &mut den),
            OtxStatus::Ok
        );
        assert_eq!((num, den), (1, 3));
        let mut m = 0usize;
        otx_pattern_modality(p, &mut m);
        assert_eq!(m, 1);
        let (mut conv, mut green) = (false, false);
        otx_pattern_is_convergent(p, &mut conv);
        otx_pattern_is_green(p, &mut green);
        assert!(conv && green);
        otx_pattern_free(p);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut out = ptr::null_mut();
    let cases = [
        ("2 2", OtxStatus::NotAPermutation),
        ("2 1 4 3", OtxStatus::NotCyclic),
        ("1", OtxStatus::PeriodTooSmall),
        ("2 x 1", OtxStatus::Parse),
    ];
    for (text, expected) in cases {
        let c = CString::new(text).unwrap();
        assert_eq!(
            unsafe { otx_pattern_parse(c.as_ptr(), &mut out) },
            expected,
            "{text}"
        );
        assert!(!last_error().is_empty());
    }
    assert_eq!(
        unsafe { otx_pattern_parse(ptr::null(), &mut out) },
        OtxStatus::NullPointer
    );
    assert_eq!(unsafe { otx_pattern_period(ptr::null()) }, 0);
    let images = [3usize, 1, 2];
    assert_eq!(
        unsafe { otx_pattern_from_images(images.as_ptr(), 3, &mut out) },
        OtxStatus::Ok
    );
    unsafe { otx_pattern_free(out) };
    unsafe { otx_pattern_free(ptr::null_mut()) };
}

#[test]
fn verify_and_analyze() {
    let p = parse("2 3 1");
    let q = parse("3 1 4 5 2");
    unsafe {
        let mut v = OtxVerdict::RefutedWitness;
        let mut json = ptr::null_mut();
        assert_eq!(otx_verify_overtwist(p, 2, &mut v, &mut json), OtxStatus::Ok);
        assert_eq!(v, OtxVerdict::PassedBounded);
        assert_eq!(take_string(json), r#"{"status":"PassedBounded","depth":2}"#);
        assert_eq!(
            otx_verify_overtwist(q, 3, &mut v, ptr::null_mut()),
            OtxStatus::Ok
        );
        assert_eq!(v, OtxVerdict::RefutedNecessary);
        assert_eq!(
            otx_verify_overtwist(p, 0, &mut v, ptr::null_mut()),
            OtxStatus::InvalidArgument
        );

        let mut out = ptr::null_mut();
        assert_eq!(otx_analyze_json(p, &mut out), OtxStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(report["orn"], "1/3");
        assert_eq!(report["concordant_pieces"], 3);
        otx_pattern_free(p);
        otx_pattern_free(q);
    }
}

#[test]
fn iet_export() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(otx_catalog_gamma(3, 11, 3, &mut g), OtxStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(otx_iet_json(g, true, &mut out), OtxStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!((json["n"].as_u64(), json["k"].as_u64()), (Some(4), Some(2)));
        assert_eq!(json["signed_perm"], serde_json::json!([2, -4, -1, 3]));
        otx_pattern_free(g);

        let bad = parse("3 1 4 5 2");
        assert_eq!(otx_iet_json(bad, true, &mut out), OtxStatus::NonConvergent);
        assert_eq!(otx_iet_json(bad, false, &mut out), OtxStatus::Ok);
        take_string(out);
        otx_pattern_free(bad);

        assert_eq!(otx_catalog_gamma(2, 4, 0, &mut g), OtxStatus::InvalidId);
    }
}

#[test]
fn sharkovsky_comparison() {
    assert_eq!(otx_sharkovsky_cmp(3, 5), 1);
    assert_eq!(otx_sharkovsky_cmp(1, 2), -1);
    assert_eq!(otx_sharkovsky_cmp(6, 6), 0);
    assert_eq!(otx_sharkovsky_cmp(0, 6), -2);
}

#[test]
fn header_declares_the_api() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/otx.h")).unwrap();
    for name in [
        "otx_pattern_parse",
        "otx_pattern_from_images",
        "otx_pattern_free",
        "otx_verify_overtwist",
        "otx_iet_json",
        "otx_string_free",
        "otx_last_error",
        "typedef struct OtxPattern OtxPattern",
        "OTX_STATUS_NOT_CYCLIC = 5",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
