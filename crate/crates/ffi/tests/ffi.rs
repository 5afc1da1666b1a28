use std::ffi::{CStr, CString};
use std::ptr;

use grouplogic_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = fg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn group_round_trip() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            fg_group_from_spec(c("sym 4").as_ptr(), &mut g),
            FgStatus::Ok
        );
        assert_eq!(fg_group_order(g), 24);
        let mut x = 0;
        assert_eq!(fg_group_mul(g, 1, 0, &mut x), FgStatus::Ok);
        assert_eq!(x, 1);
        let mut y = 0;
        assert_eq!(fg_group_inv(g, 1, &mut y), FgStatus::Ok);
        assert_eq!(fg_group_mul(g, 1, y, &mut x), FgStatus::Ok);
        assert_eq!(x, 0);
        assert_eq!(fg_group_mul(g, 99, 0, &mut x), FgStatus::Invalid);
        assert!(last_error().contains("99"));
        let (mut nil, mut sol, mut rad) = (true, false, 0);
        assert_eq!(
            fg_group_structure(g, &mut nil, &mut sol, &mut rad),
            FgStatus::Ok
        );
        assert_eq!((nil, sol, rad), (false, true, 24));
        fg_group_free(g);
    }
}

#[test]
fn eval_and_definable_sets() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            fg_group_from_spec(c("cyclic 4").as_ptr(), &mut g),
            FgStatus::Ok
        );
        let mut f = ptr::null_mut();
        assert_eq!(
            fg_formula_parse(c("E y. x = y*y").as_ptr(), &mut f),
            FgStatus::Ok
        );
        let mut len = 0;
        assert_eq!(
            fg_definable_set(g, f, c("x").as_ptr(), ptr::null_mut(), 0, &mut len),
            FgStatus::BufferTooSmall
        );
        assert_eq!(len, 2);
        let mut buf = [0u32; 4];
        assert_eq!(
            fg_definable_set(g, f, c("x").as_ptr(), buf.as_mut_ptr(), 4, &mut len),
            FgStatus::Ok
        );
        assert_eq!(&buf[..len], &[0, 2]);
        fg_formula_free(f);

        let mut s = ptr::null_mut();
        assert_eq!(
            fg_formula_parse(c("A x. A y. x*y = y*x").as_ptr(), &mut s),
            FgStatus::Ok
        );
        let mut b = false;
        assert_eq!(fg_eval(g, s, &mut b), FgStatus::Ok);
        assert!(b);
        fg_formula_free(s);
        fg_group_free(g);
    }
}

#[test]
fn errors_map_to_codes() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(
            fg_formula_parse(c("A x. (x = 1) ->").as_ptr(), &mut f),
            FgStatus::Invalid
        );
        assert!(last_error().contains("syntax"));
        assert_eq!(fg_formula_parse(ptr::null(), &mut f), FgStatus::NullPointer);
        let mut g = ptr::null_mut();
        assert_eq!(
            fg_group_from_spec(c("sym 12").as_ptr(), &mut g),
            FgStatus::TooLarge
        );
        let mut out = 0;
        assert_eq!(
            fg_group_mul(ptr::null(), 0, 0, &mut out),
            FgStatus::NullPointer
        );
        assert_eq!(fg_group_order(ptr::null()), 0);
    }
}

#[test]
fn table_input() {
    unsafe {
        let table = [0u32, 1, 2, 1, 2, 0, 2, 0, 1];
        let mut g = ptr::null_mut();
        assert_eq!(fg_group_from_table(table.as_ptr(), 3, &mut g), FgStatus::Ok);
        assert_eq!(fg_group_order(g), 3);
        fg_group_free(g);
        let bad = [0u32, 1, 1, 1];
        assert_eq!(
            fg_group_from_table(bad.as_ptr(), 2, &mut g),
            FgStatus::Invalid
        );
    }
}

#[test]
fn header_lists_the_api() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/grouplogic.h"))
            .unwrap();
    for name in [
        "fg_group_from_spec",
        "fg_eval",
        "fg_definable_set",
        "fg_last_error",
        "FG_STATUS_TOO_LARGE",
        "FgGroup",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
    assert!(unsafe { CStr::from_ptr(fg_version()) }
        .to_str()
        .unwrap()
        .starts_with("0."));
}
