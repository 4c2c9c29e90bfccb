use std::ffi::{CStr, CString};
use std::ptr;

use multiseg_ffi::*;

fn parse(s: &str) -> *mut MsMultiseg {
    let c = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ms_multiseg_parse(c.as_ptr(), &mut out) }, MsStatus::Ok);
    out
}

fn text(m: *const MsMultiseg) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ms_multiseg_format(m, &mut s) }, MsStatus::Ok);
    let r = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { ms_string_free(s) };
    r
}

#[test]
fn removal_and_dual() {
    let h = parse("{[2,8],[3,6]}");
    let n = parse("{[2,4],[3]}");
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { ms_remove(n, h, &mut r) }, MsStatus::Ok);
    assert_eq!(text(r), "{[4,8],[5,6]}");
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { ms_dual_remove(r, h, &mut d) }, MsStatus::Ok);
    assert_eq!(text(d), "{[2,4],[3]}");
    let mut minimal = false;
    assert_eq!(unsafe { ms_is_minimal(d, h, &mut minimal) }, MsStatus::Ok);
    assert!(minimal);
    unsafe {
        ms_multiseg_free(r);
        ms_multiseg_free(d);
        ms_multiseg_free(n);
        ms_multiseg_free(h);
    }
}

#[test]
fn not_admissible_reports_message() {
    let h = parse("{[0,4],[2,5],[2,3],[2]}");
    let n = parse("{[0,5]}");
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { ms_remove(n, h, &mut r) }, MsStatus::NotAdmissible);
    assert!(r.is_null());
    let msg = unsafe { CStr::from_ptr(ms_last_error_message()) }.to_str().unwrap();
    assert_eq!(msg, "not admissible");
    unsafe {
        ms_multiseg_free(n);
        ms_multiseg_free(h);
    }
}

#[test]
fn minimal_element_epsilon_dagger_realize() {
    let h = parse("{[0,3],[1,2]}");
    let n = parse("{[0,2],[1,3]}");
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { ms_minimal_element(n, h, &mut m) }, MsStatus::Ok);
    assert_eq!(text(m), "{[0,3],[1,2]}");

    let h2 = parse("{[0,5],[3,8]}");
    let mut e = 0usize;
    assert_eq!(unsafe { ms_epsilon(h2, 3, 6, &mut e) }, MsStatus::Ok);
    assert_eq!(e, 1);
    assert_eq!(unsafe { ms_epsilon(h2, 3, 1, &mut e) }, MsStatus::ParseError);

    let mut dg = true;
    assert_eq!(unsafe { ms_dagger(0, 3, 3, 8, h2, &mut dg) }, MsStatus::Ok);
    let mut bad = false;
    assert_eq!(unsafe { ms_dagger(0, 3, 0, 1, h2, &mut bad) }, MsStatus::PreconditionFailed);

    let sp = parse("{[1,3],[2,4]}");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ms_realize(sp, &mut s) }, MsStatus::Ok);
    assert!(!s.is_null());
    unsafe {
        ms_string_free(s);
        for p in [h, n, m, h2, sp] {
            ms_multiseg_free(p);
        }
    }
}
