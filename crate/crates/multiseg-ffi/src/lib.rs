//! C ABI over `multiseg`.
//!
//! Multisegments cross the boundary as opaque `MsMultiseg` handles made by
//! `ms_multiseg_parse` and released with `ms_multiseg_free`. Every fallible
//! call returns an `MsStatus`; on failure the message is available from
//! `ms_last_error_message` until the next call on the same thread. Strings
//! handed out by this library are released with `ms_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use multiseg::duality::dual_remove;
use multiseg::hd_classes::realize;
use multiseg::minimality::{dagger, epsilon, is_minimal, minimal_element};
use multiseg::removal::remove_multi;
use multiseg::text::{format_speh_list, parse_multisegment};
use multiseg::{Error, Multisegment, Segment};

/// Opaque multisegment handle.
pub struct MsMultiseg(Multisegment);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NotAdmissible = 4,
    PreconditionFailed = 5,
    Panic = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> MsStatus {
    match e {
        Error::Parse { .. } | Error::EmptySegment { .. } => MsStatus::ParseError,
        Error::NotAdmissible => MsStatus::NotAdmissible,
        Error::NotLinked(..) | Error::IndexOutOfRange(_) | Error::Precondition(_) => MsStatus::PreconditionFailed,
    }
}

struct Failure(MsStatus, String);

type Fallible<T> = std::result::Result<T, Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `f`, records any failure, and converts panics into `Panic`.
fn guard(f: impl FnOnce() -> Fallible<()>) -> MsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MsStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(MsStatus::NullPointer, "null pointer argument".to_string())
}

unsafe fn handle<'a>(p: *const MsMultiseg) -> Fallible<&'a Multisegment> {
    p.as_ref().map(|m| &m.0).ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Fallible<()> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

fn boxed(m: Multisegment) -> *mut MsMultiseg {
    Box::into_raw(Box::new(MsMultiseg(m)))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn segment(start: i32, end: i32) -> Fallible<Segment> {
    Ok(Segment::new(start, end)?)
}

/// Parses `text` into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_multiseg_parse(text: *const c_char, out: *mut *mut MsMultiseg) -> MsStatus {
    guard(|| {
        if text.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Failure(MsStatus::InvalidUtf8, "input is not valid UTF-8".to_string()))?;
        let m = parse_multisegment(s)?;
        write_out(out, boxed(m))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ms_multiseg_free(m: *mut MsMultiseg) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Canonical text of `m` in `*out`; release it with `ms_string_free`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_multiseg_format(m: *const MsMultiseg, out: *mut *mut c_char) -> MsStatus {
    guard(|| {
        let m = handle(m)?;
        write_out(out, c_string(m.to_string()))
    })
}

/// Number of entries counted with multiplicity; 0 for null.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ms_multiseg_len(m: *const MsMultiseg) -> usize {
    m.as_ref().map_or(0, |m| m.0.len())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ms_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `r(n, h)` as a new handle.
///
/// # Safety
/// `n` and `h` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_remove(n: *const MsMultiseg, h: *const MsMultiseg, out: *mut *mut MsMultiseg) -> MsStatus {
    guard(|| {
        let r = remove_multi(handle(n)?, handle(h)?).ok_or(Error::NotAdmissible)?;
        write_out(out, boxed(r))
    })
}

/// The dual removal `r^d(n, h)` as a new handle.
///
/// # Safety
/// `n` and `h` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_dual_remove(
    n: *const MsMultiseg,
    h: *const MsMultiseg,
    out: *mut *mut MsMultiseg,
) -> MsStatus {
    guard(|| {
        let r = dual_remove(handle(n)?, handle(h)?).ok_or(Error::NotAdmissible)?;
        write_out(out, boxed(r))
    })
}

/// Whether `n` is minimal to `h`.
///
/// # Safety
/// `n` and `h` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_is_minimal(n: *const MsMultiseg, h: *const MsMultiseg, out: *mut bool) -> MsStatus {
    guard(|| {
        let v = is_minimal(handle(n)?, handle(h)?)?;
        write_out(out, v)
    })
}

/// The least `m` with `r(m, h) = r(n, h)`, as a new handle.
///
/// # Safety
/// `n` and `h` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_minimal_element(
    n: *const MsMultiseg,
    h: *const MsMultiseg,
    out: *mut *mut MsMultiseg,
) -> MsStatus {
    guard(|| {
        let m = minimal_element(handle(n)?, handle(h)?)?;
        write_out(out, boxed(m))
    })
}

/// `ε_[start,end](h)`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_epsilon(h: *const MsMultiseg, start: i32, end: i32, out: *mut usize) -> MsStatus {
    guard(|| {
        let d = segment(start, end)?;
        let v = epsilon(handle(h)?, &d);
        write_out(out, v)
    })
}

/// The (dagger) property of `([d_start,d_end], [dp_start,dp_end], h)`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_dagger(
    d_start: i32,
    d_end: i32,
    dp_start: i32,
    dp_end: i32,
    h: *const MsMultiseg,
    out: *mut bool,
) -> MsStatus {
    guard(|| {
        let d = segment(d_start, d_end)?;
        let dp = segment(dp_start, dp_end)?;
        let v = dagger(&d, &dp, handle(h)?)?;
        write_out(out, v)
    })
}

/// Essentially Speh factors of `h` as text `"(t,d,m),..."` in `*out`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_realize(h: *const MsMultiseg, out: *mut *mut c_char) -> MsStatus {
    guard(|| {
        let ps = realize(handle(h)?)?;
        write_out(out, c_string(format_speh_list(&ps)))
    })
}

/// Message of the last failure on this thread, or null after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn ms_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn parse_format_len() {
        let m = parse("{[3,6],[2,8],[3,6]}");
        assert_eq!(text(m), "{[2,8],[3,6]*2}");
        assert_eq!(unsafe { ms_multiseg_len(m) }, 3);
        unsafe { ms_multiseg_free(m) };
    }

    #[test]
    fn errors_set_message() {
        let c = CString::new("{[3,1]}").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { ms_multiseg_parse(c.as_ptr(), &mut out) }, MsStatus::ParseError);
        assert!(out.is_null());
        assert!(!ms_last_error_message().is_null());
        assert_eq!(unsafe { ms_multiseg_parse(ptr::null(), &mut out) }, MsStatus::NullPointer);
        assert_eq!(unsafe { ms_multiseg_len(ptr::null()) }, 0);
    }
}
