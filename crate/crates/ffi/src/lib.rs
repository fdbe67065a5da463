//! C ABI over the certificate pipelines.
//!
//! Certificates cross the boundary as opaque `MdcCertificate` handles and as
//! JSON strings. Every entry point returns an [`MdcStatus`]; on failure the
//! message is available from [`mdc_last_error`] on the same thread. Status
//! values 0–3 match the `mdcycle` CLI exit codes.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use mdcycle::certify::{certify_prop_p7, certify_theorem_mt, verify_certificate, Certificate};
use mdcycle::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdcStatus {
    Ok = 0,
    /// Search exhausted or verification failed.
    NotFound = 1,
    InvalidParameters = 2,
    ParseError = 3,
    NullPointer = 4,
    Panic = 5,
}

/// Opaque certificate handle. Free with [`mdc_certificate_free`].
pub struct MdcCertificate {
    inner: Certificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> MdcStatus {
    set_error(err.to_string());
    match err {
        Error::Parse { .. } => MdcStatus::ParseError,
        _ => MdcStatus::InvalidParameters,
    }
}

fn guarded(f: impl FnOnce() -> MdcStatus + UnwindSafe) -> MdcStatus {
    clear_error();
    catch_unwind(f).unwrap_or_else(|_| {
        set_error("internal panic");
        MdcStatus::Panic
    })
}

unsafe fn store(out: *mut *mut MdcCertificate, cert: Certificate) {
    *out = Box::into_raw(Box::new(MdcCertificate { inner: cert }));
}

/// Solve the theorem-mt system for genus `g` and `n` factors. `m_override`
/// of 0 starts the sweep at the smallest admissible `m`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn mdc_certify_theorem_mt(
    g: u32,
    n: u32,
    m_override: u32,
    out: *mut *mut MdcCertificate,
) -> MdcStatus {
    if out.is_null() {
        return MdcStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let out = out as usize;
    guarded(move || {
        let m = (m_override != 0).then_some(m_override as usize);
        match certify_theorem_mt(g as usize, n as usize, m) {
            Ok(cert) => {
                store(out as *mut *mut MdcCertificate, cert);
                MdcStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Sweep `m = n+1..=m_max` for a prop-p7 certificate. Returns
/// `MDC_STATUS_NOT_FOUND` when the sweep is exhausted.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn mdc_certify_prop_p7(
    g: u32,
    n: u32,
    i: u32,
    m_max: u32,
    out: *mut *mut MdcCertificate,
) -> MdcStatus {
    if out.is_null() {
        return MdcStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let out = out as usize;
    guarded(move || match certify_prop_p7(g as usize, n as usize, i as usize, m_max as usize) {
        Ok(Some(cert)) => {
            store(out as *mut *mut MdcCertificate, cert);
            MdcStatus::Ok
        }
        Ok(None) => {
            set_error(format!("no certificate for m in {}..={m_max}", n + 1));
            MdcStatus::NotFound
        }
        Err(e) => status_of(&e),
    })
}

/// Parse a certificate from NUL-terminated UTF-8 JSON.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` as above.
#[no_mangle]
pub unsafe extern "C" fn mdc_certificate_from_json(
    json: *const c_char,
    out: *mut *mut MdcCertificate,
) -> MdcStatus {
    if json.is_null() || out.is_null() {
        return MdcStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t.to_owned(),
        Err(e) => {
            set_error(format!("input is not UTF-8: {e}"));
            return MdcStatus::ParseError;
        }
    };
    let out = out as usize;
    guarded(move || match Certificate::from_json(&text) {
        Ok(cert) => {
            store(out as *mut *mut MdcCertificate, cert);
            MdcStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Serialize to JSON. The returned string is owned by the caller and must be
/// released with [`mdc_string_free`]. Null on a null handle.
///
/// # Safety
/// `cert` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mdc_certificate_to_json(cert: *const MdcCertificate) -> *mut c_char {
    let Some(cert) = cert.as_ref() else {
        return ptr::null_mut();
    };
    CString::new(cert.inner.to_json())
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Re-check every residual and functional value. `MDC_STATUS_NOT_FOUND` on
/// failure, with the violated check in [`mdc_last_error`].
///
/// # Safety
/// `cert` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mdc_certificate_verify(cert: *const MdcCertificate) -> MdcStatus {
    let Some(cert) = cert.as_ref() else {
        return MdcStatus::NullPointer;
    };
    let inner = cert.inner.clone();
    guarded(move || match verify_certificate(&inner) {
        Ok(()) => MdcStatus::Ok,
        Err(f) => {
            set_error(f.to_string());
            MdcStatus::NotFound
        }
    })
}

/// Number of curve factors `m` of the certified cycle; 0 on a null handle.
///
/// # Safety
/// `cert` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mdc_certificate_m(cert: *const MdcCertificate) -> u32 {
    cert.as_ref().map_or(0, |c| c.inner.m as u32)
}

/// # Safety
/// `cert` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mdc_certificate_free(cert: *mut MdcCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mdc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn mdc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static version string.
#[no_mangle]
pub extern "C" fn mdc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
