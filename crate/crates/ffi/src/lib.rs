//! C ABI over `nodal-core`.
//!
//! Tuples live behind the opaque [`NodalTuple`] handle. Every fallible call returns a
//! [`NodalStatus`]; on failure [`nodal_last_error`] describes the problem. Strings handed
//! out by the library are owned by the caller and released with [`nodal_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nodal_core::assembly::verify_nodal;
use nodal_core::tuples::{canonical_key, enumerate, equivalent, ClassTuple, EnumerationBounds, EnumerationFilter};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodalStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    Internal = 5,
}

/// A validated tuple.
pub struct NodalTuple {
    inner: ClassTuple,
}

/// Filter bits for [`nodal_enumerate`].
pub const NODAL_FILTER_COMMUTATIVE: u32 = 1;
pub const NODAL_FILTER_NON_HEREDITARY: u32 = 2;
pub const NODAL_FILTER_HEREDITARY: u32 = 4;
pub const NODAL_FILTER_BASIC: u32 = 8;
pub const NODAL_FILTER_INCLUDE_DECOMPOSABLE: u32 = 16;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(NodalStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NodalStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NodalStatus::Ok,
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal error");
            NodalStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(NodalStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(NodalStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn tuple_ref<'a>(p: *const NodalTuple, what: &str) -> Result<&'a ClassTuple, Failure> {
    p.as_ref().map(|t| &t.inner).ok_or_else(|| null(what))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) {
    if !out.is_null() {
        *out = to_c(s);
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn nodal_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn nodal_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses and validates a tuple from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nodal_tuple_from_json(json: *const c_char, out: *mut *mut NodalTuple) -> NodalStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let text = read_str(json, "json")?;
        let raw = nodal_core::tuples::RawTuple::from_json(text)
            .map_err(|e| Failure(NodalStatus::Parse, format!("line {} column {}: {e}", e.line(), e.column())))?;
        let inner = raw.validate().map_err(|e| Failure(NodalStatus::Invalid, e.to_string()))?;
        *out = Box::into_raw(Box::new(NodalTuple { inner }));
        Ok(())
    })
}

/// # Safety
/// `t` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nodal_tuple_free(t: *mut NodalTuple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Fully explicit JSON form of the tuple.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nodal_tuple_to_json(t: *const NodalTuple, out: *mut *mut c_char) -> NodalStatus {
    guard(|| {
        let t = tuple_ref(t, "tuple")?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, t.to_json().to_string());
        Ok(())
    })
}

/// Canonical key: equal keys iff equivalent tuples.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nodal_tuple_canonical_key(t: *const NodalTuple, out: *mut *mut c_char) -> NodalStatus {
    guard(|| {
        let t = tuple_ref(t, "tuple")?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, canonical_key(t).0);
        Ok(())
    })
}

/// Weight-forgetting reduction as a new handle.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nodal_tuple_basify(t: *const NodalTuple, out: *mut *mut NodalTuple) -> NodalStatus {
    guard(|| {
        let t = tuple_ref(t, "tuple")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = Box::into_raw(Box::new(NodalTuple { inner: t.basify() }));
        Ok(())
    })
}

/// Decides equivalence. `witness_json` may be null; otherwise it receives the witness
/// JSON, or null when the tuples are not equivalent.
///
/// # Safety
/// `a` and `b` must be live handles; `equivalent_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nodal_tuple_equivalent(
    a: *const NodalTuple,
    b: *const NodalTuple,
    equivalent_out: *mut bool,
    witness_json: *mut *mut c_char,
) -> NodalStatus {
    guard(|| {
        let (a, b) = (tuple_ref(a, "a")?, tuple_ref(b, "b")?);
        if equivalent_out.is_null() {
            return Err(null("equivalent_out"));
        }
        let w = equivalent(a, b);
        *equivalent_out = w.is_some();
        if !witness_json.is_null() {
            *witness_json = match w {
                Some(w) => to_c(serde_json::to_string(&w).expect("serializable")),
                None => ptr::null_mut(),
            };
        }
        Ok(())
    })
}

/// Assembles A_N and runs every nodality check. `report_json` may be null.
///
/// # Safety
/// `t` must be a live handle; `all_pass` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nodal_tuple_verify(
    t: *const NodalTuple,
    trunc: usize,
    all_pass: *mut bool,
    report_json: *mut *mut c_char,
) -> NodalStatus {
    guard(|| {
        let t = tuple_ref(t, "tuple")?;
        if all_pass.is_null() {
            return Err(null("all_pass"));
        }
        let r = verify_nodal(t, trunc).map_err(|e| Failure(NodalStatus::Invalid, e.to_string()))?;
        *all_pass = r.all_pass;
        put_string(report_json, serde_json::to_string(&r).expect("serializable"));
        Ok(())
    })
}

/// Class representatives within the bounds, as JSON lines `{key, representative}`.
/// `filters` is a bitwise or of the `NODAL_FILTER_*` constants.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nodal_enumerate(
    max_elements: usize,
    max_weight: u32,
    filters: u32,
    out: *mut *mut c_char,
) -> NodalStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if max_weight == 0 {
            return Err(Failure(NodalStatus::Invalid, "max_weight must be positive".into()));
        }
        let mut bounds = EnumerationBounds::new(max_elements, max_weight);
        bounds.include_decomposable = filters & NODAL_FILTER_INCLUDE_DECOMPOSABLE != 0;
        let filter = EnumerationFilter {
            commutative: filters & NODAL_FILTER_COMMUTATIVE != 0,
            non_hereditary: filters & NODAL_FILTER_NON_HEREDITARY != 0,
            hereditary: filters & NODAL_FILTER_HEREDITARY != 0,
            basic: filters & NODAL_FILTER_BASIC != 0,
        };
        let mut text = String::new();
        for (k, t) in enumerate(&bounds, &filter) {
            text.push_str(&serde_json::json!({"key": k, "representative": t.to_json()}).to_string());
            text.push('\n');
        }
        put_string(out, text);
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nodal_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
