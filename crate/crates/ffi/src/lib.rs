//! C ABI over the merging workbench.
//!
//! Every function returns an [`MfStatus`]. On failure the message is kept
//! per thread and read with [`mf_last_error_message`]. Strings handed out
//! through `out` parameters are owned by the caller and released with
//! [`mf_string_free`]; profiles with [`mf_profile_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use merge_forge::golden;
use merge_forge::logic::{parse_profile, Base, ProfileDoc};
use merge_forge::manipulation::{find_manipulation, SpaceKind, StrategySpace};
use merge_forge::{Error, IndexId, Operator};

/// Result of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Data = 4,
    UnknownName = 5,
    Internal = 6,
}

/// A parsed profile document. Opaque to C.
pub struct MfProfile {
    doc: ProfileDoc,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(MfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } | Error::Format { .. } | Error::UnknownVariable(_) | Error::Signature(_) => {
                MfStatus::Parse
            }
            Error::UnknownName { .. } => MfStatus::UnknownName,
            _ => MfStatus::Data,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MfStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MfStatus::Internal
        }
    }
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(MfStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(MfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be null or come from [`mf_profile_parse`].
unsafe fn profile<'a>(p: *const MfProfile) -> Result<&'a ProfileDoc, Fail> {
    p.as_ref().map(|p| &p.doc).ok_or_else(|| Fail(MfStatus::NullPointer, "profile is null".into()))
}

fn out_ptr<T>(p: *mut T) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(MfStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn mf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a profile document.
///
/// # Safety
/// `doc` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_profile_parse(doc: *const c_char, out: *mut *mut MfProfile) -> MfStatus {
    guard(|| {
        out_ptr(out)?;
        *out = ptr::null_mut();
        let doc = parse_profile(text(doc, "document")?)?;
        *out = Box::into_raw(Box::new(MfProfile { doc }));
        Ok(())
    })
}

/// Releases a profile. Null is ignored.
///
/// # Safety
/// `p` must be null or come from [`mf_profile_parse`], and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mf_profile_free(p: *mut MfProfile) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of bases in the profile.
///
/// # Safety
/// `p` must come from [`mf_profile_parse`]; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_profile_base_count(p: *const MfProfile, out: *mut usize) -> MfStatus {
    guard(|| {
        out_ptr(out)?;
        *out = profile(p)?.profile.len();
        Ok(())
    })
}

/// Merges the profile under its own constraint. Writes the merged model
/// set, e.g. `{000, 001, 110}`.
///
/// # Safety
/// Pointers must be valid; the string written to `out` is freed with
/// [`mf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mf_merge(p: *const MfProfile, op: *const c_char, out: *mut *mut c_char) -> MfStatus {
    guard(|| {
        out_ptr(out)?;
        *out = ptr::null_mut();
        let doc = profile(p)?;
        let op = Operator::parse(text(op, "operator")?)?;
        let merged = op.merge(&doc.profile.refs(), &doc.mu)?;
        *out = owned(merged.to_string());
        Ok(())
    })
}

/// Index `index` of base `agent` on the merge, as a reduced fraction.
///
/// # Safety
/// Pointers must be valid and `num`, `den` writable.
#[no_mangle]
pub unsafe extern "C" fn mf_index(
    p: *const MfProfile,
    op: *const c_char,
    agent: *const c_char,
    index: *const c_char,
    num: *mut u64,
    den: *mut u64,
) -> MfStatus {
    guard(|| {
        out_ptr(num)?;
        out_ptr(den)?;
        let doc = profile(p)?;
        let op = Operator::parse(text(op, "operator")?)?;
        let id = IndexId::parse(text(index, "index")?)?;
        let name = text(agent, "agent")?;
        let k = doc.base(name).ok_or_else(|| Error::UnknownName { kind: "base", name: name.into() })?;
        let merged = op.merge(&doc.profile.refs(), &doc.mu)?;
        let v = merge_forge::satisfaction::index_value(id, k.models(), &merged)?;
        *num = *v.numer();
        *den = *v.denom();
        Ok(())
    })
}

/// Searches a semantic strategy space of `agent`. `found` tells whether a
/// witness exists; `json` receives the witness as JSON, or `null`.
///
/// # Safety
/// Pointers must be valid; the string written to `json` is freed with
/// [`mf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mf_manipulate(
    p: *const MfProfile,
    agent: *const c_char,
    op: *const c_char,
    index: *const c_char,
    space: *const c_char,
    found: *mut bool,
    json: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        out_ptr(found)?;
        out_ptr(json)?;
        *json = ptr::null_mut();
        let doc = profile(p)?;
        let op = Operator::parse(text(op, "operator")?)?;
        let id = IndexId::parse(text(index, "index")?)?;
        let space = StrategySpace::from_kind(SpaceKind::parse(text(space, "space")?)?)?;
        let name = text(agent, "agent")?;
        let pos = doc.position(name).ok_or_else(|| Error::UnknownName { kind: "base", name: name.into() })?;
        let bases = doc.profile.bases();
        let rest: Vec<&Base> = bases.iter().enumerate().filter(|(i, _)| *i != pos).map(|(_, b)| b).collect();
        let w = find_manipulation(&rest, &bases[pos], op, &doc.mu, id, &space)?;
        *found = w.is_some();
        let v = w.map(|w| w.to_json(&doc.signature)).unwrap_or_default();
        *json = owned(v.to_string());
        Ok(())
    })
}

/// Recomputes reference table `id`; `passed` is true when every cell matches.
///
/// # Safety
/// `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_reproduce(id: u32, passed: *mut bool) -> MfStatus {
    guard(|| {
        out_ptr(passed)?;
        let r = golden::reproduce(id)?;
        *passed = r.passed();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or come from this library, and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
