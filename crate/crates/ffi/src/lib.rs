//! C ABI over `circlift`.
//!
//! Every entry point returns a [`CircliftStatus`]; on failure a message is
//! kept per thread and can be read with [`circlift_last_error`]. Handles are
//! opaque and must be released with their `_free` function. Strings handed
//! out by the library are released with [`circlift_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use circlift::circulant::{Border, CircVec, CodeSpec};
use circlift::equivalence::canonical_spec;
use circlift::record::{verify_record, Family};
use circlift::search::{run_search, SearchConfig, SearchOutcome};
use circlift::{min_lee_distance, ChainRing, Error, SearchRecord};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircliftStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Unsupported = 4,
    Config = 5,
    NotSelfDual = 6,
    Io = 7,
    Checkpoint = 8,
    Interrupted = 9,
    Utf8 = 10,
    OutOfRange = 11,
    Panic = 12,
}

/// A double or bordered code together with its ring.
pub struct CircliftSpec {
    spec: CodeSpec,
}

/// Finished search: best distance and the witness records.
pub struct CircliftSearch {
    outcome: SearchOutcome,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(CircliftStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidArgument(_) => CircliftStatus::InvalidArgument,
            Error::Parse(_) => CircliftStatus::Parse,
            Error::BaseNotSelfDual { .. } => CircliftStatus::NotSelfDual,
            Error::Unsupported(_) => CircliftStatus::Unsupported,
            Error::Config(_) => CircliftStatus::Config,
            Error::Interrupted => CircliftStatus::Interrupted,
            Error::Io(_) => CircliftStatus::Io,
            Error::Checkpoint(_) => CircliftStatus::Checkpoint,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CircliftStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CircliftStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CircliftStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(CircliftStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(CircliftStatus::Utf8, format!("{what} is not UTF-8")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn spec_ref<'a>(p: *const CircliftSpec) -> Result<&'a CodeSpec, Fail> {
    p.as_ref().map(|s| &s.spec).ok_or_else(|| null("spec"))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn circlift_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a code from a ring name (`"z4"`), a family name
/// (`"double-nega"`, `"double-circ"`, `"bordered-circ"`), comma separated
/// core digits and, for bordered families only, the border `"beta,gamma,delta"`.
///
/// # Safety
/// String arguments must be NUL terminated; `border` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn circlift_spec_new(
    ring: *const c_char,
    family: *const c_char,
    vector: *const c_char,
    border: *const c_char,
    out_spec: *mut *mut CircliftSpec,
) -> CircliftStatus {
    guard(|| {
        let slot = out(out_spec, "out_spec")?;
        *slot = ptr::null_mut();
        let family: Family = text(family, "family")?.parse()?;
        let ring = family.ring_with_alpha(ChainRing::parse(text(ring, "ring")?)?)?;
        let border = if border.is_null() { None } else { Some(text(border, "border")?) };
        if family.is_bordered() != border.is_some() {
            return Err(Fail(CircliftStatus::InvalidArgument, "border is required exactly for bordered families".into()));
        }
        let alpha = ring.alpha().expect("family fixes alpha");
        let core = CircVec::parse(ring, alpha, text(vector, "vector")?)?;
        let spec = match border {
            None => CodeSpec::double(core),
            Some(b) => CodeSpec::bordered(core, Border::parse(ring, b)?)?,
        };
        *slot = Box::into_raw(Box::new(CircliftSpec { spec }));
        Ok(())
    })
}

/// # Safety
/// `spec` must come from [`circlift_spec_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn circlift_spec_free(spec: *mut CircliftSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Code length `n`.
///
/// # Safety
/// `spec` must be a live handle; `n` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circlift_spec_length(spec: *const CircliftSpec, n: *mut usize) -> CircliftStatus {
    guard(|| {
        *out(n, "n")? = spec_ref(spec)?.n();
        Ok(())
    })
}

/// # Safety
/// `spec` must be a live handle; `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circlift_spec_is_self_dual(spec: *const CircliftSpec, result: *mut bool) -> CircliftStatus {
    guard(|| {
        *out(result, "result")? = spec_ref(spec)?.is_self_dual();
        Ok(())
    })
}

/// Exact minimum Lee distance.
///
/// # Safety
/// `spec` must be a live handle; `d` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circlift_spec_min_lee_distance(spec: *const CircliftSpec, d: *mut u32) -> CircliftStatus {
    guard(|| {
        *out(d, "d")? = min_lee_distance(spec_ref(spec)?, None);
        Ok(())
    })
}

/// Canonical representative as `"digits"` or `"digits border=b,c,d"`.
///
/// # Safety
/// `spec` must be a live handle; the string written to `form` is freed with
/// [`circlift_string_free`].
#[no_mangle]
pub unsafe extern "C" fn circlift_spec_canonical_form(spec: *const CircliftSpec, form: *mut *mut c_char) -> CircliftStatus {
    guard(|| {
        let slot = out(form, "form")?;
        *slot = ptr::null_mut();
        let canon = canonical_spec(spec_ref(spec)?);
        let s = match canon.border() {
            None => canon.core().to_digits(),
            Some(b) => format!("{} border={}", canon.core().to_digits(), b.to_digits()),
        };
        *slot = owned_string(s);
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn circlift_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Re-checks one results line. A well-formed but wrong record gives
/// `CIRCLIFT_STATUS_OK` with `*valid = false`.
///
/// # Safety
/// `line` must be NUL terminated; `valid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circlift_verify_record(line: *const c_char, valid: *mut bool) -> CircliftStatus {
    guard(|| {
        let slot = out(valid, "valid")?;
        let rec: SearchRecord = text(line, "line")?.trim().parse()?;
        *slot = verify_record(&rec)?;
        Ok(())
    })
}

/// Runs a search to completion. `threads = 0` uses all cores.
///
/// # Safety
/// String arguments must be NUL terminated; the handle written to `result`
/// is freed with [`circlift_search_free`].
#[no_mangle]
pub unsafe extern "C" fn circlift_search_run(
    ring: *const c_char,
    length: usize,
    family: *const c_char,
    threads: usize,
    no_pruning: bool,
    result: *mut *mut CircliftSearch,
) -> CircliftStatus {
    guard(|| {
        let slot = out(result, "result")?;
        *slot = ptr::null_mut();
        let mut cfg = SearchConfig::new(ChainRing::parse(text(ring, "ring")?)?, length, text(family, "family")?.parse()?);
        cfg.threads = threads;
        cfg.no_pruning = no_pruning;
        cfg.validate()?;
        let outcome = run_search(&cfg)?;
        *slot = Box::into_raw(Box::new(CircliftSearch { outcome }));
        Ok(())
    })
}

/// # Safety
/// `search` must come from [`circlift_search_run`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn circlift_search_free(search: *mut CircliftSearch) {
    if !search.is_null() {
        drop(Box::from_raw(search));
    }
}

/// Best minimum Lee distance found; 0 if the family has no self-dual lifts.
///
/// # Safety
/// `search` must be a live handle; `d` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circlift_search_best_distance(search: *const CircliftSearch, d: *mut u32) -> CircliftStatus {
    guard(|| {
        let s = search.as_ref().ok_or_else(|| null("search"))?;
        *out(d, "d")? = s.outcome.best_d;
        Ok(())
    })
}

/// # Safety
/// `search` must be a live handle; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn circlift_search_record_count(search: *const CircliftSearch, count: *mut usize) -> CircliftStatus {
    guard(|| {
        let s = search.as_ref().ok_or_else(|| null("search"))?;
        *out(count, "count")? = s.outcome.records.len();
        Ok(())
    })
}

/// Record `index` in the results-file line format.
///
/// # Safety
/// `search` must be a live handle; the string written to `line` is freed
/// with [`circlift_string_free`].
#[no_mangle]
pub unsafe extern "C" fn circlift_search_record(
    search: *const CircliftSearch,
    index: usize,
    line: *mut *mut c_char,
) -> CircliftStatus {
    guard(|| {
        let slot = out(line, "line")?;
        *slot = ptr::null_mut();
        let s = search.as_ref().ok_or_else(|| null("search"))?;
        let rec = s.outcome.records.get(index).ok_or_else(|| {
            Fail(CircliftStatus::OutOfRange, format!("record {index} of {}", s.outcome.records.len()))
        })?;
        *slot = owned_string(rec.to_string());
        Ok(())
    })
}
