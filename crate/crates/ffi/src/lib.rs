//! C ABI over cheegerkit.
//!
//! Every fallible call returns a [`CkStatus`]; on anything but `CK_OK` the
//! message is available from [`ck_last_error`] on the same thread. Strings
//! handed out by the library must be released with [`ck_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cheegerkit::config::RunConfig;
use cheegerkit::io::{load_json_str, parse_descriptor, Loaded};
use cheegerkit::verify::{compute_constant, run_suite_with, IdFilter, KNOWN_CONSTANTS};
use cheegerkit::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CkStatus {
    CkOk = 0,
    CkNullPointer = 1,
    CkInvalidUtf8 = 2,
    CkParse = 3,
    CkValidation = 4,
    CkCapExceeded = 5,
    CkNumerical = 6,
    CkIo = 7,
    CkPanic = 8,
}

/// An instance: graph plus signature, measure and optional connection.
pub struct CkGraph {
    loaded: Loaded,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CkStatus {
    match e {
        Error::Parse(_) => CkStatus::CkParse,
        Error::CapExceeded { .. } | Error::OrderCapExceeded { .. } => CkStatus::CkCapExceeded,
        Error::NoConvergence { .. } => CkStatus::CkNumerical,
        Error::Io(_) => CkStatus::CkIo,
        _ => CkStatus::CkValidation,
    }
}

struct Failure(CkStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CkStatus::CkOk,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CkStatus::CkPanic
        }
    }
}

/// Reads an optional C string; null maps to `None`.
unsafe fn opt_str<'a>(p: *const c_char) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Some)
        .map_err(|e| Failure(CkStatus::CkInvalidUtf8, e.to_string()))
}

unsafe fn req_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    opt_str(p)?.ok_or_else(|| Failure(CkStatus::CkNullPointer, format!("{what} is null")))
}

unsafe fn graph_ref<'a>(g: *const CkGraph) -> Result<&'a CkGraph, Failure> {
    g.as_ref()
        .ok_or_else(|| Failure(CkStatus::CkNullPointer, "graph handle is null".into()))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(CkStatus::CkNullPointer, "output pointer is null".into()));
    }
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Failure(CkStatus::CkValidation, e.to_string()))
}

fn comma_list(s: Option<&str>) -> Vec<String> {
    s.map(|s| {
        s.split(',')
            .map(|t| t.trim().to_string())
            .filter(|t| !t.is_empty())
            .collect()
    })
    .unwrap_or_default()
}

fn config(seed: u64) -> RunConfig {
    RunConfig {
        seed,
        ..RunConfig::default()
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ck_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ck_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph from a descriptor such as `cayley:zn:5:1,4` or `petersen`.
///
/// # Safety
/// `descriptor` must be null or a NUL-terminated string; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ck_graph_from_descriptor(descriptor: *const c_char, out: *mut *mut CkGraph) -> CkStatus {
    guard(|| {
        check_out(out)?;
        let desc = req_str(descriptor, "descriptor")?;
        let loaded = parse_descriptor(desc)?;
        *out = Box::into_raw(Box::new(CkGraph { loaded }));
        Ok(())
    })
}

/// Parses graph-file or instance-file JSON.
///
/// # Safety
/// As for [`ck_graph_from_descriptor`].
#[no_mangle]
pub unsafe extern "C" fn ck_graph_from_json(json: *const c_char, out: *mut *mut CkGraph) -> CkStatus {
    guard(|| {
        check_out(out)?;
        let text = req_str(json, "json")?;
        let loaded = load_json_str(text, "graph")?;
        *out = Box::into_raw(Box::new(CkGraph { loaded }));
        Ok(())
    })
}

/// # Safety
/// `graph` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ck_graph_free(graph: *mut CkGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_graph_vertex_count(graph: *const CkGraph, out: *mut usize) -> CkStatus {
    guard(|| {
        check_out(out)?;
        *out = graph_ref(graph)?.loaded.instance.graph.n();
        Ok(())
    })
}

/// Computes the comma-separated constants in `which` (null or empty for all)
/// and writes a JSON document to `out`. Constants that exceed a cap or do not
/// apply are reported inside the document, not as an error status.
///
/// # Safety
/// `graph` must be a live handle, `which` null or NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ck_constants_json(
    graph: *const CkGraph,
    which: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> CkStatus {
    guard(|| {
        check_out(out)?;
        let g = graph_ref(graph)?;
        let mut names = comma_list(opt_str(which)?);
        if names.is_empty() {
            names = KNOWN_CONSTANTS.iter().map(|s| s.to_string()).collect();
        }
        let cfg = config(seed);
        let mut entries = Vec::new();
        for name in &names {
            let entry = match compute_constant(&g.loaded.instance, &cfg, name) {
                Ok(c) => {
                    let mut v = serde_json::to_value(&c).map_err(Error::from)?;
                    v["status"] = "ok".into();
                    v
                }
                Err(e @ Error::Config(_)) => return Err(e.into()),
                Err(e) => {
                    let status = if e.is_cap_exceeded() {
                        "cap-exceeded"
                    } else {
                        "unavailable"
                    };
                    serde_json::json!({"name": name, "status": status, "error": e.to_string()})
                }
            };
            entries.push(entry);
        }
        let doc = serde_json::json!({"instance": g.loaded.instance.name, "constants": entries});
        *out = into_c_string(doc.to_string())?;
        Ok(())
    })
}

/// Runs the registry entries in `ids` (null or empty for all) and writes the
/// report JSON to `out` and the number of failing verdicts to `failures`
/// (which may be null).
///
/// # Safety
/// As for [`ck_constants_json`]; `failures` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ck_verify_json(
    graph: *const CkGraph,
    ids: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
    failures: *mut u32,
) -> CkStatus {
    guard(|| {
        check_out(out)?;
        let g = graph_ref(graph)?;
        let list = comma_list(opt_str(ids)?);
        let filter = if list.is_empty() {
            IdFilter::All
        } else {
            IdFilter::Only(list)
        };
        let report = run_suite_with(&g.loaded.instance, &filter, &config(seed), &g.loaded.overrides)?;
        if !failures.is_null() {
            *failures = report.counts.fail as u32;
        }
        *out = into_c_string(report.to_json()?)?;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn ck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
