//! C ABI for the tamebar library: opaque handles over parsed inputs, JSON
//! strings for structured results, integer status codes, and a thread-local
//! last-error message.
//!
//! Every returned `char*` is owned by the caller and must be released with
//! [`tamebar_string_free`]; handles are released with their `_free`
//! functions. All functions tolerate NULL inputs and report
//! `TamebarStatus::NullPointer` instead of crashing.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tamebar::diagram::{Rep, TameDiagram};
use tamebar::json;
use tamebar::relation::relation_from_cycle;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TamebarStatus {
    /// Success.
    Ok = 0,
    /// Malformed or invalid input (bad JSON, bad field, shape errors).
    InvalidInput = 1,
    /// The analysis ran but an internal consistency check failed.
    ConsistencyFailure = 2,
    /// A NULL pointer was passed where a value was required.
    NullPointer = 3,
    /// Unexpected internal failure.
    Internal = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

/// The message of the most recent error on this thread. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn tamebar_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// A parsed representation file (circle or line kind).
pub struct TamebarRep {
    rep: Rep,
}

/// A parsed and validated diagram file.
pub struct TamebarDiagram {
    diagram: TameDiagram,
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, TamebarStatus> {
    if ptr.is_null() {
        set_error("NULL string");
        return Err(TamebarStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("input is not valid UTF-8");
        TamebarStatus::InvalidInput
    })
}

fn give_string(out: *mut *mut c_char, s: String) -> TamebarStatus {
    if out.is_null() {
        set_error("NULL output pointer");
        return TamebarStatus::NullPointer;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            TamebarStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            TamebarStatus::Internal
        }
    }
}

fn guarded<F: FnOnce() -> TamebarStatus>(f: F) -> TamebarStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            TamebarStatus::Internal
        }
    }
}

/// Parse a representation from its JSON encoding.
///
/// # Safety
/// `json` must point to a NUL-terminated string and `out` to writable
/// storage for one pointer. The returned handle must be released with
/// [`tamebar_rep_free`].
#[no_mangle]
pub unsafe extern "C" fn tamebar_rep_parse(
    json: *const c_char,
    out: *mut *mut TamebarRep,
) -> TamebarStatus {
    guarded(|| {
        if out.is_null() {
            set_error("NULL output pointer");
            return TamebarStatus::NullPointer;
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let parsed: Result<json::RepDto, _> = serde_json::from_str(text);
        let dto = match parsed {
            Ok(d) => d,
            Err(e) => {
                set_error(&format!("json: {e}"));
                return TamebarStatus::InvalidInput;
            }
        };
        match json::rep_from_dto(&dto) {
            Ok(rep) => {
                *out = Box::into_raw(Box::new(TamebarRep { rep }));
                TamebarStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                TamebarStatus::InvalidInput
            }
        }
    })
}

/// Release a representation handle. NULL is ignored.
///
/// # Safety
/// `rep` must come from [`tamebar_rep_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tamebar_rep_free(rep: *mut TamebarRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Decompose into bar codes and monodromy; writes the decomposition JSON.
///
/// # Safety
/// `rep` must be a live handle; `json_out` receives an owned string to be
/// freed with [`tamebar_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tamebar_rep_decompose(
    rep: *const TamebarRep,
    json_out: *mut *mut c_char,
) -> TamebarStatus {
    guarded(|| {
        let Some(handle) = rep.as_ref() else {
            set_error("NULL representation");
            return TamebarStatus::NullPointer;
        };
        match handle.rep.decompose() {
            Ok(dec) => {
                let dto = json::decomposition_to_dto(&dec);
                match serde_json::to_string_pretty(&dto) {
                    Ok(s) => give_string(json_out, s),
                    Err(e) => {
                        set_error(&e.to_string());
                        TamebarStatus::Internal
                    }
                }
            }
            Err(e) => {
                set_error(&e.to_string());
                TamebarStatus::InvalidInput
            }
        }
    })
}

/// Regular part of the fiber relation of a circle representation (the
/// decomposition-independent monodromy oracle); writes the monodromy JSON.
///
/// # Safety
/// Same contracts as [`tamebar_rep_decompose`].
#[no_mangle]
pub unsafe extern "C" fn tamebar_rep_relation_monodromy(
    rep: *const TamebarRep,
    json_out: *mut *mut c_char,
) -> TamebarStatus {
    guarded(|| {
        let Some(handle) = rep.as_ref() else {
            set_error("NULL representation");
            return TamebarStatus::NullPointer;
        };
        let Rep::Circle(circle) = &handle.rep else {
            set_error("the relation oracle needs a circle representation");
            return TamebarStatus::InvalidInput;
        };
        let result =
            relation_from_cycle(&circle.alpha, &circle.beta).and_then(|rel| rel.regular_part());
        match result {
            Ok(reg) => {
                let dec = tamebar::quiver::Decomposition {
                    field: circle.field,
                    barcodes: vec![],
                    monodromy: tamebar::quiver::Monodromy::of_matrix(reg.map.clone()),
                };
                let dto = json::decomposition_to_dto(&dec);
                match serde_json::to_string_pretty(&dto.monodromy) {
                    Ok(s) => give_string(json_out, s),
                    Err(e) => {
                        set_error(&e.to_string());
                        TamebarStatus::Internal
                    }
                }
            }
            Err(e) => {
                set_error(&e.to_string());
                TamebarStatus::InvalidInput
            }
        }
    })
}

/// Parse and validate a diagram from its JSON encoding.
///
/// # Safety
/// Same contracts as [`tamebar_rep_parse`]; release with
/// [`tamebar_diagram_free`].
#[no_mangle]
pub unsafe extern "C" fn tamebar_diagram_parse(
    json: *const c_char,
    out: *mut *mut TamebarDiagram,
) -> TamebarStatus {
    guarded(|| {
        if out.is_null() {
            set_error("NULL output pointer");
            return TamebarStatus::NullPointer;
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let parsed: Result<json::DiagramDto, _> = serde_json::from_str(text);
        let dto = match parsed {
            Ok(d) => d,
            Err(e) => {
                set_error(&format!("json: {e}"));
                return TamebarStatus::InvalidInput;
            }
        };
        match json::diagram_from_dto(&dto) {
            Ok(diagram) => {
                *out = Box::into_raw(Box::new(TamebarDiagram { diagram }));
                TamebarStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                TamebarStatus::InvalidInput
            }
        }
    })
}

/// Release a diagram handle. NULL is ignored.
///
/// # Safety
/// `diagram` must come from [`tamebar_diagram_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tamebar_diagram_free(diagram: *mut TamebarDiagram) {
    if !diagram.is_null() {
        drop(Box::from_raw(diagram));
    }
}

/// Analyze a diagram: writes the full report JSON (bar codes, monodromy,
/// Betti and Novikov numbers, configurations, checks). Returns
/// `ConsistencyFailure` — with the report still written — when any
/// cross-validation check fails.
///
/// # Safety
/// Same contracts as [`tamebar_rep_decompose`].
#[no_mangle]
pub unsafe extern "C" fn tamebar_diagram_analyze(
    diagram: *const TamebarDiagram,
    json_out: *mut *mut c_char,
) -> TamebarStatus {
    guarded(|| {
        let Some(handle) = diagram.as_ref() else {
            set_error("NULL diagram");
            return TamebarStatus::NullPointer;
        };
        let report = match handle.diagram.analyze() {
            Ok(r) => r,
            Err(e) => {
                set_error(&e.to_string());
                return TamebarStatus::InvalidInput;
            }
        };
        let dto = match json::report_to_dto(&handle.diagram, &report) {
            Ok(d) => d,
            Err(e) => {
                set_error(&e.to_string());
                return TamebarStatus::Internal;
            }
        };
        let failed = dto.checks.iter().filter(|c| !c.passed).count();
        let s = match serde_json::to_string_pretty(&dto) {
            Ok(s) => s,
            Err(e) => {
                set_error(&e.to_string());
                return TamebarStatus::Internal;
            }
        };
        let status = give_string(json_out, s);
        if status == TamebarStatus::Ok && failed > 0 {
            set_error(&format!("{failed} consistency check(s) failed"));
            return TamebarStatus::ConsistencyFailure;
        }
        status
    })
}

/// Level-interval dimensions of the window [from, to] in one degree; writes
/// a small JSON object.
///
/// # Safety
/// Same contracts as [`tamebar_rep_decompose`].
#[no_mangle]
pub unsafe extern "C" fn tamebar_diagram_interval(
    diagram: *const TamebarDiagram,
    from: f64,
    to: f64,
    degree: usize,
    json_out: *mut *mut c_char,
) -> TamebarStatus {
    guarded(|| {
        let Some(handle) = diagram.as_ref() else {
            set_error("NULL diagram");
            return TamebarStatus::NullPointer;
        };
        let report = match handle.diagram.analyze() {
            Ok(r) => r,
            Err(e) => {
                set_error(&e.to_string());
                return TamebarStatus::InvalidInput;
            }
        };
        match report.interval_dims(from, to, degree) {
            Ok(dims) => {
                let v = serde_json::json!({
                    "degree": degree,
                    "from": from,
                    "to": to,
                    "slab": dims.slab,
                    "into_cover": dims.into_cover,
                    "into_base": dims.into_base,
                    "jordan_total_dim": dims.jordan_total_dim,
                    "jordan_lambda1_cells": dims.jordan_lambda1_cells,
                });
                give_string(json_out, serde_json::to_string_pretty(&v).unwrap_or_default())
            }
            Err(e) => {
                set_error(&e.to_string());
                TamebarStatus::InvalidInput
            }
        }
    })
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from one of the `_analyze`/`_decompose`/`_interval`
/// functions and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tamebar_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn cstring(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn parse_decompose_free_cycle() {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../core/fixtures/three_circles_rep.json");
        let text = std::fs::read_to_string(path).unwrap();
        let json = cstring(&text);
        let mut rep: *mut TamebarRep = ptr::null_mut();
        unsafe {
            assert_eq!(tamebar_rep_parse(json.as_ptr(), &mut rep), TamebarStatus::Ok);
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(tamebar_rep_decompose(rep, &mut out), TamebarStatus::Ok);
            let s = CStr::from_ptr(out).to_str().unwrap();
            let v: serde_json::Value = serde_json::from_str(s).unwrap();
            assert_eq!(v["barcodes"].as_array().unwrap().len(), 3);
            tamebar_string_free(out);

            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(
                tamebar_rep_relation_monodromy(rep, &mut out),
                TamebarStatus::Ok
            );
            let s = CStr::from_ptr(out).to_str().unwrap();
            let v: serde_json::Value = serde_json::from_str(s).unwrap();
            assert_eq!(v["dim"], 2);
            tamebar_string_free(out);
            tamebar_rep_free(rep);
        }
    }

    #[test]
    fn analyze_diagram_through_the_abi() {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../core/fixtures/torus_diagram.json");
        let text = std::fs::read_to_string(path).unwrap();
        let json = cstring(&text);
        let mut d: *mut TamebarDiagram = ptr::null_mut();
        unsafe {
            assert_eq!(tamebar_diagram_parse(json.as_ptr(), &mut d), TamebarStatus::Ok);
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(tamebar_diagram_analyze(d, &mut out), TamebarStatus::Ok);
            let v: serde_json::Value =
                serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
            assert_eq!(v["betti"], serde_json::json!([1, 2, 1]));
            tamebar_string_free(out);
            tamebar_diagram_free(d);
        }
    }

    #[test]
    fn error_paths_set_messages() {
        let bad = cstring("{\"nope\": 1}");
        let mut rep: *mut TamebarRep = ptr::null_mut();
        unsafe {
            assert_eq!(
                tamebar_rep_parse(bad.as_ptr(), &mut rep),
                TamebarStatus::InvalidInput
            );
            let msg = CStr::from_ptr(tamebar_last_error()).to_str().unwrap();
            assert!(!msg.is_empty());
            assert_eq!(
                tamebar_rep_parse(ptr::null(), &mut rep),
                TamebarStatus::NullPointer
            );
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(
                tamebar_rep_decompose(ptr::null(), &mut out),
                TamebarStatus::NullPointer
            );
        }
    }
}
