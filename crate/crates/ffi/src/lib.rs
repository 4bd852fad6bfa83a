//! C ABI over `mrdom`.
//!
//! Graphs and solutions are opaque heap handles released with their
//! `*_free` function. Every fallible call returns an [`MrStatus`]; on
//! failure [`mr_last_error`] describes the most recent error on the
//! calling thread. Labels cross the boundary as `int8_t` values -1, 1, 2.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mrdom::closed_forms::predicted_exact;
use mrdom::mrdf::validate;
use mrdom::solver::solve;
use mrdom::{Error, Graph, GraphSpec, Labeling, OptResult, SolveOptions};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MrStatus {
    Ok = 0,
    NullPointer = 1,
    /// Text that is not UTF-8, or a malformed spec, edge list or label.
    Parse = 2,
    /// Parameters outside a family's or operation's domain.
    InvalidArgument = 3,
    /// Graph too large for the requested exact method.
    CapExceeded = 4,
    Io = 5,
    /// A Rust panic was caught at the boundary.
    Internal = 6,
}

/// Opaque graph handle.
pub struct MrGraph {
    graph: Graph,
}

/// Opaque solver result handle.
pub struct MrSolution {
    result: OptResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("NUL bytes removed"));
}

fn status_of(e: &Error) -> MrStatus {
    match e {
        Error::EdgeList { .. } | Error::InvalidLabel(_) | Error::SpecSyntax { .. } | Error::UnknownTheorem(_) => {
            MrStatus::Parse
        }
        Error::CapExceeded { .. } => MrStatus::CapExceeded,
        Error::Io(_) => MrStatus::Io,
        _ => MrStatus::InvalidArgument,
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), MrStatus>) -> MrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MrStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            MrStatus::Internal
        }
    }
}

fn fail(e: Error) -> MrStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, MrStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(MrStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        MrStatus::Parse
    })
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, MrStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        MrStatus::NullPointer
    })
}

fn null_out<T>(out: *mut T) -> Result<(), MrStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(MrStatus::NullPointer);
    }
    Ok(())
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Generates a graph from a spec string such as `wheel(8)` or
/// `corona(complete(3),cycle(4))`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_graph_from_spec(spec: *const c_char, out: *mut *mut MrGraph) -> MrStatus {
    guard(|| {
        null_out(out)?;
        let spec: GraphSpec = text(spec)?.parse().map_err(fail)?;
        let graph = spec.generate().map_err(fail)?;
        *out = Box::into_raw(Box::new(MrGraph { graph }));
        Ok(())
    })
}

/// Parses an edge list (`n m` header, then `u v` lines).
///
/// # Safety
/// `edge_list` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_graph_from_edge_list(edge_list: *const c_char, out: *mut *mut MrGraph) -> MrStatus {
    guard(|| {
        null_out(out)?;
        let graph = Graph::parse_edge_list(text(edge_list)?).map_err(fail)?;
        *out = Box::into_raw(Box::new(MrGraph { graph }));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library that was not freed.
#[no_mangle]
pub unsafe extern "C" fn mr_graph_free(g: *mut MrGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mr_graph_order(g: *const MrGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.order())
}

/// Edge count; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mr_graph_edge_count(g: *const MrGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Canonical edge list; release with [`mr_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_graph_to_edge_list(g: *const MrGraph, out: *mut *mut c_char) -> MrStatus {
    guard(|| {
        null_out(out)?;
        let g = handle(g)?;
        *out = CString::new(g.graph.to_edge_list())
            .expect("no NUL in edge list")
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn mr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Checks a labeling of `len` values against the graph.
///
/// # Safety
/// `labels` must point to `len` readable values; `is_valid` and `weight`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_validate(
    g: *const MrGraph,
    labels: *const i8,
    len: usize,
    is_valid: *mut bool,
    weight: *mut i64,
) -> MrStatus {
    guard(|| {
        null_out(is_valid)?;
        null_out(weight)?;
        let g = handle(g)?;
        let values: Vec<i64> = if len == 0 {
            Vec::new()
        } else {
            if labels.is_null() {
                set_error("null label array");
                return Err(MrStatus::NullPointer);
            }
            std::slice::from_raw_parts(labels, len)
                .iter()
                .map(|&v| v as i64)
                .collect()
        };
        let f = Labeling::from_values(&values).map_err(fail)?;
        let rep = validate(&g.graph, &f).map_err(fail)?;
        *is_valid = rep.is_valid;
        *weight = rep.weight;
        Ok(())
    })
}

/// Exact optimum by branch and bound on `threads` workers (at least 1).
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_solve(g: *const MrGraph, threads: u32, out: *mut *mut MrSolution) -> MrStatus {
    guard(|| {
        null_out(out)?;
        let g = handle(g)?;
        let opts = SolveOptions {
            threads: threads as usize,
            ..SolveOptions::default()
        };
        let result = solve(&g.graph, &opts).map_err(fail)?;
        *out = Box::into_raw(Box::new(MrSolution { result }));
        Ok(())
    })
}

/// # Safety
/// `s` must be a live solution handle.
#[no_mangle]
pub unsafe extern "C" fn mr_solution_optimum(s: *const MrSolution) -> i64 {
    s.as_ref().map_or(0, |s| s.result.optimum)
}

/// # Safety
/// `s` must be a live solution handle.
#[no_mangle]
pub unsafe extern "C" fn mr_solution_proven(s: *const MrSolution) -> bool {
    s.as_ref().is_some_and(|s| s.result.proven)
}

/// Copies up to `cap` witness labels into `buf` and returns the full
/// witness length; call with `cap = 0` to query the size.
///
/// # Safety
/// `s` must be a live solution handle; `buf` must have room for `cap`
/// values.
#[no_mangle]
pub unsafe extern "C" fn mr_solution_witness(s: *const MrSolution, buf: *mut i8, cap: usize) -> usize {
    let Some(s) = s.as_ref() else { return 0 };
    let values = s.result.witness.values();
    if !buf.is_null() {
        for (i, v) in values.iter().take(cap).enumerate() {
            *buf.add(i) = *v as i8;
        }
    }
    values.len()
}

/// # Safety
/// `s` must be null or a solution handle that was not freed.
#[no_mangle]
pub unsafe extern "C" fn mr_solution_free(s: *mut MrSolution) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Closed-form exact value for a spec. `*has_value` is false when no
/// exact formula applies.
///
/// # Safety
/// `spec` must be a NUL-terminated string; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_predicted_exact(spec: *const c_char, has_value: *mut bool, value: *mut i64) -> MrStatus {
    guard(|| {
        null_out(has_value)?;
        null_out(value)?;
        let spec: GraphSpec = text(spec)?.parse().map_err(fail)?;
        match predicted_exact(&spec).map_err(fail)? {
            Some(v) => {
                *has_value = true;
                *value = v;
            }
            None => {
                *has_value = false;
                *value = 0;
            }
        }
        Ok(())
    })
}
