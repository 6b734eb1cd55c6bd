//! C ABI for `critindep`.
//!
//! Graphs and analyses are opaque heap handles released with their `_free`
//! function. Fallible calls return a [`CiStatus`]; on failure the message is
//! available from [`ci_last_error_message`] on the same thread. Vertex lists
//! are copied into caller buffers: pass `NULL`/0 first to learn the length.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use critindep::report::Analysis;
use critindep::{Classification, Format, Graph};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    /// The exact search ran out of nodes; the output is still valid but
    /// carries no independence number.
    BudgetExceeded = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CiFormat {
    /// Detect from the first non-comment line.
    Auto = 0,
    Dimacs = 1,
    EdgeList = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CiClassification {
    Irreducible = 0,
    Reducible = 1,
    TotallyReducible = 2,
}

/// Opaque graph handle.
pub struct CiGraph(Graph);

/// Opaque analysis handle.
pub struct CiAnalysis(Analysis);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: CiStatus, message: impl Into<String>) -> CiStatus {
    set_error(message);
    status
}

fn guard(f: impl FnOnce() -> CiStatus) -> CiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(CiStatus::Panic, "internal panic"),
    }
}

/// Message for the most recent failure on this thread, or `NULL`. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ci_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses `text` (NUL-terminated UTF-8) into a new graph.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ci_graph_parse(text: *const c_char, format: CiFormat, out: *mut *mut CiGraph) -> CiStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(CiStatus::NullPointer, "null argument");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(CiStatus::InvalidUtf8, "graph text is not UTF-8");
        };
        let format = match format {
            CiFormat::Auto => Format::detect(text),
            CiFormat::Dimacs => Format::Dimacs,
            CiFormat::EdgeList => Format::EdgeList,
        };
        match critindep::parse_graph(text, format) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(CiGraph(g)));
                CiStatus::Ok
            }
            Err(e) => fail(CiStatus::Parse, e.to_string()),
        }
    })
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`2 * edge_count` entries, 0-based ids).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (or be `NULL` when
/// `edge_count` is 0) and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ci_graph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut CiGraph,
) -> CiStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && edge_count > 0) {
            return fail(CiStatus::NullPointer, "null argument");
        }
        let flat = if edge_count == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        match Graph::from_edges(n, flat.chunks_exact(2).map(|e| (e[0], e[1]))) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(CiGraph(g)));
                CiStatus::Ok
            }
            Err(e) => fail(CiStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `graph` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ci_graph_free(graph: *mut CiGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle or `NULL` (returns 0).
#[no_mangle]
pub unsafe extern "C" fn ci_graph_vertex_count(graph: *const CiGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `graph` must be a live handle or `NULL` (returns 0).
#[no_mangle]
pub unsafe extern "C" fn ci_graph_edge_count(graph: *const CiGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.m())
}

/// `max |I| − |N(I)|` over independent sets.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ci_critical_difference(graph: *const CiGraph, out: *mut usize) -> CiStatus {
    guard(|| {
        let (Some(g), false) = (graph.as_ref(), out.is_null()) else {
            return fail(CiStatus::NullPointer, "null argument");
        };
        *out = critindep::critical_difference(&g.0);
        CiStatus::Ok
    })
}

/// Independence number through the decomposition. Returns
/// `BudgetExceeded` with `*out` set to the best lower bound found when the
/// search on the residual runs out of nodes.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ci_independence_number(graph: *const CiGraph, node_budget: u64, out: *mut usize) -> CiStatus {
    guard(|| {
        let (Some(g), false) = (graph.as_ref(), out.is_null()) else {
            return fail(CiStatus::NullPointer, "null argument");
        };
        match critindep::independence_number(&g.0, node_budget) {
            Ok(solution) => {
                *out = solution.alpha;
                CiStatus::Ok
            }
            Err(e) => {
                *out = e.lower_bound;
                fail(CiStatus::BudgetExceeded, e.to_string())
            }
        }
    })
}

/// Full analysis. On `BudgetExceeded` the handle is still produced and its
/// alpha is absent.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ci_analyze(graph: *const CiGraph, node_budget: u64, out: *mut *mut CiAnalysis) -> CiStatus {
    guard(|| {
        let (Some(g), false) = (graph.as_ref(), out.is_null()) else {
            return fail(CiStatus::NullPointer, "null argument");
        };
        let analysis = critindep::analyze(&g.0, node_budget);
        let exceeded = analysis.budget_exceeded();
        *out = Box::into_raw(Box::new(CiAnalysis(analysis)));
        if exceeded {
            fail(CiStatus::BudgetExceeded, "exact search exceeded the node budget")
        } else {
            CiStatus::Ok
        }
    })
}

/// # Safety
/// `analysis` must come from [`ci_analyze`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ci_analysis_free(analysis: *mut CiAnalysis) {
    if !analysis.is_null() {
        drop(Box::from_raw(analysis));
    }
}

/// # Safety
/// `analysis` must be a live handle or `NULL` (returns 0).
#[no_mangle]
pub unsafe extern "C" fn ci_analysis_critical_difference(analysis: *const CiAnalysis) -> usize {
    analysis.as_ref().map_or(0, |a| a.0.report.d)
}

/// # Safety
/// `analysis` must be a live handle or `NULL` (returns 0).
#[no_mangle]
pub unsafe extern "C" fn ci_analysis_alpha_prime(analysis: *const CiAnalysis) -> usize {
    analysis.as_ref().map_or(0, |a| a.0.report.alpha_prime)
}

/// Writes the independence number and returns true, or returns false when
/// it is unknown.
///
/// # Safety
/// `analysis` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ci_analysis_alpha(analysis: *const CiAnalysis, out: *mut usize) -> bool {
    match (analysis.as_ref().and_then(|a| a.0.report.alpha), out.is_null()) {
        (Some(alpha), false) => {
            *out = alpha;
            true
        }
        _ => false,
    }
}

/// Matching number, when known (see [`ci_analysis_alpha`]).
///
/// # Safety
/// `analysis` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ci_analysis_matching_number(analysis: *const CiAnalysis, out: *mut usize) -> bool {
    match (analysis.as_ref().and_then(|a| a.0.report.mu), out.is_null()) {
        (Some(mu), false) => {
            *out = mu;
            true
        }
        _ => false,
    }
}

/// # Safety
/// `analysis` must be a live handle or `NULL` (returns false).
#[no_mangle]
pub unsafe extern "C" fn ci_analysis_is_konig_egervary(analysis: *const CiAnalysis) -> bool {
    analysis.as_ref().is_some_and(|a| a.0.report.is_ke)
}

/// # Safety
/// `analysis` must be a live handle; `NULL` yields `Irreducible`.
#[no_mangle]
pub unsafe extern "C" fn ci_analysis_classification(analysis: *const CiAnalysis) -> CiClassification {
    match analysis.as_ref().map(|a| a.0.report.classification) {
        Some(Classification::TotallyReducible) => CiClassification::TotallyReducible,
        Some(Classification::Reducible) => CiClassification::Reducible,
        _ => CiClassification::Irreducible,
    }
}

unsafe fn copy_out(ids: &[usize], buf: *mut usize, cap: usize, len: *mut usize) -> CiStatus {
    if len.is_null() {
        return fail(CiStatus::NullPointer, "null length pointer");
    }
    *len = ids.len();
    if buf.is_null() || cap < ids.len() {
        if buf.is_null() && cap == 0 {
            return CiStatus::Ok;
        }
        return fail(CiStatus::BufferTooSmall, format!("need room for {} ids", ids.len()));
    }
    ptr::copy_nonoverlapping(ids.as_ptr(), buf, ids.len());
    CiStatus::Ok
}

unsafe fn vertex_list(
    analysis: *const CiAnalysis,
    field: fn(&Analysis) -> &[usize],
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> CiStatus {
    guard(|| match analysis.as_ref() {
        Some(a) => copy_out(field(&a.0), buf, cap, len),
        None => fail(CiStatus::NullPointer, "null analysis"),
    })
}

/// Copies X (sorted ids) into `buf`; `*len` receives its size.
///
/// # Safety
/// `analysis` must be a live handle, `buf` must have room for `cap` values
/// (or be `NULL` with `cap` 0), and `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ci_analysis_x(
    analysis: *const CiAnalysis,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> CiStatus {
    vertex_list(analysis, |a| &a.report.x, buf, cap, len)
}

/// Copies the complement of X; see [`ci_analysis_x`].
///
/// # Safety
/// As for [`ci_analysis_x`].
#[no_mangle]
pub unsafe extern "C" fn ci_analysis_x_complement(
    analysis: *const CiAnalysis,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> CiStatus {
    vertex_list(analysis, |a| &a.report.x_complement, buf, cap, len)
}

/// Copies the maximum critical independent set; see [`ci_analysis_x`].
///
/// # Safety
/// As for [`ci_analysis_x`].
#[no_mangle]
pub unsafe extern "C" fn ci_analysis_critical_set(
    analysis: *const CiAnalysis,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> CiStatus {
    vertex_list(analysis, |a| &a.report.critical_set, buf, cap, len)
}

/// The report as a JSON string, to be released with [`ci_string_free`].
/// Returns `NULL` if `analysis` is `NULL`.
///
/// # Safety
/// `analysis` must be a live handle or `NULL`.
#[no_mangle]
pub unsafe extern "C" fn ci_analysis_to_json(analysis: *const CiAnalysis) -> *mut c_char {
    match analysis.as_ref() {
        Some(a) => CString::new(a.0.report.to_json()).map_or(ptr::null_mut(), CString::into_raw),
        None => {
            set_error("null analysis");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ci_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
