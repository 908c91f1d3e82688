//! C interface. Graphs and runs are opaque handles released with their
//! `_free` function; every call returns a [`CcStatus`], and the message of the
//! last failure on the calling thread is available from
//! [`cc_last_error_message`].

use cclique::cli::{execute_on, Algorithm, CliError, GraphSource, RunConfig, RunOutcome, Solution};
use cclique::graph::{self, Graph, GraphFamily, GraphFamilySpec};
use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    /// Null pointer, bad enum value or malformed argument.
    InvalidArgument = 1,
    /// Rejected algorithm parameters or graph specification.
    InvalidParameters = 2,
    /// A simulated protocol broke the communication model.
    ProtocolViolation = 3,
    Io = 4,
    /// The run finished but its output failed the oracle.
    VerificationFailed = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcAlgorithm {
    ForestDecomp = 0,
    ColorA2 = 1,
    ColorA2eps = 2,
    ColorA1eps = 3,
    ColorOa = 4,
    Mis = 5,
    Universal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcFamily {
    /// `size` vertices, `param` forests.
    ForestUnion = 0,
    /// `size` rows, `param` columns.
    Grid = 1,
    Cycle = 2,
    Star = 3,
    Complete = 4,
    /// `size` vertices, each linked to up to `param` earlier ones.
    RandomDegenerate = 5,
}

/// Opaque graph handle.
pub struct CcGraph {
    graph: Graph,
}

/// Opaque handle holding the solution and accounting of one run.
pub struct CcRun {
    outcome: RunOutcome,
    stats_json: String,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: CcStatus, msg: impl Into<String>) -> CcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
    status
}

fn guard(f: impl FnOnce() -> CcStatus) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(CcStatus::Panic, msg)
        }
    }
}

fn graph_status(e: graph::GraphError) -> CcStatus {
    match e {
        graph::GraphError::Io(e) => fail(CcStatus::Io, e.to_string()),
        other => fail(CcStatus::InvalidParameters, other.to_string()),
    }
}

/// Copies `text` into `buf` as a NUL-terminated string, truncating to `len`.
/// Returns the full length without the terminator.
unsafe fn copy_out(text: &str, buf: *mut c_char, len: usize) -> usize {
    if !buf.is_null() && len > 0 {
        let k = text.len().min(len - 1);
        ptr::copy_nonoverlapping(text.as_ptr() as *const c_char, buf, k);
        *buf.add(k) = 0;
    }
    text.len()
}

fn put<T>(out: *mut *mut T, value: T) -> CcStatus {
    // SAFETY: callers checked `out` for null
    unsafe { *out = Box::into_raw(Box::new(value)) };
    CcStatus::Ok
}

/// Message of the last failed call on this thread. Returns its full length;
/// at most `len - 1` bytes and a terminator are written to `buf`.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn cc_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| copy_out(&e.borrow(), buf, len))
}

/// Builds a graph from `m` edges stored as `2m` consecutive vertex ids.
///
/// # Safety
/// `edges` must be valid for `2 * m` reads (or null when `m == 0`); `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_from_edges(n: usize, edges: *const u32, m: usize, out: *mut *mut CcGraph) -> CcStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && m > 0) {
            return fail(CcStatus::InvalidArgument, "null pointer");
        }
        let flat: &[u32] = if m == 0 { &[] } else { std::slice::from_raw_parts(edges, 2 * m) };
        match Graph::from_edges(n, flat.chunks_exact(2).map(|e| (e[0], e[1]))) {
            Ok(graph) => put(out, CcGraph { graph }),
            Err(e) => graph_status(e),
        }
    })
}

/// Generates a graph of the [`CcFamily`] given by `family`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_generate(
    family: u32,
    size: usize,
    param: u32,
    seed: u64,
    out: *mut *mut CcGraph,
) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return fail(CcStatus::InvalidArgument, "null pointer");
        }
        let fam = match family {
            f if f == CcFamily::ForestUnion as u32 => GraphFamily::ForestUnion { n: size, k: param },
            f if f == CcFamily::Grid as u32 => GraphFamily::Grid { rows: size, cols: param as usize },
            f if f == CcFamily::Cycle as u32 => GraphFamily::Cycle { n: size },
            f if f == CcFamily::Star as u32 => GraphFamily::Star { n: size },
            f if f == CcFamily::Complete as u32 => GraphFamily::Complete { n: size },
            f if f == CcFamily::RandomDegenerate as u32 => GraphFamily::RandomDegenerate { n: size, d: param },
            other => return fail(CcStatus::InvalidArgument, format!("unknown family {other}")),
        };
        match graph::generate(&GraphFamilySpec::new(fam, seed)) {
            Ok(graph) => put(out, CcGraph { graph }),
            Err(e) => graph_status(e),
        }
    })
}

/// Reads a graph file in the `p cc` text format.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_load(path: *const c_char, out: *mut *mut CcGraph) -> CcStatus {
    guard(|| {
        if out.is_null() || path.is_null() {
            return fail(CcStatus::InvalidArgument, "null pointer");
        }
        let Ok(path) = CStr::from_ptr(path).to_str() else {
            return fail(CcStatus::InvalidArgument, "path is not UTF-8");
        };
        match graph::load(path) {
            Ok(graph) => put(out, CcGraph { graph }),
            Err(e) => graph_status(e),
        }
    })
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_free(g: *mut CcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_n(g: *const CcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.n())
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_m(g: *const CcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.m())
}

fn algorithm(a: u32) -> Option<Algorithm> {
    const ALL: [(CcAlgorithm, Algorithm); 7] = [
        (CcAlgorithm::ForestDecomp, Algorithm::ForestDecomp),
        (CcAlgorithm::ColorA2, Algorithm::ColorA2),
        (CcAlgorithm::ColorA2eps, Algorithm::ColorA2eps),
        (CcAlgorithm::ColorA1eps, Algorithm::ColorA1eps),
        (CcAlgorithm::ColorOa, Algorithm::ColorOa),
        (CcAlgorithm::Mis, Algorithm::Mis),
        (CcAlgorithm::Universal, Algorithm::Universal),
    ];
    ALL.iter().find(|(c, _)| *c as u32 == a).map(|&(_, alg)| alg)
}

/// Runs `alg` (a [`CcAlgorithm`] value) on a private simulated clique. `a = 0` uses the graph's
/// witness or its degeneracy, `p = 0` the default. The run handle is
/// produced even when the output fails verification, together with
/// `CC_STATUS_VERIFICATION_FAILED`.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_run(
    g: *const CcGraph,
    alg: u32,
    a: u32,
    eps: f64,
    eps_h: f64,
    p: u32,
    out: *mut *mut CcRun,
) -> CcStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(CcStatus::InvalidArgument, "null pointer");
        };
        if !(eps.is_finite() && eps > 0.0 && eps_h.is_finite() && eps_h > 0.0) {
            return fail(CcStatus::InvalidArgument, "eps and eps_h must be positive");
        }
        let Some(alg) = algorithm(alg) else {
            return fail(CcStatus::InvalidArgument, format!("unknown algorithm {alg}"));
        };
        let mut cfg = RunConfig::new(alg, GraphSource::File(Default::default()));
        cfg.a = (a > 0).then_some(a);
        cfg.eps = eps;
        cfg.eps_h = eps_h;
        cfg.p = (p > 0).then_some(p);
        match execute_on(&cfg, g.graph.clone()) {
            Ok(outcome) => {
                let ok = outcome.report.ok;
                let stats_json = serde_json::to_string(&outcome.record).expect("stats serialize");
                let report = outcome.report.to_string();
                put(out, CcRun { outcome, stats_json });
                if ok {
                    CcStatus::Ok
                } else {
                    fail(CcStatus::VerificationFailed, report)
                }
            }
            Err(e @ CliError::Protocol(_)) => fail(CcStatus::ProtocolViolation, e.to_string()),
            Err(e) => fail(CcStatus::InvalidParameters, e.to_string()),
        }
    })
}

/// # Safety
/// `r` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_run_free(r: *mut CcRun) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live run handle.
#[no_mangle]
pub unsafe extern "C" fn cc_run_rounds(r: *const CcRun) -> u64 {
    r.as_ref().map_or(0, |r| r.outcome.record.rounds)
}

/// # Safety
/// `r` must be a live run handle.
#[no_mangle]
pub unsafe extern "C" fn cc_run_lenzen_calls(r: *const CcRun) -> u64 {
    r.as_ref().map_or(0, |r| r.outcome.record.lenzen_calls)
}

/// # Safety
/// `r` must be a live run handle.
#[no_mangle]
pub unsafe extern "C" fn cc_run_verified(r: *const CcRun) -> bool {
    r.as_ref().is_some_and(|r| r.outcome.report.ok)
}

/// Per-vertex values: the color, `1`/`0` for set membership, or the number of
/// outgoing forest edges. Writes `min(n, len)` entries and returns `n`.
///
/// # Safety
/// `r` must be a live run handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn cc_run_values(r: *const CcRun, buf: *mut u32, len: usize) -> usize {
    let Some(r) = r.as_ref() else { return 0 };
    let values: Vec<u32> = match &r.outcome.solution {
        Solution::Colors(c) => c.clone(),
        Solution::Set(s) => s.iter().map(|&b| b as u32).collect(),
        Solution::Labeling(l) => l.parents.iter().map(|p| p.len() as u32).collect(),
    };
    if !buf.is_null() {
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len().min(len));
    }
    values.len()
}

/// Stats record as JSON; same contract as [`cc_last_error_message`].
///
/// # Safety
/// `r` must be a live run handle and `buf` null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn cc_run_stats_json(r: *const CcRun, buf: *mut c_char, len: usize) -> usize {
    r.as_ref().map_or(0, |r| copy_out(&r.stats_json, buf, len))
}

/// Solution in the `v <id> <value>` text format; same contract as
/// [`cc_last_error_message`].
///
/// # Safety
/// `r` must be a live run handle and `buf` null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn cc_run_solution_text(r: *const CcRun, buf: *mut c_char, len: usize) -> usize {
    r.as_ref().map_or(0, |r| copy_out(&r.outcome.solution.to_text(), buf, len))
}
