//! C interface to `degseq`.
//!
//! Graphs and reports are opaque heap handles released with the matching
//! `*_free` function. Every fallible call returns a [`DsStatus`]; the message
//! of the last failure on the calling thread is available from
//! [`ds_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use degseq::arcswap::{recognize, ArcSwapReport};
use degseq::chain::{run_chain, ChainConfig, ChainMode};
use degseq::realize::{erdos_gallai_violation, fulkerson_chen_violation, realize_directed, realize_undirected};
use degseq::{DegreeSequence, DiDegreeSequence, Digraph, Error, Graph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DsStatus {
    Ok = 0,
    InvalidInput = 1,
    NotRealizable = 2,
    InvalidMove = 3,
    ResourceLimit = 4,
    Inconsistent = 5,
    Io = 6,
    NullPointer = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DsMode {
    /// 2-swaps plus 3-cycle reorientation.
    Full = 0,
    /// 2-swaps only.
    Plain = 1,
}

/// Undirected realization.
pub struct DsGraph(Graph);

/// Directed realization.
pub struct DsDigraph(Digraph);

/// Result of arc-swap recognition.
pub struct DsArcSwapReport(ArcSwapReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DsStatus {
    match e {
        Error::InvalidInput(_) | Error::Parse { .. } => DsStatus::InvalidInput,
        Error::NotRealizable(_) => DsStatus::NotRealizable,
        Error::InvalidMove(_) => DsStatus::InvalidMove,
        Error::ResourceLimit(_) => DsStatus::ResourceLimit,
        Error::Inconsistent(_) => DsStatus::Inconsistent,
        Error::Io(_) => DsStatus::Io,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (DsStatus, String)>) -> DsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            DsStatus::Panic
        }
    }
}

fn lib(e: Error) -> (DsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (DsStatus, String) {
    (DsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn input<'a, T>(p: *const T, n: usize, what: &str) -> Result<&'a [T], (DsStatus, String)> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, n))
}

unsafe fn write_pairs(
    pairs: &[(usize, usize)],
    buf: *mut usize,
    cap: usize,
    written: *mut usize,
) -> Result<(), (DsStatus, String)> {
    if written.is_null() {
        return Err(null("written"));
    }
    *written = pairs.len();
    if cap < 2 * pairs.len() {
        return Err((DsStatus::BufferTooSmall, format!("need {} slots, got {cap}", 2 * pairs.len())));
    }
    if pairs.is_empty() {
        return Ok(());
    }
    if buf.is_null() {
        return Err(null("buf"));
    }
    let out = slice::from_raw_parts_mut(buf, 2 * pairs.len());
    for (i, &(u, v)) in pairs.iter().enumerate() {
        out[2 * i] = u;
        out[2 * i + 1] = v;
    }
    Ok(())
}

fn directed_sequence(out_deg: &[usize], in_deg: &[usize]) -> Result<DiDegreeSequence, (DsStatus, String)> {
    DiDegreeSequence::from_parts(out_deg, in_deg).map_err(lib)
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ds_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Sets `*graphical` to whether `degrees[0..n]` is graphical.
///
/// # Safety
/// `degrees` must point to `n` readable values and `graphical` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_is_graphical(degrees: *const usize, n: usize, graphical: *mut bool) -> DsStatus {
    guard(|| {
        let s = DegreeSequence::new(input(degrees, n, "degrees")?.to_vec()).map_err(lib)?;
        if graphical.is_null() {
            return Err(null("graphical"));
        }
        *graphical = erdos_gallai_violation(&s).is_none();
        Ok(())
    })
}

/// Sets `*graphical` to whether the out/in sequence is digraphical.
///
/// # Safety
/// `out_deg` and `in_deg` must point to `n` readable values each.
#[no_mangle]
pub unsafe extern "C" fn ds_is_digraphical(
    out_deg: *const usize,
    in_deg: *const usize,
    n: usize,
    graphical: *mut bool,
) -> DsStatus {
    guard(|| {
        let s = directed_sequence(input(out_deg, n, "out_deg")?, input(in_deg, n, "in_deg")?)?;
        if graphical.is_null() {
            return Err(null("graphical"));
        }
        *graphical = fulkerson_chen_violation(&s).is_none();
        Ok(())
    })
}

/// Builds a realization of `degrees[0..n]`.
///
/// # Safety
/// `degrees` must point to `n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_graph_realize(degrees: *const usize, n: usize, out: *mut *mut DsGraph) -> DsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = DegreeSequence::new(input(degrees, n, "degrees")?.to_vec()).map_err(lib)?;
        let g = realize_undirected(&s).map_err(lib)?;
        *out = Box::into_raw(Box::new(DsGraph(g)));
        Ok(())
    })
}

/// Runs `tau` undirected chain steps on `g` in place.
///
/// # Safety
/// `g` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ds_graph_sample(g: *mut DsGraph, tau: u64, seed: u64) -> DsStatus {
    guard(|| {
        let g = g.as_mut().ok_or_else(|| null("g"))?;
        g.0 = run_chain(&g.0, &ChainConfig::new(ChainMode::Undirected, tau, seed)).map_err(lib)?.graph;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn ds_graph_order(g: *const DsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// # Safety
/// `g` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn ds_graph_size(g: *const DsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.size())
}

/// Writes the sorted edges as `u0 v0 u1 v1 ...` into `buf` (capacity `cap`
/// values) and the edge count into `*written`.
///
/// # Safety
/// `g` must be a live handle; `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn ds_graph_edges(g: *const DsGraph, buf: *mut usize, cap: usize, written: *mut usize) -> DsStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("g"))?;
        write_pairs(&g.0.sorted_edges(), buf, cap, written)
    })
}

/// # Safety
/// `g` must be a handle from [`ds_graph_realize`] not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn ds_graph_free(g: *mut DsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Builds a realization of the out/in sequence.
///
/// # Safety
/// `out_deg` and `in_deg` must point to `n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_digraph_realize(
    out_deg: *const usize,
    in_deg: *const usize,
    n: usize,
    out: *mut *mut DsDigraph,
) -> DsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = directed_sequence(input(out_deg, n, "out_deg")?, input(in_deg, n, "in_deg")?)?;
        let g = realize_directed(&s).map_err(lib)?;
        *out = Box::into_raw(Box::new(DsDigraph(g)));
        Ok(())
    })
}

/// Runs `tau` directed chain steps on `g` in place.
///
/// # Safety
/// `g` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ds_digraph_sample(g: *mut DsDigraph, mode: DsMode, tau: u64, seed: u64) -> DsStatus {
    guard(|| {
        let g = g.as_mut().ok_or_else(|| null("g"))?;
        let mode = match mode {
            DsMode::Full => ChainMode::Full,
            DsMode::Plain => ChainMode::Plain,
        };
        g.0 = run_chain(&g.0, &ChainConfig::new(mode, tau, seed)).map_err(lib)?.graph;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn ds_digraph_order(g: *const DsDigraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// # Safety
/// `g` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn ds_digraph_size(g: *const DsDigraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.size())
}

/// Writes the sorted arcs as `tail0 head0 tail1 head1 ...`.
///
/// # Safety
/// `g` must be a live handle; `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn ds_digraph_arcs(
    g: *const DsDigraph,
    buf: *mut usize,
    cap: usize,
    written: *mut usize,
) -> DsStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("g"))?;
        write_pairs(&g.0.sorted_arcs(), buf, cap, written)
    })
}

/// # Safety
/// `g` must be a handle from [`ds_digraph_realize`] not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn ds_digraph_free(g: *mut DsDigraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Recognizes whether the out/in sequence is an arc-swap sequence.
///
/// # Safety
/// `out_deg` and `in_deg` must point to `n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ds_recognize(
    out_deg: *const usize,
    in_deg: *const usize,
    n: usize,
    out: *mut *mut DsArcSwapReport,
) -> DsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = directed_sequence(input(out_deg, n, "out_deg")?, input(in_deg, n, "in_deg")?)?;
        let r = recognize(&s).map_err(lib)?;
        *out = Box::into_raw(Box::new(DsArcSwapReport(r)));
        Ok(())
    })
}

/// # Safety
/// `r` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn ds_report_is_arc_swap(r: *const DsArcSwapReport) -> bool {
    r.as_ref().is_some_and(|r| r.0.is_arc_swap)
}

/// Number of induced cycle sets; the state graph has `2^count` components.
///
/// # Safety
/// `r` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn ds_report_cycle_set_count(r: *const DsArcSwapReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.cycle_sets.len())
}

/// Copies the sorted vertex triple of cycle set `index` into `vertices`.
///
/// # Safety
/// `r` must be a live report handle; `vertices` must have room for 3 values.
#[no_mangle]
pub unsafe extern "C" fn ds_report_cycle_set(
    r: *const DsArcSwapReport,
    index: usize,
    vertices: *mut usize,
) -> DsStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("r"))?;
        if vertices.is_null() {
            return Err(null("vertices"));
        }
        let set = r
            .0
            .cycle_sets
            .get(index)
            .ok_or_else(|| (DsStatus::InvalidInput, format!("cycle set {index} out of range")))?;
        slice::from_raw_parts_mut(vertices, 3).copy_from_slice(&set.vertices);
        Ok(())
    })
}

/// # Safety
/// `r` must be a handle from [`ds_recognize`] not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn ds_report_free(r: *mut DsArcSwapReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
