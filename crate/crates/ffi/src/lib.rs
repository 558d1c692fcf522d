//! C ABI over `rainbow_saturation`.
//!
//! Graphs and colorings are opaque handles created and freed through this
//! API. Every fallible call returns an [`RsStatus`]; on failure the message
//! is available from [`rs_last_error`] on the same thread. Strings handed
//! out must be released with [`rs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rainbow_saturation::cnf::{encode, formula_to_dimacs, Encoding};
use rainbow_saturation::coloring::{verifies, Color, EdgeColoring};
use rainbow_saturation::constructions::{
    build_c4_construction, build_c5_construction, build_c6_construction, build_named_fixture,
    ConstructionResult,
};
use rainbow_saturation::graph6::{parse_graph6, to_graph6};
use rainbow_saturation::maxfree::max_cycle_free_subgraph;
use rainbow_saturation::saturation::{check_rainbow_saturated, Tri};
use rainbow_saturation::search::{search, Budget, SearchConfig, Status};
use rainbow_saturation::{Error, Graph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    TooLarge = 4,
    Panic = 5,
}

/// Outcome of a search.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsVerdict {
    Feasible = 0,
    Infeasible = 1,
    Unknown = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsTri {
    False = 0,
    True = 1,
    Unknown = 2,
}

/// Search limits; zero means unlimited.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct RsBudget {
    pub max_nodes: u64,
    pub max_millis: u64,
}

/// Opaque graph handle.
pub struct RsGraph(Graph);

/// Opaque coloring handle.
pub struct RsColoring(EdgeColoring);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: RsStatus, msg: impl Into<String>) -> RsStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> RsStatus {
    let status = match e {
        Error::TooLarge(_) => RsStatus::TooLarge,
        _ => RsStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> RsStatus) -> RsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(RsStatus::Panic, "internal panic"),
    }
}

impl From<RsBudget> for Budget {
    fn from(b: RsBudget) -> Self {
        Budget {
            max_nodes: (b.max_nodes > 0).then_some(b.max_nodes),
            max_millis: (b.max_millis > 0).then_some(b.max_millis),
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, RsStatus> {
    if p.is_null() {
        return Err(fail(RsStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(RsStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn graph_arg<'a>(g: *const RsGraph) -> Result<&'a Graph, RsStatus> {
    g.as_ref()
        .map(|g| &g.0)
        .ok_or_else(|| fail(RsStatus::NullPointer, "null graph"))
}

fn give<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn rs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a graph6 string.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rs_graph_from_graph6(text: *const c_char, out: *mut *mut RsGraph) -> RsStatus {
    guard(|| {
        if out.is_null() {
            return fail(RsStatus::NullPointer, "null output pointer");
        }
        let s = match str_arg(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match parse_graph6(s) {
            Ok(g) => {
                *out = give(RsGraph(g));
                RsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Builds a graph from `edge_count` vertex pairs laid out as
/// `u0, v0, u1, v1, ...`.
///
/// # Safety
/// `pairs` must point to `2 * edge_count` readable values (or be null when
/// `edge_count` is zero) and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rs_graph_from_edges(
    n: usize,
    pairs: *const u32,
    edge_count: usize,
    out: *mut *mut RsGraph,
) -> RsStatus {
    guard(|| {
        if out.is_null() || (pairs.is_null() && edge_count > 0) {
            return fail(RsStatus::NullPointer, "null pointer");
        }
        let flat: &[u32] = if edge_count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(pairs, 2 * edge_count)
        };
        let edges = flat.chunks(2).map(|p| (p[0] as usize, p[1] as usize));
        match Graph::new(n, edges) {
            Ok(g) => {
                *out = give(RsGraph(g));
                RsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rs_graph_free(g: *mut RsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle or null.
#[no_mangle]
pub unsafe extern "C" fn rs_graph_vertex_count(g: *const RsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be a live graph handle or null.
#[no_mangle]
pub unsafe extern "C" fn rs_graph_edge_count(g: *const RsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Endpoints of edge `index` in canonical order.
///
/// # Safety
/// `g` must be live; `u` and `v` valid.
#[no_mangle]
pub unsafe extern "C" fn rs_graph_edge(g: *const RsGraph, index: usize, u: *mut usize, v: *mut usize) -> RsStatus {
    guard(|| {
        let g = match graph_arg(g) {
            Ok(g) => g,
            Err(st) => return st,
        };
        if u.is_null() || v.is_null() {
            return fail(RsStatus::NullPointer, "null output pointer");
        }
        if index >= g.edge_count() {
            return fail(RsStatus::InvalidInput, format!("edge index {index} out of range"));
        }
        (*u, *v) = g.edge(index);
        RsStatus::Ok
    })
}

/// graph6 encoding; free with [`rs_string_free`].
///
/// # Safety
/// `g` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rs_graph_to_graph6(g: *const RsGraph, out: *mut *mut c_char) -> RsStatus {
    guard(|| {
        let g = match graph_arg(g) {
            Ok(g) => g,
            Err(st) => return st,
        };
        if out.is_null() {
            return fail(RsStatus::NullPointer, "null output pointer");
        }
        match to_graph6(g) {
            Ok(s) => {
                *out = CString::new(s).expect("graph6 has no NUL").into_raw();
                RsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn rs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the construction for `C_k` (`k` in 4, 5, 6) on `n` vertices,
/// returning the graph and its witness coloring. `coloring` may be null.
///
/// # Safety
/// `graph` must be valid; `coloring` valid or null.
#[no_mangle]
pub unsafe extern "C" fn rs_construction_build(
    k: usize,
    n: usize,
    graph: *mut *mut RsGraph,
    coloring: *mut *mut RsColoring,
) -> RsStatus {
    guard(|| {
        let r = match k {
            4 => build_c4_construction(n),
            5 => build_c5_construction(n),
            6 => build_c6_construction(n),
            _ => return fail(RsStatus::InvalidInput, format!("no construction for k = {k}")),
        };
        hand_out(r, graph, coloring)
    })
}

/// Builds a named fixture: `core`, `core+T1`, `H` or `F`.
///
/// # Safety
/// `name` must be NUL-terminated; `graph` valid; `coloring` valid or null.
#[no_mangle]
pub unsafe extern "C" fn rs_fixture_build(
    name: *const c_char,
    graph: *mut *mut RsGraph,
    coloring: *mut *mut RsColoring,
) -> RsStatus {
    guard(|| {
        let name = match str_arg(name) {
            Ok(s) => s,
            Err(st) => return st,
        };
        hand_out(build_named_fixture(name), graph, coloring)
    })
}

unsafe fn hand_out(
    r: rainbow_saturation::Result<ConstructionResult>,
    graph: *mut *mut RsGraph,
    coloring: *mut *mut RsColoring,
) -> RsStatus {
    if graph.is_null() {
        return fail(RsStatus::NullPointer, "null output pointer");
    }
    match r {
        Ok(r) => {
            *graph = give(RsGraph(r.graph));
            if !coloring.is_null() {
                *coloring = r.witness.map_or(ptr::null_mut(), |w| give(RsColoring(w)));
            }
            RsStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// A coloring from one color per edge in canonical edge order.
///
/// # Safety
/// `colors` must point to `len` values (or be null when `len` is zero);
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rs_coloring_new(colors: *const u16, len: usize, out: *mut *mut RsColoring) -> RsStatus {
    guard(|| {
        if out.is_null() || (colors.is_null() && len > 0) {
            return fail(RsStatus::NullPointer, "null pointer");
        }
        let v: Vec<Color> = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(colors, len).to_vec()
        };
        *out = give(RsColoring(EdgeColoring::new(v)));
        RsStatus::Ok
    })
}

/// # Safety
/// `c` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rs_coloring_free(c: *mut RsColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn rs_coloring_len(c: *const RsColoring) -> usize {
    c.as_ref().map_or(0, |c| c.0.len())
}

/// Copies up to `cap` colors into `buf`; returns the number copied.
///
/// # Safety
/// `c` must be live; `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn rs_coloring_copy(c: *const RsColoring, buf: *mut u16, cap: usize) -> usize {
    let (Some(c), false) = (c.as_ref(), buf.is_null()) else {
        return 0;
    };
    let colors = c.0.colors();
    let count = colors.len().min(cap);
    ptr::copy_nonoverlapping(colors.as_ptr(), buf, count);
    count
}

/// Whether `c` is a proper coloring of `g` without a rainbow `C_k`.
///
/// # Safety
/// Handles must be live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rs_verify_coloring(
    g: *const RsGraph,
    c: *const RsColoring,
    k: usize,
    out: *mut bool,
) -> RsStatus {
    guard(|| {
        let g = match graph_arg(g) {
            Ok(g) => g,
            Err(st) => return st,
        };
        let Some(c) = c.as_ref() else {
            return fail(RsStatus::NullPointer, "null coloring");
        };
        if out.is_null() {
            return fail(RsStatus::NullPointer, "null output pointer");
        }
        if let Err(e) = c.0.check_total(g) {
            return from_error(e);
        }
        *out = verifies(g, &c.0, k);
        RsStatus::Ok
    })
}

/// Searches for a proper coloring without a rainbow `C_k`. With `colors`
/// zero the palette is `|E|`; otherwise exactly `colors` colors must all be
/// used. A witness is stored in `witness` (when non-null) on success.
///
/// # Safety
/// `g` must be live; `verdict` valid; `witness` valid or null.
#[no_mangle]
pub unsafe extern "C" fn rs_find_coloring(
    g: *const RsGraph,
    k: usize,
    colors: usize,
    budget: RsBudget,
    verdict: *mut RsVerdict,
    witness: *mut *mut RsColoring,
) -> RsStatus {
    guard(|| {
        let g = match graph_arg(g) {
            Ok(g) => g,
            Err(st) => return st,
        };
        if verdict.is_null() {
            return fail(RsStatus::NullPointer, "null output pointer");
        }
        let config = if colors == 0 {
            SearchConfig::feasibility(g, k, budget.into())
        } else {
            SearchConfig::exact(k, colors, budget.into())
        };
        match search(g, &config) {
            Ok(v) => {
                *verdict = match v.status {
                    Status::Feasible => RsVerdict::Feasible,
                    Status::Infeasible => RsVerdict::Infeasible,
                    Status::Unknown => RsVerdict::Unknown,
                };
                if !witness.is_null() {
                    *witness = v.witness.map_or(ptr::null_mut(), |w| give(RsColoring(w)));
                }
                RsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Rainbow `C_k`-saturation of `g`; the budget applies per search.
///
/// # Safety
/// `g` must be live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rs_check_saturated(
    g: *const RsGraph,
    k: usize,
    budget: RsBudget,
    out: *mut RsTri,
) -> RsStatus {
    guard(|| {
        let g = match graph_arg(g) {
            Ok(g) => g,
            Err(st) => return st,
        };
        if out.is_null() {
            return fail(RsStatus::NullPointer, "null output pointer");
        }
        match check_rainbow_saturated(g, k, budget.into()) {
            Ok(r) => {
                *out = match r.is_saturated {
                    Tri::True => RsTri::True,
                    Tri::False => RsTri::False,
                    Tri::Unknown => RsTri::Unknown,
                };
                RsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Edge count of a largest `C_k`-free spanning subgraph.
///
/// # Safety
/// `g` must be live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rs_max_free(g: *const RsGraph, k: usize, out: *mut usize) -> RsStatus {
    guard(|| {
        let g = match graph_arg(g) {
            Ok(g) => g,
            Err(st) => return st,
        };
        if out.is_null() {
            return fail(RsStatus::NullPointer, "null output pointer");
        }
        match max_cycle_free_subgraph(g, k) {
            Ok(r) => {
                *out = r.best_count;
                RsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// DIMACS text of the CNF encoding; free with [`rs_string_free`].
///
/// # Safety
/// `g` must be live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rs_export_cnf(
    g: *const RsGraph,
    k: usize,
    colors: usize,
    exact: bool,
    out: *mut *mut c_char,
) -> RsStatus {
    guard(|| {
        let g = match graph_arg(g) {
            Ok(g) => g,
            Err(st) => return st,
        };
        if out.is_null() {
            return fail(RsStatus::NullPointer, "null output pointer");
        }
        let encoding = if exact { Encoding::ExactColors } else { Encoding::Feasibility };
        match encode(g, k, colors, encoding) {
            Ok(f) => {
                *out = CString::new(formula_to_dimacs(&f)).expect("DIMACS has no NUL").into_raw();
                RsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
