//! C ABI over the oriented-diameter library.
//!
//! Graphs and orientations cross the boundary as opaque handles that the
//! caller releases with the matching `*_free` function. Every fallible call
//! returns an [`OdStatus`]; on failure the message is available from
//! [`od_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use oriented_diameter::bounds::{self, Epsilon};
use oriented_diameter::oracle::{self, OracleOptions};
use oriented_diameter::{pipeline, robbins_orient, Error, Graph, Orientation};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// The graph has a bridge, is disconnected or is otherwise out of scope.
    Precondition = 4,
    BudgetExceeded = 5,
    /// An internal invariant check failed.
    CertifiedFailure = 6,
    Internal = 7,
}

/// Opaque graph handle.
pub struct OdGraph {
    graph: Graph,
}

/// Opaque handle to a complete orientation of some graph.
pub struct OdOrientation {
    arcs: Vec<(usize, usize)>,
    diameter: Option<usize>,
    bound_floor: Option<i64>,
}

/// Basic invariants of a graph. `girth` is 0 for a forest and `diameter`
/// is -1 for a disconnected graph.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OdGraphInfo {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub girth: usize,
    pub bridgeless: bool,
    pub diameter: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: OdStatus, msg: impl Into<String>) -> OdStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> OdStatus {
    match e {
        Error::Parse { .. } => OdStatus::Parse,
        Error::BudgetExceeded { .. } => OdStatus::BudgetExceeded,
        Error::CertifiedFailure(_) | Error::OrientationConflict(_) | Error::InvalidState(_) => {
            OdStatus::CertifiedFailure
        }
        e if e.is_precondition() => OdStatus::Precondition,
        Error::InvalidArgument(_) => OdStatus::InvalidArgument,
        _ => OdStatus::Internal,
    }
}

fn from_error(e: Error) -> OdStatus {
    let s = status_of(&e);
    fail(s, e.to_string())
}

fn guarded(f: impl FnOnce() -> OdStatus + std::panic::UnwindSafe) -> OdStatus {
    std::panic::catch_unwind(f).unwrap_or_else(|_| fail(OdStatus::Internal, "panic inside the library"))
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn orientation_handle(o: &Orientation<'_>, bound_floor: Option<i64>) -> Result<OdOrientation, Error> {
    Ok(OdOrientation {
        arcs: o.arcs(),
        diameter: o.directed_diameter()?,
        bound_floor,
    })
}

/// Message of the last failure on this thread, or NULL if there was none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn od_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn od_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a simple graph on `n` vertices from `m` edges stored as
/// `edges[2*i], edges[2*i+1]`.
///
/// # Safety
/// `edges` must point to `2*m` readable `size_t` values (it may be NULL when
/// `m` is 0) and `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn od_graph_new(n: usize, edges: *const usize, m: usize, out: *mut *mut OdGraph) -> OdStatus {
    if out.is_null() || (edges.is_null() && m > 0) {
        return fail(OdStatus::NullPointer, "null pointer argument");
    }
    let flat: &[usize] = if m == 0 {
        &[]
    } else {
        // SAFETY: caller guarantees 2*m readable values.
        std::slice::from_raw_parts(edges, 2 * m)
    };
    let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    guarded(move || match Graph::from_edges(n, pairs) {
        Ok(graph) => {
            // SAFETY: checked non-null above.
            unsafe { *out = boxed(OdGraph { graph }) };
            OdStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// Parses a graph in the text format (`n m` header, then one edge per line).
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn od_graph_parse(text: *const c_char, out: *mut *mut OdGraph) -> OdStatus {
    if text.is_null() || out.is_null() {
        return fail(OdStatus::NullPointer, "null pointer argument");
    }
    // SAFETY: caller guarantees a NUL-terminated string.
    let text = match CStr::from_ptr(text).to_str() {
        Ok(s) => s.to_owned(),
        Err(_) => return fail(OdStatus::Parse, "graph text is not UTF-8"),
    };
    guarded(move || match Graph::parse(&text) {
        Ok(graph) => {
            // SAFETY: checked non-null above.
            unsafe { *out = boxed(OdGraph { graph }) };
            OdStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// Releases a graph. NULL is ignored.
///
/// # Safety
/// `g` must be NULL or a handle from `od_graph_new`/`od_graph_parse` that
/// has not been freed.
#[no_mangle]
pub unsafe extern "C" fn od_graph_free(g: *mut OdGraph) {
    if !g.is_null() {
        // SAFETY: caller guarantees ownership.
        drop(Box::from_raw(g));
    }
}

/// Fills `info` with the basic invariants of `g`.
///
/// # Safety
/// `g` must be a live graph handle and `info` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn od_graph_analyze(g: *const OdGraph, info: *mut OdGraphInfo) -> OdStatus {
    if g.is_null() || info.is_null() {
        return fail(OdStatus::NullPointer, "null pointer argument");
    }
    // SAFETY: caller guarantees a live handle.
    let g = &(*g).graph;
    *info = OdGraphInfo {
        n: g.n(),
        m: g.m(),
        min_degree: g.min_degree(),
        girth: g.girth().unwrap_or(0),
        bridgeless: g.is_bridgeless_connected(),
        diameter: g.diameter().map_or(-1, |d| d as i64),
    };
    OdStatus::Ok
}

/// Runs the full construction with `epsilon = eps_num / eps_den` and
/// returns the orientation. The bound it was checked against is available
/// from [`od_orientation_bound_floor`].
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn od_orient(
    g: *const OdGraph,
    eps_num: i64,
    eps_den: i64,
    out: *mut *mut OdOrientation,
) -> OdStatus {
    if g.is_null() || out.is_null() {
        return fail(OdStatus::NullPointer, "null pointer argument");
    }
    // SAFETY: caller guarantees a live handle.
    let g = &(*g).graph;
    guarded(move || {
        let run = || -> Result<OdOrientation, Error> {
            let eps = Epsilon::new(eps_num as i128, eps_den as i128)?;
            let r = pipeline::run(g, eps)?;
            if !r.invariants_hold() {
                return Err(Error::CertifiedFailure("an invariant check failed".into()));
            }
            let floor = i64::try_from(r.bound.total_floor()).ok();
            orientation_handle(&r.orientation, floor)
        };
        match run() {
            Ok(h) => {
                // SAFETY: checked non-null above.
                unsafe { *out = boxed(h) };
                OdStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Strong orientation by depth-first search.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn od_robbins(g: *const OdGraph, out: *mut *mut OdOrientation) -> OdStatus {
    if g.is_null() || out.is_null() {
        return fail(OdStatus::NullPointer, "null pointer argument");
    }
    // SAFETY: caller guarantees a live handle.
    let g = &(*g).graph;
    guarded(move || match robbins_orient(g).and_then(|o| orientation_handle(&o, None)) {
        Ok(h) => {
            // SAFETY: checked non-null above.
            unsafe { *out = boxed(h) };
            OdStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// Exact oriented diameter by exhaustive search over graphs with at most
/// `budget` edges. Writes the optimum to `optimum` and, if `out` is not
/// NULL, an optimal orientation to `out`.
///
/// # Safety
/// `g` must be a live graph handle, `optimum` a valid pointer and `out`
/// NULL or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn od_oracle(
    g: *const OdGraph,
    budget: usize,
    jobs: usize,
    optimum: *mut usize,
    out: *mut *mut OdOrientation,
) -> OdStatus {
    if g.is_null() || optimum.is_null() {
        return fail(OdStatus::NullPointer, "null pointer argument");
    }
    // SAFETY: caller guarantees a live handle.
    let g = &(*g).graph;
    guarded(move || {
        let r = match oracle::exact_oriented_diameter(g, OracleOptions { budget, jobs }) {
            Ok(r) => r,
            Err(e) => return from_error(e),
        };
        // SAFETY: checked non-null above.
        unsafe { *optimum = r.optimum };
        if !out.is_null() {
            let h = OdOrientation {
                arcs: r.witness,
                diameter: Some(r.optimum),
                bound_floor: None,
            };
            // SAFETY: checked non-null.
            unsafe { *out = boxed(h) };
        }
        OdStatus::Ok
    })
}

/// Releases an orientation. NULL is ignored.
///
/// # Safety
/// `o` must be NULL or a live orientation handle.
#[no_mangle]
pub unsafe extern "C" fn od_orientation_free(o: *mut OdOrientation) {
    if !o.is_null() {
        // SAFETY: caller guarantees ownership.
        drop(Box::from_raw(o));
    }
}

/// Number of arcs, equal to the number of edges of the graph.
///
/// # Safety
/// `o` must be a live orientation handle.
#[no_mangle]
pub unsafe extern "C" fn od_orientation_arc_count(o: *const OdOrientation) -> usize {
    if o.is_null() {
        return 0;
    }
    (*o).arcs.len()
}

/// Copies the arcs as `tails[i] -> heads[i]` for `i < len`. `len` must be
/// at least [`od_orientation_arc_count`].
///
/// # Safety
/// `o` must be a live handle and `tails`, `heads` must each point to `len`
/// writable `size_t` values.
#[no_mangle]
pub unsafe extern "C" fn od_orientation_arcs(
    o: *const OdOrientation,
    tails: *mut usize,
    heads: *mut usize,
    len: usize,
) -> OdStatus {
    if o.is_null() || tails.is_null() || heads.is_null() {
        return fail(OdStatus::NullPointer, "null pointer argument");
    }
    let arcs = &(*o).arcs;
    if len < arcs.len() {
        return fail(
            OdStatus::InvalidArgument,
            format!("buffer holds {len} arcs, need {}", arcs.len()),
        );
    }
    for (i, &(t, h)) in arcs.iter().enumerate() {
        *tails.add(i) = t;
        *heads.add(i) = h;
    }
    OdStatus::Ok
}

/// Directed diameter of the orientation. Fails with `Precondition` if the
/// orientation is not strong.
///
/// # Safety
/// `o` must be a live handle and `diameter` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn od_orientation_diameter(o: *const OdOrientation, diameter: *mut usize) -> OdStatus {
    if o.is_null() || diameter.is_null() {
        return fail(OdStatus::NullPointer, "null pointer argument");
    }
    match (*o).diameter {
        Some(d) => {
            *diameter = d;
            OdStatus::Ok
        }
        None => fail(OdStatus::Precondition, "orientation is not strong"),
    }
}

/// Floor of the bound the orientation was checked against. Only set for
/// orientations from [`od_orient`]; `InvalidArgument` otherwise.
///
/// # Safety
/// `o` must be a live handle and `floor` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn od_orientation_bound_floor(o: *const OdOrientation, floor: *mut i64) -> OdStatus {
    if o.is_null() || floor.is_null() {
        return fail(OdStatus::NullPointer, "null pointer argument");
    }
    match (*o).bound_floor {
        Some(b) => {
            *floor = b;
            OdStatus::Ok
        }
        None => fail(OdStatus::InvalidArgument, "orientation carries no bound"),
    }
}

/// Ball-size function `h(delta, g)`; returns -1 for `g < 3`.
#[no_mangle]
pub extern "C" fn od_bound_h(delta: usize, girth: usize) -> i64 {
    if girth < 3 {
        return -1;
    }
    i64::try_from(bounds::h(delta, girth)).unwrap_or(i64::MAX)
}
