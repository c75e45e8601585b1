//! C interface to the `sumperfect` toolkit.
//!
//! Graphs live behind an opaque [`SpGraph`] handle created by one of the
//! constructors and released with [`sp_graph_free`]. Every fallible call
//! returns an [`SpStatus`] and writes its result through an out-pointer only
//! on success. Panics never cross the boundary; they surface as
//! `SP_STATUS_PANIC`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sumperfect::invariants::{
    clique_size, deficit, matching_number, max_deficiency, stability_size, triangle_count,
};
use sumperfect::recognition::{is_split, is_sum_perfect, is_threshold, Evidence};
use sumperfect::{emit_graph6, parse_graph6, Error, Graph};

/// Opaque graph handle.
pub struct SpGraph {
    graph: Graph,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidVertex = 2,
    Loop = 3,
    /// More vertices than the library (or the requested operation) supports.
    Capacity = 4,
    Parse = 5,
    /// The operation's exhaustive search is limited to smaller graphs.
    Envelope = 6,
    InvalidUtf8 = 7,
    Panic = 8,
}

impl From<Error> for SpStatus {
    fn from(e: Error) -> Self {
        match e {
            Error::TooManyVertices(_) => SpStatus::Capacity,
            Error::VertexOutOfRange { .. } => SpStatus::InvalidVertex,
            Error::LoopEdge(_) => SpStatus::Loop,
            Error::Graph6(_) | Error::EdgeList(_) | Error::Checkpoint(_) | Error::UnknownClass(_) => {
                SpStatus::Parse
            }
            Error::Envelope { .. } => SpStatus::Envelope,
        }
    }
}

fn guard(f: impl FnOnce() -> Result<(), SpStatus>) -> SpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => SpStatus::Panic,
    }
}

/// # Safety
/// `g` must be null or a live handle.
unsafe fn graph<'a>(g: *const SpGraph) -> Result<&'a Graph, SpStatus> {
    g.as_ref().map(|h| &h.graph).ok_or(SpStatus::NullPointer)
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn put<T>(out: *mut T, value: T) -> Result<(), SpStatus> {
    if out.is_null() {
        return Err(SpStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

fn boxed(graph: Graph) -> *mut SpGraph {
    Box::into_raw(Box::new(SpGraph { graph }))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn sp_status_message(status: SpStatus) -> *const c_char {
    let s: &'static CStr = match status {
        SpStatus::Ok => c"ok",
        SpStatus::NullPointer => c"null pointer argument",
        SpStatus::InvalidVertex => c"vertex out of range",
        SpStatus::Loop => c"loop edge",
        SpStatus::Capacity => c"too many vertices",
        SpStatus::Parse => c"malformed input",
        SpStatus::Envelope => c"graph too large for this operation",
        SpStatus::InvalidUtf8 => c"string is not valid UTF-8",
        SpStatus::Panic => c"internal error",
    };
    s.as_ptr()
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`u0, v0, u1, v1, ...`).
///
/// # Safety
/// `edges` must point to `2 * edge_count` values (it may be null when
/// `edge_count` is 0); `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_graph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut SpGraph,
) -> SpStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && edge_count > 0) {
            return Err(SpStatus::NullPointer);
        }
        let flat = if edge_count == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let g = Graph::from_edge_list(n, &pairs)?;
        put(out, boxed(g))
    })
}

/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_graph_from_graph6(text: *const c_char, out: *mut *mut SpGraph) -> SpStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(SpStatus::NullPointer);
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| SpStatus::InvalidUtf8)?;
        put(out, boxed(parse_graph6(s)?))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_graph_free(g: *mut SpGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// graph6 encoding; release the string with [`sp_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_graph_to_graph6(g: *const SpGraph, out: *mut *mut c_char) -> SpStatus {
    guard(|| {
        let text = emit_graph6(graph(g)?)?;
        let c = CString::new(text).expect("graph6 has no NUL bytes");
        put(out, c.into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Shared body of the scalar queries.
///
/// # Safety
/// As for the public query functions.
unsafe fn query<T>(
    g: *const SpGraph,
    out: *mut T,
    f: impl FnOnce(&Graph) -> Result<T, SpStatus>,
) -> SpStatus {
    guard(|| {
        let value = f(graph(g)?)?;
        put(out, value)
    })
}

/// Number of vertices.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_graph_order(g: *const SpGraph, out: *mut usize) -> SpStatus {
    query(g, out, |g| Ok(g.n()))
}

/// Stability number.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_alpha(g: *const SpGraph, out: *mut usize) -> SpStatus {
    query(g, out, |g| Ok(stability_size(g)))
}

/// Clique number.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_omega(g: *const SpGraph, out: *mut usize) -> SpStatus {
    query(g, out, |g| Ok(clique_size(g)))
}

/// Matching number.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_matching_number(g: *const SpGraph, out: *mut usize) -> SpStatus {
    query(g, out, |g| Ok(matching_number(g)))
}

/// Number of triangles.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_triangles(g: *const SpGraph, out: *mut usize) -> SpStatus {
    query(g, out, |g| Ok(triangle_count(g)))
}

/// `n - alpha - omega`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_deficit(g: *const SpGraph, out: *mut i64) -> SpStatus {
    query(g, out, |g| Ok(deficit(g)))
}

/// Whether the graph is threshold.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_is_threshold(g: *const SpGraph, out: *mut bool) -> SpStatus {
    query(g, out, |g| Ok(is_threshold(g)))
}

/// Whether the vertices split into a clique and a stable set.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_is_split(g: *const SpGraph, out: *mut bool) -> SpStatus {
    query(g, out, |g| Ok(is_split(g).is_some()))
}

/// Largest deficit over non-empty induced subgraphs; graphs above 20
/// vertices give `SP_STATUS_ENVELOPE`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_max_deficiency(g: *const SpGraph, out: *mut i64) -> SpStatus {
    query(g, out, |g| Ok(max_deficiency(g)?))
}

/// Sum-perfect verdict. When the graph is not sum-perfect,
/// `forbidden_index` receives `i` for the induced `H_i` found, otherwise 0.
/// `forbidden_index` may be null.
///
/// # Safety
/// `g` must be a live handle; `verdict` must be valid for writes;
/// `forbidden_index` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_is_sum_perfect(
    g: *const SpGraph,
    verdict: *mut bool,
    forbidden_index: *mut usize,
) -> SpStatus {
    guard(|| {
        let g = graph(g)?;
        if verdict.is_null() {
            return Err(SpStatus::NullPointer);
        }
        let (ok, w) = is_sum_perfect(g);
        let index = match w.evidence {
            Evidence::ForbiddenCopy { index, .. } => index,
            _ => 0,
        };
        verdict.write(ok);
        if !forbidden_index.is_null() {
            forbidden_index.write(index);
        }
        Ok(())
    })
}

/// A new handle holding `H_index` of the forbidden family, `1 <= index <= 27`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_family_member(index: usize, out: *mut *mut SpGraph) -> SpStatus {
    guard(|| {
        let m = sumperfect::family::forbidden_family()
            .get(index)
            .ok_or(SpStatus::InvalidVertex)?;
        put(out, boxed(m.graph))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_messages_are_distinct() {
        let all = [
            SpStatus::Ok,
            SpStatus::NullPointer,
            SpStatus::InvalidVertex,
            SpStatus::Loop,
            SpStatus::Capacity,
            SpStatus::Parse,
            SpStatus::Envelope,
            SpStatus::InvalidUtf8,
            SpStatus::Panic,
        ];
        let msgs: std::collections::HashSet<_> = all
            .iter()
            .map(|&s| unsafe { CStr::from_ptr(sp_status_message(s)) }.to_owned())
            .collect();
        assert_eq!(msgs.len(), all.len());
    }

    #[test]
    fn errors_map_to_statuses() {
        assert_eq!(SpStatus::from(Error::LoopEdge(1)), SpStatus::Loop);
        assert_eq!(SpStatus::from(Error::TooManyVertices(70)), SpStatus::Capacity);
    }
}
