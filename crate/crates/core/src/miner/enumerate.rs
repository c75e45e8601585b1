//! Non-isomorphic graph enumeration by canonical augmentation.
//!
//! A graph on `n` vertices is produced from exactly one parent: the
//! canonical form of the graph left after deleting its canonically last
//! vertex. Each parent is extended by one vertex in all `2^(n-1)` ways and a
//! child is kept only when the added vertex can play that role.

use std::collections::HashSet;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::canon::{canonical_key, canonical_labeling};
use crate::error::{check_envelope, Result};
use crate::graph::Graph;

/// Largest order the built-in enumerator generates.
pub const ENUMERATION_MAX: usize = 10;

/// Orders whose full catalogue is kept in memory once built.
pub const CACHED_LEVEL_MAX: usize = 9;

/// Parents per batch in a top-order sweep.
pub const BATCH_SIZE: usize = 128;

/// Canonical codes of the accepted children of `parent`, which must be in
/// canonical form. Sorted ascending.
pub fn children_of(parent: &Graph) -> Vec<u64> {
    let m = parent.n();
    let parent_key = canonical_key(parent).expect("parent within envelope");
    let mut rows = parent.rows()[..m].to_vec();
    rows.push(0);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for nbhd in 0..1u64 << m {
        rows[m] = nbhd;
        for (u, row) in rows[..m].iter_mut().enumerate() {
            *row = (*row & !(1 << m)) | (nbhd >> u & 1) << m;
        }
        let child = Graph::from_rows(m + 1, &rows);
        let lab = canonical_labeling(&child).expect("child within envelope");
        let last = lab.order[m];
        let accepted = last == m
            || canonical_key(&child.delete_vertex(last).expect("in range")).expect("small")
                == parent_key;
        if accepted && seen.insert(lab.key) {
            out.push(lab.key.to_code());
        }
    }
    out.sort_unstable();
    out
}

fn expand(n: usize, parents: &[u64]) -> Vec<u64> {
    parents
        .par_iter()
        .flat_map_iter(|&code| children_of(&Graph::from_code(n - 1, code)))
        .collect()
}

/// Canonical codes of all graphs on `n` vertices, sorted ascending.
pub fn level_codes(n: usize) -> Result<&'static [u64]> {
    check_envelope("level_codes", n, CACHED_LEVEL_MAX)?;
    static LEVELS: [OnceLock<Vec<u64>>; CACHED_LEVEL_MAX + 1] =
        [const { OnceLock::new() }; CACHED_LEVEL_MAX + 1];
    if let Some(level) = LEVELS[n].get() {
        return Ok(level);
    }
    let level = if n == 0 {
        vec![0]
    } else {
        let mut codes = expand(n, level_codes(n - 1)?);
        codes.sort_unstable();
        codes
    };
    Ok(LEVELS[n].get_or_init(|| level))
}

/// Number of batches in a sweep of order `n`.
pub fn batch_count(n: usize) -> Result<usize> {
    check_envelope("enumerate_graphs", n, ENUMERATION_MAX)?;
    if n == 0 {
        return Ok(1);
    }
    Ok(level_codes(n - 1)?.len().div_ceil(BATCH_SIZE))
}

/// The graphs of order `n` generated from batch `batch` of parents, in a
/// fixed order independent of the thread count.
pub fn batch_graphs(n: usize, batch: usize) -> Result<Vec<Graph>> {
    check_envelope("enumerate_graphs", n, ENUMERATION_MAX)?;
    if n == 0 {
        return Ok(if batch == 0 { vec![Graph::from_code(0, 0)] } else { Vec::new() });
    }
    let parents = level_codes(n - 1)?;
    let lo = (batch * BATCH_SIZE).min(parents.len());
    let hi = (lo + BATCH_SIZE).min(parents.len());
    Ok(expand(n, &parents[lo..hi])
        .into_iter()
        .map(|code| Graph::from_code(n, code))
        .collect())
}

/// One representative (in canonical form) of every isomorphism class on `n`
/// vertices. Orders up to [`CACHED_LEVEL_MAX`] come from the cached
/// catalogue; order [`ENUMERATION_MAX`] is generated batch by batch.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    check_envelope("enumerate_graphs", n, ENUMERATION_MAX)?;
    let batches = batch_count(n)?;
    let cached = if n <= CACHED_LEVEL_MAX { Some(level_codes(n)?) } else { None };
    let stream: Box<dyn Iterator<Item = Graph>> = match cached {
        Some(codes) => Box::new(codes.iter().map(move |&c| Graph::from_code(n, c))),
        None => Box::new(
            (0..batches).flat_map(move |b| batch_graphs(n, b).expect("order checked")),
        ),
    };
    Ok(stream)
}

/// Number of isomorphism classes on `n` vertices.
pub fn count_graphs(n: usize) -> Result<usize> {
    if n <= CACHED_LEVEL_MAX {
        return Ok(level_codes(n)?.len());
    }
    let mut total = 0;
    for b in 0..batch_count(n)? {
        total += batch_graphs(n, b)?.len();
    }
    Ok(total)
}
