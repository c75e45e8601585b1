//! Canonical forms, isomorphism testing and induced-subgraph search.
//!
//! Canonical labelling uses individualisation-refinement: the vertex set is
//! split into an ordered equitable partition (cells refined by neighbour
//! counts, starting from a single cell, so the first round separates by
//! degree), a vertex of the first smallest non-singleton cell is
//! individualised, and the search recurses until the partition is discrete.
//! Every discrete leaf is a vertex ordering; the canonical form is the leaf
//! whose upper-triangle bit string is lexicographically smallest. Subtrees
//! that are images of already explored ones under a known automorphism
//! (found from equal leaves or from twin vertices) are skipped.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Serialize, Serializer};

use crate::error::{check_envelope, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order accepted by [`canonical_key`] and [`is_isomorphic`].
pub const CANON_MAX_VERTICES: usize = 12;

/// Isomorphism-invariant normal form of a graph: its order plus the upper
/// triangle of the canonically relabelled adjacency matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: u8,
    bits: u128,
}

impl CanonicalKey {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// `n` followed by the upper-triangle bits (graph6 column order), most
    /// significant bit first, padded to whole bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.n();
        let pairs = n * n.saturating_sub(1) / 2;
        let nbytes = pairs.div_ceil(8);
        let padded = self.bits << (nbytes * 8 - pairs);
        let mut out = Vec::with_capacity(1 + nbytes);
        out.push(self.n);
        out.extend((0..nbytes).rev().map(|i| (padded >> (8 * i)) as u8));
        out
    }

    /// The canonical representative in [`Graph::code`] packing. `n <= 11`.
    pub fn to_code(&self) -> u64 {
        let n = self.n();
        debug_assert!(n <= 11);
        let pairs = n * n.saturating_sub(1) / 2;
        if pairs == 0 {
            0
        } else {
            (self.bits.reverse_bits() >> (128 - pairs)) as u64
        }
    }

    /// The canonical representative this key encodes.
    pub fn graph(&self) -> Graph {
        let n = self.n();
        let mut edges = Vec::new();
        let mut k = n * n.saturating_sub(1) / 2;
        for j in 1..n {
            for i in 0..j {
                k -= 1;
                if self.bits >> k & 1 == 1 {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edge_list(n, &edges).expect("key encodes a valid graph")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.to_bytes() {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({self})")
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A canonical vertex ordering together with the key it produces.
#[derive(Debug, Clone)]
pub struct Labeling {
    /// `order[p]` is the original vertex placed at canonical position `p`.
    pub order: Vec<usize>,
    pub key: CanonicalKey,
}

impl Labeling {
    /// Original-to-canonical relabelling, suitable for [`Graph::permute`].
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm = vec![0; self.order.len()];
        for (p, &v) in self.order.iter().enumerate() {
            perm[v] = p;
        }
        perm
    }
}

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey> {
    Ok(canonical_labeling(g)?.key)
}

pub fn canonical_labeling(g: &Graph) -> Result<Labeling> {
    check_envelope("canonical_key", g.n(), CANON_MAX_VERTICES)?;
    Ok(label(g))
}

/// Canonical representative of `g`'s isomorphism class.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let lab = canonical_labeling(g)?;
    Ok(g.permute(&lab.permutation()))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    check_envelope("is_isomorphic", a.n().max(b.n()), CANON_MAX_VERTICES)?;
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(label(a).key == label(b).key)
}

const CAP: usize = CANON_MAX_VERTICES;

#[derive(Clone, Copy)]
struct Partition {
    cells: [u64; CAP],
    len: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cells = [0; CAP];
        let len = if n == 0 {
            0
        } else {
            cells[0] = VertexSet::full(n).bits();
            1
        };
        Partition { cells, len }
    }

    fn is_discrete(&self, n: usize) -> bool {
        self.len == n
    }

    fn insert(&mut self, at: usize, cell: u64) {
        self.cells.copy_within(at..self.len, at + 1);
        self.cells[at] = cell;
        self.len += 1;
    }

    /// Splits cell `at` by neighbour count into `splitter`, fragments in
    /// ascending count order. Returns whether anything changed.
    fn split(&mut self, adj: &[u64], at: usize, splitter: u64) -> bool {
        let cell = self.cells[at];
        if cell & (cell - 1) == 0 {
            return false;
        }
        let mut by_count = [0u64; CAP + 1];
        let mut seen = 0u32;
        for v in VertexSet::from_bits(cell) {
            let c = (adj[v] & splitter).count_ones() as usize;
            by_count[c] |= 1 << v;
            seen |= 1 << c;
        }
        if seen.count_ones() == 1 {
            return false;
        }
        let mut pos = at;
        let mut first = true;
        let mut counts = seen;
        while counts != 0 {
            let c = counts.trailing_zeros() as usize;
            counts &= counts - 1;
            if first {
                self.cells[pos] = by_count[c];
                first = false;
            } else {
                self.insert(pos, by_count[c]);
            }
            pos += 1;
        }
        true
    }

    /// Refines to the coarsest equitable partition finer than `self`.
    fn refine(&mut self, adj: &[u64]) {
        'outer: loop {
            let mut i = 0;
            while i < self.len {
                let splitter = self.cells[i];
                let mut changed = false;
                let mut j = 0;
                while j < self.len {
                    if self.split(adj, j, splitter) {
                        changed = true;
                    }
                    j += 1;
                }
                if changed {
                    continue 'outer;
                }
                i += 1;
            }
            break;
        }
    }

    /// First smallest non-singleton cell.
    fn target(&self) -> usize {
        let mut best = usize::MAX;
        let mut best_size = u32::MAX;
        for (i, &c) in self.cells[..self.len].iter().enumerate() {
            let size = c.count_ones();
            if size > 1 && size < best_size {
                best = i;
                best_size = size;
            }
        }
        best
    }
}

type Perm = [u8; CAP];

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<(u128, Perm)>,
    best: Option<(u128, Perm)>,
    autos: Vec<Perm>,
}

impl Search<'_> {
    fn leaf(&mut self, part: &Partition) {
        let mut lab: Perm = [0; CAP];
        for (p, &cell) in part.cells[..self.n].iter().enumerate() {
            lab[p] = cell.trailing_zeros() as u8;
        }
        let code = leaf_code(self.adj, &lab[..self.n]);
        match self.first {
            None => self.first = Some((code, lab)),
            Some((fc, flab)) if fc == code => self.record_auto(&lab, &flab),
            _ => {}
        }
        match self.best {
            Some((bc, blab)) if bc == code => self.record_auto(&lab, &blab),
            Some((bc, _)) if bc < code => {}
            _ => self.best = Some((code, lab)),
        }
    }

    /// Stores the automorphism taking `from[p]` to `to[p]`.
    fn record_auto(&mut self, from: &Perm, to: &Perm) {
        let mut g: Perm = [0; CAP];
        for p in 0..self.n {
            g[from[p] as usize] = to[p];
        }
        if (0..self.n).any(|v| g[v] as usize != v) {
            self.autos.push(g);
        }
    }

    fn visit(&mut self, part: Partition, fixed: u64) {
        if part.is_discrete(self.n) {
            self.leaf(&part);
            return;
        }
        let t = part.target();
        let cell = part.cells[t];
        let mut tried = 0u64;
        for v in VertexSet::from_bits(cell) {
            if tried != 0 && self.equivalent_to_tried(v, tried, fixed) {
                continue;
            }
            tried |= 1 << v;
            let mut child = part;
            child.cells[t] = 1 << v;
            child.insert(t + 1, cell & !(1 << v));
            child.refine(self.adj);
            self.visit(child, fixed | 1 << v);
        }
    }

    /// Whether `v` lies in the orbit of some vertex in `tried` under the
    /// known automorphisms that fix every vertex of `fixed`.
    fn equivalent_to_tried(&self, v: usize, tried: u64, fixed: u64) -> bool {
        let mut parent: Perm = [0; CAP];
        for (i, p) in parent.iter_mut().enumerate().take(self.n) {
            *p = i as u8;
        }
        fn find(parent: &mut Perm, mut x: usize) -> usize {
            while parent[x] as usize != x {
                parent[x] = parent[parent[x] as usize];
                x = parent[x] as usize;
            }
            x
        }
        for g in &self.autos {
            if VertexSet::from_bits(fixed).iter().any(|f| g[f] as usize != f) {
                continue;
            }
            for (x, &gx) in g.iter().enumerate().take(self.n) {
                let (a, b) = (find(&mut parent, x), find(&mut parent, gx as usize));
                if a != b {
                    parent[a] = b as u8;
                }
            }
        }
        let root = find(&mut parent, v);
        VertexSet::from_bits(tried)
            .iter()
            .any(|t| find(&mut parent, t) == root)
    }
}

/// Upper-triangle bits of the ordering `lab`, most significant first.
fn leaf_code(adj: &[u64], lab: &[u8]) -> u128 {
    let mut code = 0u128;
    for j in 1..lab.len() {
        let vj = lab[j];
        for &vi in &lab[..j] {
            code = code << 1 | u128::from(adj[vi as usize] >> vj & 1);
        }
    }
    code
}

/// Transpositions of twin vertices (equal neighbourhoods apart from each
/// other); each is an automorphism.
fn twin_automorphisms(adj: &[u64], n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut assigned = 0u64;
    for u in 0..n {
        if assigned >> u & 1 == 1 {
            continue;
        }
        let mut prev = u;
        for w in u + 1..n {
            if assigned >> w & 1 == 0 && adj[u] & !(1 << w) == adj[w] & !(1 << u) {
                assigned |= 1 << w;
                let mut g: Perm = [0; CAP];
                for (i, x) in g.iter_mut().enumerate().take(n) {
                    *x = i as u8;
                }
                g.swap(prev, w);
                out.push(g);
                prev = w;
            }
        }
    }
    out
}

fn label(g: &Graph) -> Labeling {
    let n = g.n();
    let adj = g.rows();
    let mut part = Partition::unit(n);
    part.refine(adj);
    let mut search = Search {
        adj,
        n,
        first: None,
        best: None,
        autos: twin_automorphisms(adj, n),
    };
    search.visit(part, 0);
    let (bits, lab) = search.best.unwrap_or((0, [0; CAP]));
    Labeling {
        order: lab[..n].iter().map(|&v| v as usize).collect(),
        key: CanonicalKey { n: n as u8, bits },
    }
}

/// An injective map from a pattern's vertices into a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    /// `map[i]` is the host vertex playing pattern vertex `i`.
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn image(&self) -> VertexSet {
        self.map.iter().copied().collect()
    }

    /// Whether the map is injective, in range, and preserves both edges and
    /// non-edges.
    pub fn is_induced_copy(&self, host: &Graph, pattern: &Graph) -> bool {
        if self.map.len() != pattern.n()
            || self.image().len() != self.map.len()
            || self.map.iter().any(|&v| v >= host.n())
        {
            return false;
        }
        (0..pattern.n()).all(|i| {
            (i + 1..pattern.n())
                .all(|j| pattern.has_edge(i, j) == host.has_edge(self.map[i], self.map[j]))
        })
    }
}

/// Some isomorphism `a -> b` as a vertex map, if one exists.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    let (ra, rb) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }

    fn extend(
        a: &Graph,
        b: &Graph,
        deg_a: &[usize],
        deg_b: &[usize],
        map: &mut Vec<usize>,
        used: u64,
    ) -> bool {
        let i = map.len();
        if i == a.n() {
            return true;
        }
        for w in VertexSet::from_bits(!used & b.vertices().bits()) {
            if deg_b[w] != deg_a[i] {
                continue;
            }
            if (0..i).all(|k| a.has_edge(k, i) == b.has_edge(map[k], w)) {
                map.push(w);
                if extend(a, b, deg_a, deg_b, map, used | 1 << w) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    extend(a, b, &ra, &rb, &mut map, 0).then_some(map)
}

/// Visits every `k`-subset of `0..n` in lexicographic order of the sorted
/// vertex sequences, stopping early on `Break`.
pub(crate) fn for_each_subset<B>(
    n: usize,
    k: usize,
    mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if let ControlFlow::Break(b) = f(&idx) {
            return Some(b);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// First induced copy of `pattern` in `host`, scanning vertex subsets in
/// lexicographic order. Subsets whose edge count or degree sequence differs
/// from the pattern's are rejected before any isomorphism search.
pub fn contains_induced(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    induced_copies(host, pattern, true).into_iter().next()
}

/// All induced copies of `pattern` in `host`, one per vertex subset, in
/// lexicographic subset order.
pub fn all_induced_copies(host: &Graph, pattern: &Graph) -> Vec<Embedding> {
    induced_copies(host, pattern, false)
}

fn induced_copies(host: &Graph, pattern: &Graph, first_only: bool) -> Vec<Embedding> {
    let k = pattern.n();
    let mut out = Vec::new();
    if k > host.n() {
        return out;
    }
    let m = pattern.edge_count();
    let mut pattern_degrees = pattern.degrees();
    pattern_degrees.sort_unstable();
    let mut degrees = vec![0; k];
    for_each_subset(host.n(), k, |sub| {
        let s: VertexSet = sub.iter().copied().collect();
        let mut edges = 0;
        for (d, &v) in degrees.iter_mut().zip(sub) {
            *d = host.neighbors(v).intersection(s).len();
            edges += *d;
        }
        if edges != 2 * m {
            return ControlFlow::Continue(());
        }
        degrees.sort_unstable();
        if degrees != pattern_degrees {
            return ControlFlow::Continue(());
        }
        let sub_graph = host.induced_unchecked(s);
        if let Some(iso) = find_isomorphism(pattern, &sub_graph) {
            out.push(Embedding {
                map: iso.into_iter().map(|i| sub[i]).collect(),
            });
            if first_only {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    out
}
