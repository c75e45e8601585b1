//! Simple undirected graphs on at most 64 vertices with one machine word per
//! adjacency row.

use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of vertices a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices backed by a single `u64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// The set `{0, .., n-1}`.
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub const fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub const fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    pub const fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Largest element, if any.
    pub const fn last(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An immutable simple undirected graph on vertices `0..n`, `n <= 64`.
///
/// Row `v` of the adjacency array is the neighbourhood of `v`; rows at or
/// above `n` and bits at or above `n` are always zero, so structural equality
/// is labelled-graph equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u8,
    adj: [u64; MAX_VERTICES],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph {
            n: n as u8,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows. The rows must already be
    /// symmetric and loop-free; only the first `n` rows are read and bits
    /// outside `0..n` are dropped.
    pub(crate) fn from_rows(n: usize, rows: &[u64]) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        let mask = VertexSet::full(n).bits();
        let mut adj = [0; MAX_VERTICES];
        for (dst, &row) in adj.iter_mut().zip(&rows[..n]) {
            *dst = row & mask;
        }
        let g = Graph { n: n as u8, adj };
        debug_assert!(g.is_well_formed());
        g
    }

    pub fn complete(n: usize) -> Result<Self> {
        Ok(Graph::empty(n)?.complement())
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edge_list(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::from_edge_list(n, &edges)
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let mut edges = Vec::with_capacity(a * b);
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edge_list(a + b, &edges)
    }

    fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Open neighbourhood of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// Adjacency rows `0..n`.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj[..self.n()]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in VertexSet(self.adj[u] & bits_above(u)).iter() {
                out.push((u, v));
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let full = VertexSet::full(n).bits();
        let mut adj = [0; MAX_VERTICES];
        for (v, row) in adj.iter_mut().enumerate().take(n) {
            *row = !self.adj[v] & full & !(1 << v);
        }
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by `s`, relabelled `0..|s|` in ascending original
    /// order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph> {
        if let Some(v) = s.difference(self.vertices()).first() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(self.induced_unchecked(s))
    }

    pub(crate) fn induced_unchecked(&self, s: VertexSet) -> Graph {
        let mut adj = [0; MAX_VERTICES];
        for (i, v) in s.iter().enumerate() {
            adj[i] = compress(self.adj[v], s.bits());
        }
        Graph {
            n: s.len() as u8,
            adj,
        }
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(self.induced_unchecked(self.vertices().without(v)))
    }

    /// Disjoint union with `other`'s vertices shifted up by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let (a, b) = (self.n(), other.n());
        if a + b > MAX_VERTICES {
            return Err(Error::TooManyVertices(a + b));
        }
        let mut adj = self.adj;
        for v in 0..b {
            adj[a + v] = other.adj[v] << a;
        }
        Ok(Graph {
            n: (a + b) as u8,
            adj,
        })
    }

    /// Relabels vertex `v` to `perm[v]`. `perm` must be a permutation of
    /// `0..n`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length mismatch");
        let mut adj = [0; MAX_VERTICES];
        for (u, &pu) in perm.iter().enumerate() {
            let mut row = 0;
            for v in self.neighbors(u) {
                row |= 1 << perm[v];
            }
            adj[pu] = row;
        }
        Graph { n: self.n, adj }
    }

    /// Two-colouring `(side_a, side_b)` if the graph is bipartite.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut side = [VertexSet::EMPTY; 2];
        let mut seen = VertexSet::EMPTY;
        for root in self.vertices() {
            if seen.contains(root) {
                continue;
            }
            seen.insert(root);
            side[0].insert(root);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let su = usize::from(side[1].contains(u));
                for w in self.neighbors(u) {
                    if side[su].contains(w) {
                        return None;
                    }
                    if !seen.contains(w) {
                        seen.insert(w);
                        side[1 - su].insert(w);
                        stack.push(w);
                    }
                }
            }
        }
        Some((side[0], side[1]))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut left = self.vertices();
        while let Some(root) = left.first() {
            let mut comp = VertexSet::singleton(root);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for u in frontier {
                    next = next.union(self.neighbors(u));
                }
                frontier = next.difference(comp);
                comp = comp.union(frontier);
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Upper-triangle adjacency bits packed least-significant first in
    /// graph6 (column-major) order: pair `(i, j)`, `i < j`, is bit
    /// `j(j-1)/2 + i`. Only meaningful for `n <= 11`.
    pub fn code(&self) -> u64 {
        debug_assert!(self.n() <= 11);
        let mut code = 0u64;
        for j in 1..self.n() {
            code |= (self.adj[j] & ((1 << j) - 1)) << (j * (j - 1) / 2);
        }
        code
    }

    /// Inverse of [`Graph::code`].
    pub fn from_code(n: usize, code: u64) -> Graph {
        debug_assert!(n <= 11);
        let mut adj = [0; MAX_VERTICES];
        for j in 1..n {
            let col = code >> (j * (j - 1) / 2) & ((1 << j) - 1);
            adj[j] |= col;
            for i in VertexSet(col) {
                adj[i] |= 1 << j;
            }
        }
        Graph { n: n as u8, adj }
    }

    pub(crate) fn is_well_formed(&self) -> bool {
        let n = self.n();
        let full = VertexSet::full(n).bits();
        (0..MAX_VERTICES).all(|v| {
            if v >= n {
                return self.adj[v] == 0;
            }
            let row = self.adj[v];
            row & !full == 0
                && row >> v & 1 == 0
                && VertexSet(row).iter().all(|u| self.adj[u] >> v & 1 == 1)
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Mask of the vertices strictly above `v`.
#[inline]
pub(crate) const fn bits_above(v: usize) -> u64 {
    if v >= 63 {
        0
    } else {
        !((2u64 << v) - 1)
    }
}

/// Packs the bits of `row` selected by `mask` into the low bits, preserving
/// order (software `pext`).
#[inline]
pub(crate) fn compress(row: u64, mask: u64) -> u64 {
    let mut out = 0;
    let mut m = mask;
    let mut i = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if row & low != 0 {
            out |= 1 << i;
        }
        i += 1;
        m ^= low;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Graph {
        Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn edge_list_builds_c5() {
        let g = c5();
        assert_eq!(g, Graph::cycle(5).unwrap());
        assert_eq!(g.edge_count(), 5);
        assert!(g.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn edge_list_collapses_duplicates() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::from_edge_list(3, &[(1, 1)]), Err(Error::LoopEdge(1)));
        assert_eq!(Graph::empty(65), Err(Error::TooManyVertices(65)));
        assert!(Graph::empty(64).is_ok());
    }

    #[test]
    fn empty_graph_on_three() {
        let g = Graph::from_edge_list(3, &[]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn h26_has_ten_edges() {
        let g = Graph::from_edge_list(
            7,
            &[(0, 3), (0, 5), (0, 6), (1, 4), (1, 5), (2, 4), (2, 6), (4, 5), (4, 6), (5, 6)],
        )
        .unwrap();
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn complement_is_an_involution() {
        let g = c5();
        assert_eq!(g.complement().complement(), g);
        // C5 is self-complementary up to relabelling, but not identically.
        assert_eq!(g.complement().edge_count(), 5);
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        let two_k3 = Graph::complete(3)
            .unwrap()
            .disjoint_union(&Graph::complete(3).unwrap())
            .unwrap();
        assert_eq!(k33.complement(), two_k3);
    }

    #[test]
    fn induced_subgraph_relabels_in_order() {
        let c6 = Graph::cycle(6).unwrap();
        let s: VertexSet = [0, 1, 3, 4].into_iter().collect();
        let h = c6.induced_subgraph(s).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (2, 3)]);
        assert_eq!(c6.induced_subgraph(c6.vertices()).unwrap(), c6);
        let k4 = Graph::complete(4).unwrap();
        let k3 = Graph::complete(3).unwrap();
        for v in 0..4 {
            assert_eq!(k4.induced_subgraph(k4.vertices().without(v)).unwrap(), k3);
        }
        assert!(c6.induced_subgraph(VertexSet::singleton(6)).is_err());
    }

    #[test]
    fn delete_vertex_cases() {
        assert_eq!(c5().delete_vertex(0).unwrap(), Graph::path(4).unwrap().permute(&[3, 2, 1, 0]));
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(k1.delete_vertex(0).unwrap(), Graph::empty(0).unwrap());
        assert!(k1.delete_vertex(1).is_err());
    }

    #[test]
    fn disjoint_union_cases() {
        let k2 = Graph::complete(2).unwrap();
        let three = k2.disjoint_union(&k2).unwrap().disjoint_union(&k2).unwrap();
        assert_eq!(three.edges(), vec![(0, 1), (2, 3), (4, 5)]);
        let g = c5();
        assert_eq!(g.disjoint_union(&Graph::empty(0).unwrap()).unwrap(), g);
        let big = Graph::empty(40).unwrap();
        assert_eq!(big.disjoint_union(&big), Err(Error::TooManyVertices(80)));
    }

    #[test]
    fn code_round_trip() {
        let g = c5();
        assert_eq!(Graph::from_code(5, g.code()), g);
        assert_eq!(Graph::complete(4).unwrap().code(), 0b111111);
    }

    #[test]
    fn components_and_bipartition() {
        let g = Graph::from_edge_list(6, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert!(g.is_bipartite());
        assert!(!c5().is_bipartite());
        assert!(Graph::cycle(6).unwrap().is_bipartite());
    }

    #[test]
    fn compress_matches_naive() {
        let row = 0b1011_0110u64;
        let mask = 0b1110_0011u64;
        // selected bit positions 0,1,5,6,7 -> row bits 0,1,1,0,1
        assert_eq!(compress(row, mask), 0b10110);
    }
}
