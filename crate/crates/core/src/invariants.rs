//! Exact stability, clique, cover and matching numbers, and the definitional
//! hereditary checks built on them.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{check_envelope, Result};
use crate::graph::{bits_above, Graph, VertexSet};

/// Largest order for the exhaustive induced-subgraph scans
/// ([`max_deficiency`], [`is_sum_perfect_definitional`]).
pub const SUBSET_SCAN_MAX: usize = 20;
/// Largest order for [`is_perfect_lovasz`].
pub const PERFECT_SCAN_MAX: usize = 16;

/// Below this many candidates the clique search skips colouring bounds.
const ENUMERATION_CUTOFF: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub n: usize,
    pub alpha: usize,
    pub omega: usize,
    pub tau: usize,
    pub nu: usize,
    pub triangles: usize,
    pub deficit: i64,
}

impl InvariantReport {
    pub fn compute(g: &Graph) -> Self {
        let n = g.n();
        let alpha = stability_size(g);
        let omega = clique_size(g);
        InvariantReport {
            n,
            alpha,
            omega,
            tau: n - alpha,
            nu: matching_number(g),
            triangles: triangle_count(g),
            deficit: n as i64 - alpha as i64 - omega as i64,
        }
    }
}

/// A stable set and a clique of the same graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StableCliquePair {
    pub stable: VertexSet,
    pub clique: VertexSet,
}

pub fn validate_pair(g: &Graph, p: &StableCliquePair) -> bool {
    let all = g.vertices();
    p.stable.is_subset(all)
        && p.clique.is_subset(all)
        && is_stable(g, p.stable)
        && is_clique(g, p.clique)
        && p.stable.intersection(p.clique).len() <= 1
}

pub fn is_stable(g: &Graph, s: VertexSet) -> bool {
    s.iter().all(|v| g.neighbors(v).intersection(s).is_empty())
}

pub fn is_clique(g: &Graph, s: VertexSet) -> bool {
    s.iter()
        .all(|v| s.without(v).is_subset(g.neighbors(v)))
}

/// `alpha(g)` with the lexicographically smallest maximum stable set.
pub fn stability_number(g: &Graph) -> (usize, VertexSet) {
    let co = g.complement();
    max_clique_with_witness(co.rows(), g.vertices().bits())
}

/// `omega(g)` with the lexicographically smallest maximum clique.
pub fn clique_number(g: &Graph) -> (usize, VertexSet) {
    max_clique_with_witness(g.rows(), g.vertices().bits())
}

/// `alpha(g)` without a witness.
pub fn stability_size(g: &Graph) -> usize {
    let co = g.complement();
    max_clique_size(co.rows(), g.vertices().bits()) as usize
}

/// `omega(g)` without a witness.
pub fn clique_size(g: &Graph) -> usize {
    max_clique_size(g.rows(), g.vertices().bits()) as usize
}

/// `tau(g) = n - alpha(g)`.
pub fn vertex_cover_number(g: &Graph) -> usize {
    g.n() - stability_size(g)
}

pub fn triangle_count(g: &Graph) -> usize {
    let mut t = 0;
    for (u, v) in g.edges() {
        t += (g.rows()[u] & g.rows()[v] & bits_above(v)).count_ones() as usize;
    }
    t
}

/// `n - alpha - omega`.
pub fn deficit(g: &Graph) -> i64 {
    g.n() as i64 - stability_size(g) as i64 - clique_size(g) as i64
}

pub(crate) fn max_clique_size(adj: &[u64], cand: u64) -> u32 {
    let mut best = 0;
    if cand.count_ones() < ENUMERATION_CUTOFF {
        exhaustive_clique(adj, cand, 0, &mut best);
    } else {
        colour_bound_clique(adj, cand, 0, &mut best);
    }
    best
}

fn exhaustive_clique(adj: &[u64], cand: u64, size: u32, best: &mut u32) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() <= *best {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    let rest = cand & !(1 << v);
    exhaustive_clique(adj, rest & adj[v], size + 1, best);
    exhaustive_clique(adj, rest, size, best);
}

/// Branch and bound: vertices are ordered by a greedy colouring of the
/// candidate set and branched from the highest colour down; a branch is cut
/// once `size + colour` cannot beat the incumbent.
fn colour_bound_clique(adj: &[u64], mut cand: u64, size: u32, best: &mut u32) {
    let mut order = [0u8; 64];
    let mut colour = [0u8; 64];
    let len = colour_sort(adj, cand, &mut order, &mut colour);
    for i in (0..len).rev() {
        if size + u32::from(colour[i]) <= *best {
            return;
        }
        let v = order[i] as usize;
        let next = cand & adj[v];
        if next == 0 {
            *best = (*best).max(size + 1);
        } else {
            colour_bound_clique(adj, next, size + 1, best);
        }
        cand &= !(1 << v);
    }
}

fn colour_sort(adj: &[u64], cand: u64, order: &mut [u8; 64], colour: &mut [u8; 64]) -> usize {
    let mut uncoloured = cand;
    let mut len = 0;
    let mut k = 0u8;
    while uncoloured != 0 {
        k += 1;
        let mut q = uncoloured;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !adj[v] & !(1 << v);
            uncoloured &= !(1 << v);
            order[len] = v as u8;
            colour[len] = k;
            len += 1;
        }
    }
    len
}

/// Maximum clique inside `cand`, choosing the lexicographically smallest
/// optimum: vertices are taken greedily in ascending order whenever a
/// maximum clique through the chosen prefix still exists.
pub(crate) fn max_clique_with_witness(adj: &[u64], cand: u64) -> (usize, VertexSet) {
    let target = max_clique_size(adj, cand);
    let mut need = target;
    let mut rem = cand;
    let mut chosen = 0u64;
    while need > 0 {
        let v = rem.trailing_zeros() as usize;
        let sub = rem & adj[v] & bits_above(v);
        if max_clique_size(adj, sub) + 1 >= need {
            chosen |= 1 << v;
            rem = sub;
            need -= 1;
        } else {
            rem &= !(1 << v);
        }
    }
    (target as usize, VertexSet::from_bits(chosen))
}

/// Maximum matching size. Bipartite graphs use augmenting paths; other
/// graphs branch on the lowest unmatched vertex with memoised vertex masks.
pub fn matching_number(g: &Graph) -> usize {
    match g.bipartition() {
        Some((left, _)) => bipartite_matching(g, left),
        None => {
            let mut memo = HashMap::new();
            general_matching(g.rows(), g.vertices().bits(), &mut memo) as usize
        }
    }
}

fn bipartite_matching(g: &Graph, left: VertexSet) -> usize {
    fn augment(g: &Graph, u: usize, visited: &mut u64, mate: &mut [Option<usize>]) -> bool {
        for w in g.neighbors(u) {
            if *visited >> w & 1 == 1 {
                continue;
            }
            *visited |= 1 << w;
            if mate[w].is_none_or(|m| augment(g, m, visited, mate)) {
                mate[w] = Some(u);
                return true;
            }
        }
        false
    }
    let mut mate = vec![None; g.n()];
    left.iter()
        .filter(|&u| {
            let mut visited = 0;
            augment(g, u, &mut visited, &mut mate)
        })
        .count()
}

fn general_matching(adj: &[u64], mask: u64, memo: &mut HashMap<u64, u32>) -> u32 {
    if mask.count_ones() < 2 {
        return 0;
    }
    if let Some(&m) = memo.get(&mask) {
        return m;
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let mut best = general_matching(adj, rest, memo);
    for u in VertexSet::from_bits(adj[v] & rest) {
        best = best.max(1 + general_matching(adj, rest & !(1 << u), memo));
    }
    memo.insert(mask, best);
    best
}

/// Walks every vertex subset of `g` in increasing bitmask order, computing
/// `alpha` and `omega` of each by the recurrences
/// `alpha(S) = max(alpha(S - v), 1 + alpha(S - N[v]))` (and the same on the
/// complement for `omega`), where `v` is the lowest vertex of `S`.
///
/// `visit(size, alpha, omega)` is called for every non-empty subset and may
/// stop the walk by returning `false`. Returns whether the walk completed.
pub(crate) fn scan_induced_subgraphs(
    g: &Graph,
    mut visit: impl FnMut(usize, usize, usize) -> bool,
) -> bool {
    let n = g.n();
    debug_assert!(n <= SUBSET_SCAN_MAX);
    let adj = g.rows();
    let co = g.complement();
    let coadj = co.rows();
    let total = 1usize << n;
    let mut alpha = vec![0u8; total];
    let mut omega = vec![0u8; total];
    for s in 1..total {
        let v = s.trailing_zeros() as usize;
        let without = s & !(1 << v);
        let a = alpha[without].max(1 + alpha[without & !(coadj[v] as usize)]);
        let o = omega[without].max(1 + omega[without & !(adj[v] as usize)]);
        alpha[s] = a;
        omega[s] = o;
        if !visit(s.count_ones() as usize, a as usize, o as usize) {
            return false;
        }
    }
    true
}

/// Largest deficit over all non-empty induced subgraphs; `-1` for the
/// 0-vertex graph, where there is nothing to maximise over.
pub fn max_deficiency(g: &Graph) -> Result<i64> {
    check_envelope("max_deficiency", g.n(), SUBSET_SCAN_MAX)?;
    let mut worst = -1i64;
    scan_induced_subgraphs(g, |k, a, o| {
        worst = worst.max(k as i64 - a as i64 - o as i64);
        true
    });
    Ok(worst)
}

/// Whether every induced subgraph has deficit at most `c`.
pub fn within_deficiency(g: &Graph, c: i64) -> Result<bool> {
    check_envelope("within_deficiency", g.n(), SUBSET_SCAN_MAX)?;
    Ok(scan_induced_subgraphs(g, |k, a, o| {
        k as i64 - a as i64 - o as i64 <= c
    }))
}

pub fn is_sum_perfect_definitional(g: &Graph) -> Result<bool> {
    check_envelope("is_sum_perfect_definitional", g.n(), SUBSET_SCAN_MAX)?;
    within_deficiency(g, 0)
}

/// Some vertex set inducing a subgraph with positive deficit, if any.
pub fn deficient_subgraph(g: &Graph) -> Result<Option<VertexSet>> {
    check_envelope("deficient_subgraph", g.n(), SUBSET_SCAN_MAX)?;
    let mut index = 0u64;
    let mut found = None;
    scan_induced_subgraphs(g, |k, a, o| {
        index += 1;
        if k > a + o {
            found = Some(VertexSet::from_bits(index));
            false
        } else {
            true
        }
    });
    Ok(found)
}

/// Lovász form: every non-empty induced subgraph has `alpha * omega >= |V|`.
pub fn is_perfect_lovasz(g: &Graph) -> Result<bool> {
    check_envelope("is_perfect_lovasz", g.n(), PERFECT_SCAN_MAX)?;
    Ok(scan_induced_subgraphs(g, |k, a, o| a * o >= k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, edges).unwrap()
    }

    fn h26() -> Graph {
        g(
            7,
            &[(0, 3), (0, 5), (0, 6), (1, 4), (1, 5), (2, 4), (2, 6), (4, 5), (4, 6), (5, 6)],
        )
    }

    /// Brute-force alpha over all subsets.
    fn brute_alpha(g: &Graph) -> usize {
        (0u64..1 << g.n())
            .map(VertexSet::from_bits)
            .filter(|&s| is_stable(g, s))
            .map(|s| s.len())
            .max()
            .unwrap()
    }

    #[test]
    fn stability_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(stability_number(&c5).0, 2);
        assert_eq!(stability_number(&c5).1.to_vec(), vec![0, 2]);
        for n in 1..10 {
            assert_eq!(stability_number(&Graph::complete(n).unwrap()), (1, VertexSet::singleton(0)));
        }
        assert_eq!(stability_number(&h26()).0, 3);
        assert_eq!(stability_number(&Graph::empty(0).unwrap()), (0, VertexSet::EMPTY));
    }

    #[test]
    fn clique_examples() {
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        assert_eq!(clique_number(&k33), (2, [0, 3].into_iter().collect()));
        assert_eq!(clique_number(&Graph::cycle(5).unwrap()).0, 2);
        let (w, s) = clique_number(&h26());
        assert_eq!(w, 3);
        assert!(is_clique(&h26(), s));
    }

    #[test]
    fn cover_and_matching_examples() {
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        assert_eq!(vertex_cover_number(&k33), 3);
        assert_eq!(vertex_cover_number(&Graph::empty(5).unwrap()), 0);
        assert_eq!(vertex_cover_number(&Graph::cycle(5).unwrap()), 3);

        let k2 = Graph::complete(2).unwrap();
        let three_k2 = k2.disjoint_union(&k2).unwrap().disjoint_union(&k2).unwrap();
        assert_eq!(matching_number(&three_k2), 3);
        assert_eq!(matching_number(&k33), 3);
        assert_eq!(matching_number(&Graph::cycle(5).unwrap()), 2);
        assert_eq!(matching_number(&Graph::complete(7).unwrap()), 3);
        assert_eq!(matching_number(&Graph::empty(0).unwrap()), 0);
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(triangle_count(&h26()), 4);
        assert_eq!(triangle_count(&Graph::complete(4).unwrap()), 4);
        assert_eq!(triangle_count(&Graph::cycle(6).unwrap()), 0);
        assert_eq!(triangle_count(&Graph::complete(64).unwrap()), 64 * 63 * 62 / 6);
    }

    #[test]
    fn deficit_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(deficit(&c5), 1);
        assert_eq!(max_deficiency(&c5).unwrap(), 1);
        // K1,3 plus an isolated vertex is threshold.
        let t = g(5, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(deficit(&t), -1);
        assert_eq!(max_deficiency(&t).unwrap(), -1);
        assert_eq!(max_deficiency(&Graph::empty(0).unwrap()).unwrap(), -1);
    }

    #[test]
    fn two_c5_max_deficiency_matches_oracle() {
        let c5 = Graph::cycle(5).unwrap();
        let two = c5.disjoint_union(&c5).unwrap();
        // Oracle: build every induced subgraph and use brute-force alpha/omega.
        let mut worst = i64::MIN;
        for bits in 1u64..1 << 10 {
            let h = two.induced_subgraph(VertexSet::from_bits(bits)).unwrap();
            let d = h.n() as i64 - brute_alpha(&h) as i64 - brute_alpha(&h.complement()) as i64;
            worst = worst.max(d);
        }
        // The whole graph is the worst case: 10 - (2 + 2) - 2.
        assert_eq!(worst, 4);
        assert_eq!(max_deficiency(&two).unwrap(), 4);
    }

    #[test]
    fn definitional_checks() {
        assert!(!is_sum_perfect_definitional(&Graph::cycle(5).unwrap()).unwrap());
        assert!(is_sum_perfect_definitional(&Graph::complete(5).unwrap()).unwrap());
        // A split graph: clique {0,1,2}, stable {3,4,5} attached arbitrarily.
        let split = g(6, &[(0, 1), (0, 2), (1, 2), (3, 0), (4, 1), (4, 2), (5, 2)]);
        assert!(is_sum_perfect_definitional(&split).unwrap());
        assert!(is_sum_perfect_definitional(&Graph::empty(0).unwrap()).unwrap());

        assert!(!is_perfect_lovasz(&Graph::cycle(5).unwrap()).unwrap());
        assert!(is_perfect_lovasz(&Graph::cycle(6).unwrap()).unwrap());

        let w = deficient_subgraph(&Graph::cycle(5).unwrap()).unwrap().unwrap();
        assert_eq!(w, Graph::cycle(5).unwrap().vertices());
        assert_eq!(deficient_subgraph(&Graph::complete(4).unwrap()).unwrap(), None);
    }

    #[test]
    fn envelopes() {
        let big = Graph::empty(21).unwrap();
        assert!(max_deficiency(&big).is_err());
        assert!(is_sum_perfect_definitional(&big).is_err());
        assert!(is_perfect_lovasz(&Graph::empty(17).unwrap()).is_err());
    }

    #[test]
    fn pair_validation() {
        let k3 = Graph::complete(3).unwrap();
        let c5 = Graph::cycle(5).unwrap();
        let set = |v: &[usize]| v.iter().copied().collect::<VertexSet>();
        assert!(validate_pair(&k3, &StableCliquePair { stable: set(&[0]), clique: set(&[0, 1, 2]) }));
        assert!(validate_pair(&c5, &StableCliquePair { stable: set(&[0, 2]), clique: set(&[0, 1]) }));
        assert!(!validate_pair(&c5, &StableCliquePair { stable: set(&[0, 1]), clique: set(&[0, 1]) }));
        assert!(!validate_pair(&c5, &StableCliquePair { stable: set(&[7]), clique: set(&[]) }));
    }

    #[test]
    fn branch_and_bound_matches_brute_force_on_larger_graphs() {
        // Deterministic pseudo-random graphs above the enumeration cutoff.
        let mut s = 0x9e3779b97f4a7c15u64;
        for n in [8usize, 10, 12, 14] {
            for _ in 0..20 {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        s ^= s << 13;
                        s ^= s >> 7;
                        s ^= s << 17;
                        if s.is_multiple_of(2) {
                            edges.push((u, v));
                        }
                    }
                }
                let gr = g(n, &edges);
                let (a, w) = stability_number(&gr);
                assert_eq!(a, brute_alpha(&gr));
                assert!(is_stable(&gr, w) && w.len() == a);
                // Lexicographically smallest: no smaller-sequence stable set of size a.
                let best = (0u64..1 << n)
                    .map(VertexSet::from_bits)
                    .filter(|&t| t.len() == a && is_stable(&gr, t))
                    .map(|t| t.to_vec())
                    .min()
                    .unwrap();
                assert_eq!(w.to_vec(), best);
            }
        }
    }

    #[test]
    fn report_serializes_flat() {
        let r = InvariantReport::compute(&Graph::cycle(5).unwrap());
        let v: serde_json::Value = serde_json::to_value(r).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"n":5,"alpha":2,"omega":2,"tau":3,"nu":2,"triangles":0,"deficit":1})
        );
    }
}
