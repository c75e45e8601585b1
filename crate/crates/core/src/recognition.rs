//! Recognisers with checkable certificates: sum-perfect (by forbidden
//! induced subgraphs), threshold, split and apex-threshold.

use std::sync::OnceLock;

use serde::Serialize;

use crate::canon::{contains_induced, find_isomorphism, Embedding};
use crate::error::{check_envelope, Result};
use crate::family::forbidden_family;
use crate::graph::{compress, Graph, VertexSet};
use crate::invariants::{
    clique_number, deficient_subgraph, scan_induced_subgraphs, stability_number,
    validate_pair, StableCliquePair, SUBSET_SCAN_MAX,
};

/// Largest pattern order a [`PatternSet`] accepts (its lookup table has
/// `2^(k(k-1)/2)` entries).
pub const PATTERN_MAX_VERTICES: usize = 7;

/// Largest order for [`check_threshold_theorem`].
pub const THRESHOLD_SCAN_MAX: usize = 16;

/// A set of small patterns indexed by every labelled copy of each one.
///
/// For each pattern order `k` there is a table over all labelled `k`-vertex
/// graphs (indexed by [`Graph::code`]) naming the pattern it is isomorphic
/// to, so testing a `k`-subset of a host is a single lookup.
pub struct PatternSet {
    patterns: Vec<Pattern>,
    /// `tables[k]` maps a labelled code to `1 + position` in `patterns`, or 0.
    tables: Vec<Option<Vec<u8>>>,
}

struct Pattern {
    index: usize,
    name: &'static str,
    graph: Graph,
}

/// One induced copy of a pattern found in a host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternHit {
    /// The pattern's caller-assigned index (`i` of `H_i` for the family).
    pub index: usize,
    pub name: &'static str,
    pub embedding: Embedding,
}

impl PatternSet {
    /// Builds lookup tables for `(index, name, graph)` patterns. Patterns
    /// must be pairwise non-isomorphic and have at most
    /// [`PATTERN_MAX_VERTICES`] vertices.
    pub fn new(patterns: impl IntoIterator<Item = (usize, &'static str, Graph)>) -> Self {
        let patterns: Vec<Pattern> = patterns
            .into_iter()
            .map(|(index, name, graph)| Pattern { index, name, graph })
            .collect();
        assert!(patterns.len() < 255, "at most 254 patterns");
        let mut tables: Vec<Option<Vec<u8>>> = vec![None; PATTERN_MAX_VERTICES + 1];
        for (pos, p) in patterns.iter().enumerate() {
            let k = p.graph.n();
            assert!(k <= PATTERN_MAX_VERTICES, "pattern order {k} too large");
            let table = tables[k].get_or_insert_with(|| vec![0; 1 << (k * k.saturating_sub(1) / 2)]);
            let mut perm: Vec<usize> = (0..k).collect();
            loop {
                let code = p.graph.permute(&perm).code() as usize;
                assert!(
                    table[code] == 0 || table[code] as usize == pos + 1,
                    "patterns must be pairwise non-isomorphic"
                );
                table[code] = (pos + 1) as u8;
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        PatternSet { patterns, tables }
    }

    /// Pattern orders present, ascending.
    fn orders(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.tables.len()).filter(|&k| self.tables[k].is_some())
    }

    /// First copy of any pattern: smaller pattern orders first, then
    /// lexicographically smallest vertex subset.
    pub fn first_copy(&self, host: &Graph) -> Option<PatternHit> {
        self.orders()
            .find_map(|k| self.scan_order(host, k, true).into_iter().next())
    }

    /// Every copy of every pattern, one per vertex subset, ordered by pattern
    /// order then subset.
    pub fn all_copies(&self, host: &Graph) -> Vec<PatternHit> {
        self.orders()
            .flat_map(|k| self.scan_order(host, k, false))
            .collect()
    }

    pub fn is_free(&self, host: &Graph) -> bool {
        self.orders().all(|k| self.scan_order(host, k, true).is_empty())
    }

    fn scan_order(&self, host: &Graph, k: usize, first_only: bool) -> Vec<PatternHit> {
        let table = self.tables[k].as_deref().expect("order present");
        let mut hits = Vec::new();
        if k > host.n() {
            return hits;
        }
        let mut chosen = Vec::with_capacity(k);
        self.descend(host, table, k, 0, 0, 0, &mut chosen, first_only, &mut hits);
        hits
    }

    /// Depth-first walk over increasing vertex sequences, extending the
    /// labelled code one column per added vertex.
    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        host: &Graph,
        table: &[u8],
        k: usize,
        start: usize,
        prefix: u64,
        code: u64,
        chosen: &mut Vec<usize>,
        first_only: bool,
        hits: &mut Vec<PatternHit>,
    ) -> bool {
        let depth = chosen.len();
        if depth == k {
            let slot = table[code as usize];
            if slot != 0 {
                let p = &self.patterns[slot as usize - 1];
                let s: VertexSet = chosen.iter().copied().collect();
                let sub = host.induced_unchecked(s);
                let iso = find_isomorphism(&p.graph, &sub).expect("table hit is isomorphic");
                hits.push(PatternHit {
                    index: p.index,
                    name: p.name,
                    embedding: Embedding {
                        map: iso.into_iter().map(|i| chosen[i]).collect(),
                    },
                });
                return first_only;
            }
            return false;
        }
        let offset = depth * depth.saturating_sub(1) / 2;
        for v in start..=host.n() - (k - depth) {
            let column = compress(host.rows()[v], prefix);
            chosen.push(v);
            let stop = self.descend(
                host,
                table,
                k,
                v + 1,
                prefix | 1 << v,
                code | column << offset,
                chosen,
                first_only,
                hits,
            );
            chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Pattern set for all 27 members of the forbidden family.
pub fn family_patterns() -> &'static PatternSet {
    static SET: OnceLock<PatternSet> = OnceLock::new();
    SET.get_or_init(|| {
        PatternSet::new(forbidden_family().members().iter().map(|m| (m.index, m.name, m.graph)))
    })
}

/// Pattern set for `H2..H25`.
pub fn conjecture_patterns() -> &'static PatternSet {
    static SET: OnceLock<PatternSet> = OnceLock::new();
    SET.get_or_init(|| {
        PatternSet::new(
            forbidden_family()
                .conjecture_members()
                .iter()
                .map(|m| (m.index, m.name, m.graph)),
        )
    })
}

fn threshold_patterns() -> &'static PatternSet {
    static SET: OnceLock<PatternSet> = OnceLock::new();
    SET.get_or_init(|| {
        let k2 = Graph::complete(2).expect("small");
        PatternSet::new([
            (1, "P4", Graph::path(4).expect("small")),
            (2, "C4", Graph::cycle(4).expect("small")),
            (3, "2K2", k2.disjoint_union(&k2).expect("small")),
        ])
    })
}

/// Certificate attached to a recognition verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// An induced copy of `H_index`.
    ForbiddenCopy {
        index: usize,
        name: &'static str,
        embedding: Embedding,
    },
    /// A vertex set whose induced subgraph has positive deficit.
    DeficientSubgraph { vertices: VertexSet },
    /// A stable set and a clique whose sizes sum to at least `n`.
    StableClique { pair: StableCliquePair },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub verdict: bool,
    pub evidence: Evidence,
}

impl Witness {
    /// Re-checks the evidence against `g` independently of how it was found.
    pub fn verify(&self, g: &Graph) -> bool {
        match &self.evidence {
            Evidence::ForbiddenCopy {
                index, embedding, ..
            } => {
                !self.verdict
                    && forbidden_family()
                        .get(*index)
                        .is_some_and(|m| embedding.is_induced_copy(g, &m.graph))
            }
            Evidence::DeficientSubgraph { vertices } => {
                if self.verdict || !vertices.is_subset(g.vertices()) {
                    return false;
                }
                let h = g.induced_unchecked(*vertices);
                crate::invariants::deficit(&h) > 0
            }
            Evidence::StableClique { pair } => {
                validate_pair(g, pair) && pair.stable.len() + pair.clique.len() >= g.n()
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.evidence {
            Evidence::ForbiddenCopy { .. } => "forbidden_copy",
            Evidence::DeficientSubgraph { .. } => "deficient_subgraph",
            Evidence::StableClique { .. } => "stable_clique",
        }
    }

    /// Vertices the evidence refers to, in evidence order.
    pub fn vertices(&self) -> Vec<usize> {
        match &self.evidence {
            Evidence::ForbiddenCopy { embedding, .. } => embedding.map.clone(),
            Evidence::DeficientSubgraph { vertices } => vertices.to_vec(),
            Evidence::StableClique { pair } => {
                pair.stable.union(pair.clique).to_vec()
            }
        }
    }
}

fn stable_clique_witness(g: &Graph) -> Witness {
    let (_, stable) = stability_number(g);
    let (_, clique) = clique_number(g);
    Witness {
        verdict: true,
        evidence: Evidence::StableClique {
            pair: StableCliquePair { stable, clique },
        },
    }
}

/// Sum-perfect test by searching for an induced member of the forbidden
/// family. Works for any order; cost is `O(n^7)` subset lookups.
pub fn is_sum_perfect(g: &Graph) -> (bool, Witness) {
    match family_patterns().first_copy(g) {
        Some(hit) => (
            false,
            Witness {
                verdict: false,
                evidence: Evidence::ForbiddenCopy {
                    index: hit.index,
                    name: hit.name,
                    embedding: hit.embedding,
                },
            },
        ),
        None => (true, stable_clique_witness(g)),
    }
}

/// Every induced copy of every family member.
pub fn forbidden_copies(g: &Graph) -> Vec<PatternHit> {
    family_patterns().all_copies(g)
}

/// Definitional sum-perfect test with a deficient-subgraph certificate.
pub fn is_sum_perfect_by_definition(g: &Graph) -> Result<(bool, Witness)> {
    check_envelope("is_sum_perfect_by_definition", g.n(), SUBSET_SCAN_MAX)?;
    Ok(match deficient_subgraph(g)? {
        Some(vertices) => (
            false,
            Witness {
                verdict: false,
                evidence: Evidence::DeficientSubgraph { vertices },
            },
        ),
        None => (true, stable_clique_witness(g)),
    })
}

/// Threshold test by repeatedly removing an isolated or dominating vertex.
pub fn is_threshold(g: &Graph) -> bool {
    let verdict = threshold_elimination(g).is_some();
    debug_assert_eq!(verdict, is_threshold_forbidden_free(g), "{g:?}");
    verdict
}

/// An elimination order (each vertex isolated or dominating among those not
/// yet removed), if the graph is threshold.
pub fn threshold_elimination(g: &Graph) -> Option<Vec<usize>> {
    let mut left = g.vertices();
    let mut order = Vec::with_capacity(g.n());
    while !left.is_empty() {
        let k = left.len();
        let v = left.iter().find(|&v| {
            let d = g.neighbors(v).intersection(left).len();
            d == 0 || d == k - 1
        })?;
        order.push(v);
        left.remove(v);
    }
    Some(order)
}

/// Whether `g` has no induced `P4`, `C4` or `2K2`.
pub fn is_threshold_forbidden_free(g: &Graph) -> bool {
    threshold_patterns().is_free(g)
}

/// A partition into a clique and a stable set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitPartition {
    pub clique: VertexSet,
    pub stable: VertexSet,
}

/// Split test from the degree sequence: with degrees `d1 >= .. >= dn` and
/// `m = max{i : d_i >= i - 1}`, the graph is split iff
/// `sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i`, and then the `m` highest-degree
/// vertices form a clique and the rest a stable set.
pub fn is_split(g: &Graph) -> Option<SplitPartition> {
    let mut by_degree: Vec<usize> = (0..g.n()).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let degrees: Vec<usize> = by_degree.iter().map(|&v| g.degree(v)).collect();
    let m = degrees
        .iter()
        .enumerate()
        .rev()
        .find(|&(i, &d)| d >= i)
        .map_or(0, |(i, _)| i + 1);
    let head: usize = degrees[..m].iter().sum();
    let tail: usize = degrees[m..].iter().sum();
    if head != m * m.saturating_sub(1) + tail {
        return None;
    }
    let clique: VertexSet = by_degree[..m].iter().copied().collect();
    let part = SplitPartition {
        clique,
        stable: g.vertices().difference(clique),
    };
    debug_assert!(crate::invariants::is_clique(g, part.clique));
    debug_assert!(crate::invariants::is_stable(g, part.stable));
    Some(part)
}

/// Smallest vertex whose deletion leaves a threshold graph.
pub fn is_apex_threshold(g: &Graph) -> Option<usize> {
    (0..g.n()).find(|&v| {
        let h = g.induced_unchecked(g.vertices().without(v));
        threshold_elimination(&h).is_some()
    })
}

/// Whether every non-empty induced subgraph `H` has
/// `alpha(H) + omega(H) = |V(H)| + 1`.
pub fn check_threshold_theorem(g: &Graph) -> Result<bool> {
    check_envelope("check_threshold_theorem", g.n(), THRESHOLD_SCAN_MAX)?;
    Ok(scan_induced_subgraphs(g, |k, a, o| a + o == k + 1))
}

/// First induced copy of any of `P4`, `C4`, `2K2`, by name.
pub fn threshold_obstruction(g: &Graph) -> Option<(&'static str, Embedding)> {
    threshold_patterns()
        .first_copy(g)
        .map(|h| (h.name, h.embedding))
}

/// Generic check that the embedding of a [`PatternHit`] induces `pattern`.
pub fn hit_is_valid(host: &Graph, pattern: &Graph, hit: &PatternHit) -> bool {
    hit.embedding.is_induced_copy(host, pattern)
        && contains_induced(&host.induced_unchecked(hit.embedding.image()), pattern).is_some()
}
