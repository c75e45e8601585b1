//! The 27 minimal non-sum-perfect graphs `H1..H27` and the 24-member
//! sub-family `H2..H25`.
//!
//! `H1..H13` and `H26` are stored as edge lists on the vertex labels of their
//! reference drawings; `H14..H25` are the complements of `H2..H13` and `H27`
//! is the complement of `H26`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::canon::{canonical_key, contains_induced, CanonicalKey};
use crate::graph::Graph;
use crate::invariants::{
    clique_size, deficit, is_sum_perfect_definitional, matching_number, stability_size,
};

type EdgeList = &'static [(usize, usize)];

/// `(index, name, order, edges)` for the explicitly drawn members.
const DRAWN: [(usize, &str, usize, EdgeList); 14] = [
    (1, "C5", 5, &[(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]),
    (2, "3K2", 6, &[(0, 3), (1, 4), (2, 5)]),
    (3, "P4+K2", 6, &[(0, 3), (0, 5), (1, 4), (2, 5)]),
    (4, "S_{1,2,2}", 6, &[(0, 3), (0, 5), (1, 4), (1, 5), (2, 5)]),
    (5, "C4+K2", 6, &[(0, 3), (1, 4), (1, 5), (2, 4), (2, 5)]),
    (6, "P6", 6, &[(0, 3), (0, 5), (1, 4), (1, 5), (2, 4)]),
    (7, "H7", 6, &[(0, 3), (0, 5), (1, 4), (1, 5), (2, 4), (2, 5)]),
    (8, "C6", 6, &[(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5)]),
    (9, "H9", 6, &[(0, 3), (0, 4), (0, 5), (1, 4), (1, 5), (2, 5)]),
    (10, "H10", 6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 5), (2, 4), (2, 5)]),
    (11, "H11", 6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 5)]),
    (
        12,
        "K3,3-e",
        6,
        &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 4), (2, 5)],
    ),
    (
        13,
        "K3,3",
        6,
        &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
    ),
    (
        26,
        "H26",
        7,
        &[(0, 3), (0, 5), (0, 6), (1, 4), (1, 5), (2, 4), (2, 6), (4, 5), (4, 6), (5, 6)],
    ),
];

/// Names of the complemented members `H14..H25`, `H27`.
const COMPLEMENT_NAMES: [(usize, &str); 13] = [
    (14, "co-3K2"),
    (15, "co-(P4+K2)"),
    (16, "co-S_{1,2,2}"),
    (17, "co-(C4+K2)"),
    (18, "co-P6"),
    (19, "H19"),
    (20, "co-C6"),
    (21, "H21"),
    (22, "H22"),
    (23, "H23"),
    (24, "co-(K3,3-e)"),
    (25, "2K3"),
    (27, "H27"),
];

#[derive(Debug, Clone, Serialize)]
pub struct FamilyMember {
    /// 1-based position `i` of `H_i`.
    pub index: usize,
    pub name: &'static str,
    #[serde(skip)]
    pub graph: Graph,
    pub key: CanonicalKey,
}

#[derive(Debug, Clone)]
pub struct ForbiddenFamily {
    members: Vec<FamilyMember>,
}

impl ForbiddenFamily {
    pub fn members(&self) -> &[FamilyMember] {
        &self.members
    }

    /// Member `H_index`, `1 <= index <= 27`.
    pub fn get(&self, index: usize) -> Option<&FamilyMember> {
        index.checked_sub(1).and_then(|i| self.members.get(i))
    }

    /// Members `H2..H25`.
    pub fn conjecture_members(&self) -> &[FamilyMember] {
        &self.members[1..25]
    }

    pub fn index_of(&self, key: &CanonicalKey) -> Option<usize> {
        self.members.iter().find(|m| &m.key == key).map(|m| m.index)
    }
}

fn member(index: usize, name: &'static str, graph: Graph) -> FamilyMember {
    let key = canonical_key(&graph).expect("family members have at most 7 vertices");
    FamilyMember {
        index,
        name,
        graph,
        key,
    }
}

pub fn build_family() -> ForbiddenFamily {
    let drawn: Vec<(usize, &'static str, Graph)> = DRAWN
        .iter()
        .map(|&(i, name, n, edges)| {
            (i, name, Graph::from_edge_list(n, edges).expect("valid drawing"))
        })
        .collect();
    let graph_of = |i: usize| drawn.iter().find(|d| d.0 == i).map(|d| d.2);

    let mut members: Vec<FamilyMember> = drawn.iter().map(|&(i, name, g)| member(i, name, g)).collect();
    for (i, name) in COMPLEMENT_NAMES {
        let base = if i == 27 { 26 } else { i - 12 };
        let g = graph_of(base).expect("base member is drawn").complement();
        members.push(member(i, name, g));
    }
    members.sort_by_key(|m| m.index);
    debug_assert!(members.iter().enumerate().all(|(k, m)| m.index == k + 1));
    ForbiddenFamily { members }
}

/// Shared instance of [`build_family`].
pub fn forbidden_family() -> &'static ForbiddenFamily {
    static FAMILY: OnceLock<ForbiddenFamily> = OnceLock::new();
    FAMILY.get_or_init(build_family)
}

/// The 24 graphs `H2..H25`.
pub fn build_conjecture_family() -> Vec<Graph> {
    build_family()
        .conjecture_members()
        .iter()
        .map(|m| m.graph)
        .collect()
}

/// All bipartite graphs on 6 vertices with a perfect matching, up to
/// isomorphism: `3K2` on parts `{0,1,2}`, `{3,4,5}` plus every subset of the
/// six remaining cross edges. Ordered by edge count, then canonical key.
pub fn enumerate_bipartite_pm6() -> Vec<Graph> {
    const MATCHING: [(usize, usize); 3] = [(0, 3), (1, 4), (2, 5)];
    const CROSS: [(usize, usize); 6] = [(0, 4), (0, 5), (1, 3), (1, 5), (2, 3), (2, 4)];
    let mut found: Vec<(usize, CanonicalKey, Graph)> = Vec::new();
    for mask in 0u32..1 << CROSS.len() {
        let edges: Vec<_> = MATCHING
            .iter()
            .chain(CROSS.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e))
            .copied()
            .collect();
        let g = Graph::from_edge_list(6, &edges).expect("valid edges");
        let key = canonical_key(&g).expect("6 vertices");
        if found.iter().all(|(_, k, _)| *k != key) {
            debug_assert!(g.is_bipartite() && matching_number(&g) == 3);
            found.push((g.edge_count(), key, g));
        }
    }
    found.sort_by_key(|&(m, k, _)| (m, k));
    found.into_iter().map(|(_, _, g)| g).collect()
}

/// Per-member results of [`verify_family`].
#[derive(Debug, Clone, Serialize)]
pub struct MemberCheck {
    pub index: usize,
    pub name: &'static str,
    pub alpha: usize,
    pub omega: usize,
    /// `n - alpha - omega == 1`.
    pub deficit_is_one: bool,
    /// Every one-vertex deletion is sum-perfect (definitional scan).
    pub deletions_sum_perfect: bool,
    /// `alpha(G - v) == alpha(G)` and `omega(G - v) == omega(G)` for all `v`.
    pub deletion_invariant: bool,
    /// `max(alpha, omega) <= 3`.
    pub alpha_omega_at_most_3: bool,
    pub connected: bool,
}

impl MemberCheck {
    pub fn passed(&self) -> bool {
        self.deficit_is_one
            && self.deletions_sum_perfect
            && self.deletion_invariant
            && self.alpha_omega_at_most_3
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub members: Vec<MemberCheck>,
    pub pairwise_non_isomorphic: bool,
    /// The set of canonical keys is mapped onto itself by complementation.
    pub complement_closed: bool,
    /// No member is a proper induced subgraph of another.
    pub minimal: bool,
    /// Indices of the disconnected members.
    pub disconnected: Vec<usize>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.members.iter().all(MemberCheck::passed)
            && self.pairwise_non_isomorphic
            && self.complement_closed
            && self.minimal
    }
}

pub fn verify_family(f: &ForbiddenFamily) -> FamilyReport {
    let members: Vec<MemberCheck> = f.members().iter().map(check_member).collect();

    let mut keys: Vec<CanonicalKey> = f.members().iter().map(|m| m.key).collect();
    keys.sort();
    let pairwise_non_isomorphic = keys.windows(2).all(|w| w[0] != w[1]);

    let mut co_keys: Vec<CanonicalKey> = f
        .members()
        .iter()
        .map(|m| canonical_key(&m.graph.complement()).expect("small graph"))
        .collect();
    co_keys.sort();
    let complement_closed = co_keys == keys;

    let minimal = f.members().iter().all(|big| {
        f.members()
            .iter()
            .filter(|small| small.graph.n() < big.graph.n())
            .all(|small| contains_induced(&big.graph, &small.graph).is_none())
    });

    let disconnected = f
        .members()
        .iter()
        .filter(|m| !m.graph.is_connected())
        .map(|m| m.index)
        .collect();

    FamilyReport {
        members,
        pairwise_non_isomorphic,
        complement_closed,
        minimal,
        disconnected,
    }
}

fn check_member(m: &FamilyMember) -> MemberCheck {
    let g = &m.graph;
    let alpha = stability_size(g);
    let omega = clique_size(g);
    let deletions: Vec<Graph> = (0..g.n())
        .map(|v| g.delete_vertex(v).expect("vertex in range"))
        .collect();
    MemberCheck {
        index: m.index,
        name: m.name,
        alpha,
        omega,
        deficit_is_one: deficit(g) == 1,
        deletions_sum_perfect: deletions
            .iter()
            .all(|h| is_sum_perfect_definitional(h).expect("small graph")),
        deletion_invariant: deletions
            .iter()
            .all(|h| stability_size(h) == alpha && clique_size(h) == omega),
        alpha_omega_at_most_3: alpha.max(omega) <= 3,
        connected: g.is_connected(),
    }
}
