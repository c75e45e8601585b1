use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::CanonicalKey;
use crate::error::{check_envelope, Result};
use crate::family::forbidden_family;
use crate::graph::Graph;
use crate::invariants::{clique_size, deficit, stability_size};
use crate::recognition::{
    check_threshold_theorem, conjecture_patterns, THRESHOLD_SCAN_MAX, is_threshold_forbidden_free,
    threshold_elimination,
};

use super::checkpoint::{sweep, with_jobs, CheckpointSpec, SweepOutcome};
use super::enumerate::ENUMERATION_MAX;
use super::mine::{mine_forbidden, mine_stream, MineOptions, MineResult};
use super::predicate::ClassPredicate;

#[derive(Debug, Clone, Serialize)]
pub struct Theorem27Report {
    pub max_n: usize,
    pub counts_by_order: BTreeMap<usize, usize>,
    /// Family members (by index) of order at most `max_n` that were not mined.
    pub missing: Vec<usize>,
    /// Mined graphs that are not family members.
    pub unexpected: Vec<CanonicalKey>,
    /// Whether every certificate has `max(alpha, omega) <= 3`.
    pub alpha_omega_at_most_3: bool,
}

impl Theorem27Report {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty() && self.alpha_omega_at_most_3
    }
}

/// Mines the sum-perfect class up to `max_n` and compares with the family.
pub fn verify_theorem_27(max_n: usize, opts: &MineOptions) -> Result<Theorem27Report> {
    Ok(compare_with_family(&mine_forbidden(ClassPredicate::SumPerfect, max_n, opts)?))
}

/// As [`verify_theorem_27`], over an external stream of graphs.
pub fn verify_theorem_27_stream(
    graphs: impl IntoIterator<Item = Graph>,
    opts: &MineOptions,
) -> Result<Theorem27Report> {
    Ok(compare_with_family(&mine_stream(ClassPredicate::SumPerfect, graphs, opts)?))
}

fn compare_with_family(r: &MineResult) -> Theorem27Report {
    let max_n = r.max_n;
    let family = forbidden_family();
    let mined: HashSet<CanonicalKey> = r.certificates.iter().map(|c| c.key).collect();
    let missing = family
        .members()
        .iter()
        .filter(|m| m.graph.n() <= max_n && !mined.contains(&m.key))
        .map(|m| m.index)
        .collect();
    let unexpected = r
        .certificates
        .iter()
        .filter(|c| family.index_of(&c.key).is_none())
        .map(|c| c.key)
        .collect();
    let alpha_omega_at_most_3 = r
        .certificates
        .iter()
        .all(|c| stability_size(&c.graph).max(clique_size(&c.graph)) <= 3);
    Theorem27Report {
        max_n,
        counts_by_order: r.counts_by_order.clone(),
        missing,
        unexpected,
        alpha_omega_at_most_3,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub max_n: usize,
    pub graphs_checked: u64,
    /// Graphs with no induced member of the conjecture family, per order.
    pub b_free_by_order: BTreeMap<usize, u64>,
    /// Graphs with `deficit > 1` and no induced member of the conjecture family.
    #[serde(skip)]
    pub counterexamples: Vec<Graph>,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `deficit(G) <= 1` for every graph on `1..=max_n` vertices with no
/// induced `H2..H25`.
pub fn verify_conjecture(max_n: usize, opts: &MineOptions) -> Result<ConjectureReport> {
    check_envelope("verify_conjecture", max_n, ENUMERATION_MAX)?;
    let spec = opts.checkpoint.as_ref().map(|path| CheckpointSpec {
        path: path.clone(),
        job: format!("verify conjecture {max_n}"),
    });
    let out = with_jobs(opts.jobs, || sweep(1..=max_n, spec.as_ref(), conjecture_visit))?;
    Ok(ConjectureReport {
        max_n,
        graphs_checked: out.per_order.values().map(|s| s.visited).sum(),
        b_free_by_order: out.per_order.iter().map(|(&k, s)| (k, s.tally)).collect(),
        counterexamples: out.hits,
    })
}

fn conjecture_visit(g: &Graph) -> (bool, u64) {
    let free = conjecture_patterns().is_free(g);
    (free && deficit(g) > 1, free as u64)
}

/// As [`verify_conjecture`], over an external stream of graphs.
pub fn verify_conjecture_stream(
    graphs: impl IntoIterator<Item = Graph>,
    opts: &MineOptions,
) -> ConjectureReport {
    let graphs: Vec<Graph> = graphs.into_iter().collect();
    let out = with_jobs(opts.jobs, || stream_sweep(graphs, conjecture_visit));
    ConjectureReport {
        max_n: out.per_order.keys().max().copied().unwrap_or(0),
        graphs_checked: out.per_order.values().map(|s| s.visited).sum(),
        b_free_by_order: out.per_order.iter().map(|(&k, s)| (k, s.tally)).collect(),
        counterexamples: out.hits,
    }
}

fn stream_sweep(graphs: Vec<Graph>, visit: fn(&Graph) -> (bool, u64)) -> SweepOutcome {
    let results: Vec<(bool, u64)> = graphs.par_iter().map(visit).collect();
    let mut out = SweepOutcome::default();
    for (g, (hit, tally)) in graphs.iter().zip(results) {
        let s = out.per_order.entry(g.n()).or_default();
        s.visited += 1;
        s.tally += tally;
        if hit {
            out.hits.push(*g);
        }
    }
    out
}

/// Whether `g` either has deficit at most 1 or contains one of `H2..H25`.
pub fn conjecture_holds_for(g: &Graph) -> bool {
    deficit(g) <= 1 || !conjecture_patterns().is_free(g)
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport {
    pub max_n: usize,
    pub graphs_checked: u64,
    pub threshold_by_order: BTreeMap<usize, u64>,
    #[serde(skip)]
    pub disagreements: Vec<Graph>,
}

impl ThresholdReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares three threshold characterisations on every graph up to `max_n`:
/// an isolated/dominating elimination order, `{P4, C4, 2K2}`-freeness, and
/// `alpha + omega = |V| + 1` on every non-empty induced subgraph.
pub fn verify_threshold(max_n: usize, opts: &MineOptions) -> Result<ThresholdReport> {
    check_envelope("verify_threshold", max_n, ENUMERATION_MAX)?;
    let spec = opts.checkpoint.as_ref().map(|path| CheckpointSpec {
        path: path.clone(),
        job: format!("verify threshold {max_n}"),
    });
    let out = with_jobs(opts.jobs, || sweep(1..=max_n, spec.as_ref(), threshold_visit))?;
    Ok(ThresholdReport {
        max_n,
        graphs_checked: out.per_order.values().map(|s| s.visited).sum(),
        threshold_by_order: out.per_order.iter().map(|(&k, s)| (k, s.tally)).collect(),
        disagreements: out.hits,
    })
}

fn threshold_visit(g: &Graph) -> (bool, u64) {
    let a = threshold_elimination(g).is_some();
    let b = is_threshold_forbidden_free(g);
    let c = check_threshold_theorem(g).expect("order within envelope");
    (a != b || b != c, a as u64)
}

/// As [`verify_threshold`], over an external stream of graphs with at most
/// [`THRESHOLD_SCAN_MAX`] vertices.
pub fn verify_threshold_stream(
    graphs: impl IntoIterator<Item = Graph>,
    opts: &MineOptions,
) -> Result<ThresholdReport> {
    let graphs: Vec<Graph> = graphs.into_iter().collect();
    let max_n = graphs.iter().map(Graph::n).max().unwrap_or(0);
    check_envelope("verify_threshold", max_n, THRESHOLD_SCAN_MAX)?;
    let out = with_jobs(opts.jobs, || stream_sweep(graphs, threshold_visit));
    Ok(ThresholdReport {
        max_n,
        graphs_checked: out.per_order.values().map(|s| s.visited).sum(),
        threshold_by_order: out.per_order.iter().map(|(&k, s)| (k, s.tally)).collect(),
        disagreements: out.hits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_27_to_seven() {
        let r = verify_theorem_27(7, &MineOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn conjecture_to_seven() {
        let r = verify_conjecture(7, &MineOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.graphs_checked, 1 + 2 + 4 + 11 + 34 + 156 + 1044);
        assert!(conjecture_holds_for(&Graph::cycle(5).unwrap()));
        assert_eq!(deficit(&Graph::cycle(5).unwrap()), 1);
    }

    #[test]
    fn stream_variants_agree() {
        let graphs = vec![Graph::cycle(5).unwrap(), Graph::path(4).unwrap(), Graph::cycle(6).unwrap()];
        let opts = MineOptions::default();
        assert!(verify_conjecture_stream(graphs.clone(), &opts).passed());
        let t = verify_threshold_stream(graphs.clone(), &opts).unwrap();
        assert!(t.passed());
        assert_eq!(t.graphs_checked, 3);
        let r = verify_theorem_27_stream(graphs, &opts).unwrap();
        assert_eq!(r.counts_by_order, BTreeMap::from([(5, 1), (6, 1)]));
        // Family members on 6 and 7 vertices are missing from the stream.
        assert!(!r.passed());
    }

    #[test]
    fn threshold_counts_are_powers_of_two() {
        let r = verify_threshold(7, &MineOptions::default()).unwrap();
        assert!(r.passed());
        for (&n, &count) in &r.threshold_by_order {
            assert_eq!(count, 1 << (n - 1), "n={n}");
        }
    }
}
