use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_key, CanonicalKey, CANON_MAX_VERTICES};
use crate::error::{check_envelope, Result};
use crate::graph::Graph;

use super::checkpoint::{sweep, with_jobs, CheckpointSpec};
use super::enumerate::{level_codes, ENUMERATION_MAX};
use super::predicate::ClassPredicate;

/// Worker count and optional checkpoint file for long runs.
#[derive(Debug, Clone, Default)]
pub struct MineOptions {
    pub jobs: Option<usize>,
    pub checkpoint: Option<PathBuf>,
}

/// A minimal forbidden induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub order: usize,
    pub key: CanonicalKey,
    #[serde(skip)]
    pub graph: Graph,
}

#[derive(Debug, Clone)]
pub struct MineResult {
    pub class: ClassPredicate,
    pub max_n: usize,
    /// Orders with at least one certificate.
    pub counts_by_order: BTreeMap<usize, usize>,
    /// Sorted by order, then canonical key.
    pub certificates: Vec<Certificate>,
    pub visited: u64,
    pub elapsed: Duration,
}

/// The machine-readable summary line of a mining run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MineSummary {
    pub class: String,
    pub max_n: usize,
    pub counts_by_order: BTreeMap<usize, usize>,
    pub total: usize,
}

impl MineResult {
    pub fn total(&self) -> usize {
        self.certificates.len()
    }

    pub fn summary(&self) -> MineSummary {
        MineSummary {
            class: self.class.to_string(),
            max_n: self.max_n,
            counts_by_order: self.counts_by_order.clone(),
            total: self.total(),
        }
    }

    fn from_graphs(
        class: ClassPredicate,
        max_n: usize,
        graphs: impl IntoIterator<Item = Graph>,
        visited: u64,
        started: Instant,
    ) -> Result<MineResult> {
        let mut certificates = graphs
            .into_iter()
            .map(|graph| {
                Ok(Certificate {
                    order: graph.n(),
                    key: canonical_key(&graph)?,
                    graph,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        certificates.sort_by_key(|c| (c.order, c.key));
        certificates.dedup_by_key(|c| c.key);
        let mut counts_by_order = BTreeMap::new();
        for c in &certificates {
            *counts_by_order.entry(c.order).or_insert(0) += 1;
        }
        Ok(MineResult {
            class,
            max_n,
            counts_by_order,
            certificates,
            visited,
            elapsed: started.elapsed(),
        })
    }
}

/// `g` is outside the class while every one-vertex deletion is inside.
pub fn is_minimal_forbidden(p: ClassPredicate, g: &Graph) -> Result<bool> {
    if p.holds(g)? {
        return Ok(false);
    }
    for v in 0..g.n() {
        if !p.holds(&g.delete_vertex(v)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

enum Verdict {
    /// Some deletion is outside the class.
    Above,
    Good,
    Certificate,
}

fn classify(p: ClassPredicate, g: &Graph, good_below: &[u64]) -> Verdict {
    let deletions_good = (0..g.n()).all(|v| {
        let h = g.delete_vertex(v).expect("in range");
        let code = canonical_key(&h).expect("small").to_code();
        good_below.binary_search(&code).is_ok()
    });
    match (deletions_good, p.local(g)) {
        (false, _) => Verdict::Above,
        (true, true) => Verdict::Good,
        (true, false) => Verdict::Certificate,
    }
}

/// All minimal forbidden induced subgraphs of the class with at most `max_n`
/// vertices, using the built-in enumerator.
///
/// Orders are processed bottom-up: a graph is in the class exactly when all
/// its one-vertex deletions are and its own local condition holds, so only
/// the catalogue of class members at the previous order is needed.
pub fn mine_forbidden(p: ClassPredicate, max_n: usize, opts: &MineOptions) -> Result<MineResult> {
    check_envelope("mine_forbidden", max_n, ENUMERATION_MAX)?;
    let started = Instant::now();
    with_jobs(opts.jobs, || {
        let mut good: Vec<u64> = vec![0];
        let mut found = Vec::new();
        let mut visited = 0u64;
        for k in 1..max_n {
            let codes = level_codes(k)?;
            let verdicts: Vec<Verdict> = codes
                .par_iter()
                .map(|&c| classify(p, &Graph::from_code(k, c), &good))
                .collect();
            visited += codes.len() as u64;
            let mut next = Vec::new();
            for (&c, v) in codes.iter().zip(verdicts) {
                match v {
                    Verdict::Good => next.push(c),
                    Verdict::Certificate => found.push(Graph::from_code(k, c)),
                    Verdict::Above => {}
                }
            }
            good = next;
        }
        if max_n > 0 {
            let spec = opts.checkpoint.as_ref().map(|path| CheckpointSpec {
                path: path.clone(),
                job: format!("mine {p} {max_n}"),
            });
            let top = sweep(max_n..=max_n, spec.as_ref(), |g| {
                (matches!(classify(p, g, &good), Verdict::Certificate), 0)
            })?;
            visited += top.per_order.values().map(|s| s.visited).sum::<u64>();
            found.extend(top.hits);
        }
        for g in &found {
            // Heredity spot check: each certificate must be minimal by the
            // whole-class definition, not just by the local shortcut.
            if g.n() <= p.envelope() {
                assert!(is_minimal_forbidden(p, g)?, "{p} is not hereditary at {g:?}");
            }
        }
        MineResult::from_graphs(p, max_n, found, visited, started)
    })
}

/// Minimal forbidden graphs among an external stream of graphs of any
/// order, deduplicated by canonical key.
pub fn mine_stream(
    p: ClassPredicate,
    graphs: impl IntoIterator<Item = Graph>,
    opts: &MineOptions,
) -> Result<MineResult> {
    let started = Instant::now();
    let graphs: Vec<Graph> = graphs.into_iter().collect();
    let max_n = graphs.iter().map(Graph::n).max().unwrap_or(0);
    check_envelope("mine_stream", max_n, p.envelope().min(CANON_MAX_VERTICES))?;
    with_jobs(opts.jobs, || {
        let verdicts: Vec<Result<bool>> =
            graphs.par_iter().map(|g| is_minimal_forbidden(p, g)).collect();
        let mut seen = HashSet::new();
        let mut found = Vec::new();
        for (g, v) in graphs.iter().zip(verdicts) {
            if v? && seen.insert(canonical_key(g)?) {
                found.push(*g);
            }
        }
        MineResult::from_graphs(p, max_n, found, graphs.len() as u64, started)
    })
}

/// Number of minimal forbidden graphs with at most `max_n` vertices for the
/// class of graphs whose induced subgraphs all have deficit at most `c`.
pub fn count_hc_forbidden(c: u32, max_n: usize) -> Result<usize> {
    check_envelope("count_hc_forbidden", max_n, 9)?;
    Ok(mine_forbidden(ClassPredicate::Deficiency(c), max_n, &MineOptions::default())?.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::forbidden_family;
    use crate::invariants::deficit;

    #[test]
    fn sum_perfect_up_to_five_is_c5() {
        let r = mine_forbidden(ClassPredicate::SumPerfect, 5, &MineOptions::default()).unwrap();
        assert_eq!(r.total(), 1);
        assert_eq!(r.certificates[0].key, canonical_key(&Graph::cycle(5).unwrap()).unwrap());
    }

    #[test]
    fn sum_perfect_up_to_seven_is_the_family() {
        let r = mine_forbidden(ClassPredicate::SumPerfect, 7, &MineOptions::default()).unwrap();
        let mined: HashSet<_> = r.certificates.iter().map(|c| c.key).collect();
        let family: HashSet<_> = forbidden_family().members().iter().map(|m| m.key).collect();
        assert_eq!(mined, family);
        assert_eq!(r.counts_by_order, BTreeMap::from([(5, 1), (6, 24), (7, 2)]));
    }

    #[test]
    fn threshold_obstructions() {
        let r = mine_forbidden(ClassPredicate::Threshold, 6, &MineOptions::default()).unwrap();
        let k2 = Graph::complete(2).unwrap();
        let mut want: Vec<_> = [
            Graph::path(4).unwrap(),
            Graph::cycle(4).unwrap(),
            k2.disjoint_union(&k2).unwrap(),
        ]
        .iter()
        .map(|g| canonical_key(g).unwrap())
        .collect();
        want.sort();
        let got: Vec<_> = r.certificates.iter().map(|c| c.key).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn perfect_obstructions_are_odd_holes_and_antiholes() {
        let r = mine_forbidden(ClassPredicate::Perfect, 7, &MineOptions::default()).unwrap();
        let c7 = Graph::cycle(7).unwrap();
        let mut want: Vec<_> = [Graph::cycle(5).unwrap(), c7, c7.complement()]
            .iter()
            .map(|g| canonical_key(g).unwrap())
            .collect();
        want.sort();
        assert_eq!(r.certificates.iter().map(|c| c.key).collect::<Vec<_>>(), want);
    }

    #[test]
    fn deficiency_certificates_have_deficit_c_plus_one() {
        let r = mine_forbidden(ClassPredicate::Deficiency(1), 7, &MineOptions::default()).unwrap();
        assert!(r.total() > 0);
        for c in &r.certificates {
            assert_eq!(deficit(&c.graph), 2);
        }
        assert_eq!(count_hc_forbidden(0, 7).unwrap(), 27);
    }

    #[test]
    fn minimality_examples() {
        let sp = ClassPredicate::SumPerfect;
        assert!(is_minimal_forbidden(sp, &Graph::cycle(5).unwrap()).unwrap());
        assert!(is_minimal_forbidden(sp, &Graph::cycle(6).unwrap()).unwrap());
        let p6k1 = Graph::path(6).unwrap().disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        assert!(!is_minimal_forbidden(sp, &p6k1).unwrap());
        let k2 = Graph::complete(2).unwrap();
        let two_k2 = k2.disjoint_union(&k2).unwrap();
        assert!(is_minimal_forbidden(ClassPredicate::Threshold, &two_k2).unwrap());
    }

    #[test]
    fn stream_mining_deduplicates() {
        let c5 = Graph::cycle(5).unwrap();
        let relabelled = c5.permute(&[2, 0, 4, 1, 3]);
        let r = mine_stream(
            ClassPredicate::SumPerfect,
            [c5, Graph::path(5).unwrap(), relabelled],
            &MineOptions::default(),
        )
        .unwrap();
        assert_eq!(r.total(), 1);
        assert_eq!(r.visited, 3);
    }

    #[test]
    fn output_is_independent_of_worker_count() {
        let one = mine_forbidden(
            ClassPredicate::Deficiency(1),
            7,
            &MineOptions { jobs: Some(1), checkpoint: None },
        )
        .unwrap();
        let four = mine_forbidden(
            ClassPredicate::Deficiency(1),
            7,
            &MineOptions { jobs: Some(4), checkpoint: None },
        )
        .unwrap();
        assert_eq!(one.certificates, four.certificates);
    }
}
