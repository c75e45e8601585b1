//! Resumable sweeps over enumerated graphs.
//!
//! A checkpoint is a plain text file:
//!
//! ```text
//! job <description>
//! done <order> <visited> <tally>
//! cursor <order> <next-batch> <visited> <tally>
//! <graph6 of each hit so far, one per line>
//! ```
//!
//! It is rewritten after every batch, so an interrupted run repeats at most
//! one batch.

use std::collections::BTreeMap;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::format::{emit_graph6, parse_graph6};
use crate::graph::Graph;

use super::enumerate::{batch_count, batch_graphs};

/// Where to persist progress, and which job it belongs to.
#[derive(Debug, Clone)]
pub struct CheckpointSpec {
    pub path: PathBuf,
    pub job: String,
}

/// Per-order statistics of a sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OrderStats {
    pub visited: u64,
    /// Sum of the per-graph tallies returned by the visitor.
    pub tally: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Checkpoint {
    pub job: String,
    pub done: BTreeMap<usize, OrderStats>,
    /// Order in progress, next batch to run, and statistics so far.
    pub cursor: Option<(usize, usize, OrderStats)>,
    pub hits: Vec<Graph>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Checkpoint(format!("{}: {e}", path.display()))),
        };
        Checkpoint::parse(&text).map(Some)
    }

    pub fn parse(text: &str) -> Result<Checkpoint> {
        let bad = |line: usize, what: &str| Error::Checkpoint(format!("line {line}: {what}"));
        let mut cp = Checkpoint::default();
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.starts_with("job ") => cp.job = l[4..].to_string(),
            _ => return Err(bad(1, "missing job line")),
        }
        for (i, line) in lines {
            let nums = |rest: &str, want: usize| -> Result<Vec<u64>> {
                let v: Vec<u64> = rest
                    .split_whitespace()
                    .map(str::parse)
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad(i + 1, "expected integers"))?;
                if v.len() == want {
                    Ok(v)
                } else {
                    Err(bad(i + 1, "wrong field count"))
                }
            };
            if let Some(rest) = line.strip_prefix("done ") {
                let v = nums(rest, 3)?;
                cp.done.insert(v[0] as usize, OrderStats { visited: v[1], tally: v[2] });
            } else if let Some(rest) = line.strip_prefix("cursor ") {
                let v = nums(rest, 4)?;
                cp.cursor = Some((v[0] as usize, v[1] as usize, OrderStats { visited: v[2], tally: v[3] }));
            } else if !line.is_empty() {
                cp.hits.push(parse_graph6(line).map_err(|e| bad(i + 1, &e.to_string()))?);
            }
        }
        Ok(cp)
    }

    pub fn render(&self) -> Result<String> {
        let mut out = format!("job {}\n", self.job);
        for (order, s) in &self.done {
            out += &format!("done {order} {} {}\n", s.visited, s.tally);
        }
        if let Some((order, batch, s)) = self.cursor {
            out += &format!("cursor {order} {batch} {} {}\n", s.visited, s.tally);
        }
        for g in &self.hits {
            out += &emit_graph6(g)?;
            out.push('\n');
        }
        Ok(out)
    }

    /// Writes through a temporary file so a crash never leaves a torn file.
    pub fn save(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Checkpoint(format!("{}: {e}", path.display()));
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.render()?).map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }
}

/// Result of [`sweep`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepOutcome {
    pub per_order: BTreeMap<usize, OrderStats>,
    /// Graphs the visitor flagged, by order then enumeration order.
    pub hits: Vec<Graph>,
}

/// Visits every graph with order in `orders`. The visitor returns whether the
/// graph is a hit and a tally to accumulate. With a checkpoint, progress is
/// saved after each batch and a matching earlier checkpoint is resumed.
pub fn sweep<F>(
    orders: RangeInclusive<usize>,
    checkpoint: Option<&CheckpointSpec>,
    visit: F,
) -> Result<SweepOutcome>
where
    F: Fn(&Graph) -> (bool, u64) + Sync,
{
    let mut state = Checkpoint::default();
    if let Some(spec) = checkpoint {
        state.job = spec.job.clone();
        if let Some(prev) = Checkpoint::load(&spec.path)? {
            if prev.job != spec.job {
                return Err(Error::Checkpoint(format!(
                    "{} belongs to job `{}`, not `{}`",
                    spec.path.display(),
                    prev.job,
                    spec.job
                )));
            }
            state = prev;
        }
    }
    for order in orders {
        if state.done.contains_key(&order) {
            continue;
        }
        let (mut batch, mut stats) = match state.cursor {
            Some((o, b, s)) if o == order => (b, s),
            _ => (0, OrderStats::default()),
        };
        let batches = batch_count(order)?;
        while batch < batches {
            let graphs = batch_graphs(order, batch)?;
            let results: Vec<(bool, u64)> = graphs.par_iter().map(&visit).collect();
            for (g, (hit, tally)) in graphs.iter().zip(results) {
                stats.visited += 1;
                stats.tally += tally;
                if hit {
                    state.hits.push(*g);
                }
            }
            batch += 1;
            state.cursor = Some((order, batch, stats));
            if let Some(spec) = checkpoint {
                state.save(&spec.path)?;
            }
        }
        state.done.insert(order, stats);
        state.cursor = None;
        if let Some(spec) = checkpoint {
            state.save(&spec.path)?;
        }
    }
    Ok(SweepOutcome {
        per_order: state.done,
        hits: state.hits,
    })
}

/// Runs `f` on a pool of `jobs` workers (all available cores when `None`).
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}
