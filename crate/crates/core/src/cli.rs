//! The `sumperfect` command line.
//!
//! Exit status: 0 when everything passed, 1 when a counterexample was found,
//! 2 on usage or parse errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::family::forbidden_family;
use crate::format::{emit_edge_list, emit_graph6, parse_stream, InputFormat};
use crate::graph::{Graph, VertexSet};
use crate::invariants::{max_deficiency, scan_induced_subgraphs, InvariantReport, SUBSET_SCAN_MAX};
use crate::miner::mine::mine_stream;
use crate::miner::verify::{
    verify_conjecture, verify_conjecture_stream, verify_theorem_27, verify_theorem_27_stream,
    verify_threshold, verify_threshold_stream,
};
use crate::miner::{mine_forbidden, ClassPredicate, MineOptions, MineResult};
use crate::recognition::{
    forbidden_copies, is_apex_threshold, is_split, is_sum_perfect, threshold_elimination,
    threshold_obstruction, Evidence, Witness,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sumperfect", version, about = "Sum-perfect graph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants and class membership for each input graph.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include the certificate behind the sum-perfect verdict.
        #[arg(long)]
        witness: bool,
        /// List every induced copy of every forbidden graph.
        #[arg(long)]
        all_witnesses: bool,
    },
    /// Print the forbidden family.
    Family {
        /// `F` for all 27 members, `B` for H2..H25.
        #[arg(long, value_enum, default_value_t = FamilySet::F)]
        set: FamilySet,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide membership in a class for each input graph.
    Recognize {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "sum-perfect", value_parser = parse_class)]
        class: ClassPredicate,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        witness: bool,
    },
    /// Minimal forbidden induced subgraphs of a class.
    Mine {
        #[arg(long, value_parser = parse_class)]
        class: ClassPredicate,
        #[arg(long)]
        max_n: Option<usize>,
        /// Read candidate graphs (graph6) from this file instead of
        /// enumerating; `-` for stdin.
        #[arg(long)]
        source: Option<String>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exhaustive checks of the characterisation theorems.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        source: Option<String>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(clap::Args, Debug)]
struct InputArgs {
    /// Input file, `-` for stdin.
    #[arg(default_value = "-")]
    path: String,
    #[arg(long = "input", value_enum, default_value_t = InputKind::Auto)]
    kind: InputKind,
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Progress file; an interrupted run resumes from it.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

impl RunArgs {
    fn options(&self) -> MineOptions {
        MineOptions {
            jobs: self.jobs,
            checkpoint: self.checkpoint.clone(),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Graph6,
    Edges,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum InputKind {
    Auto,
    Graph6,
    Edges,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilySet {
    #[value(name = "F", alias = "f")]
    F,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Target {
    Theorem27,
    Conjecture,
    Threshold,
}

fn parse_class(s: &str) -> Result<ClassPredicate, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Failure that ends a command early.
enum Stop {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Stop {
    fn from(e: io::Error) -> Self {
        Stop::Io(e)
    }
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Usage(e.to_string())
    }
}

type Outcome = Result<i32, Stop>;

/// Runs the command line `args` (including the program name) and returns
/// the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_PASS;
        }
    };
    let mut io = Io { stdin, out, err };
    let result = match cli.command {
        Command::Analyze {
            input,
            format,
            witness,
            all_witnesses,
        } => analyze(&mut io, &input, format, witness, all_witnesses),
        Command::Family { set, format } => family(&mut io, set, format),
        Command::Recognize {
            input,
            class,
            format,
            witness,
        } => recognize(&mut io, &input, class, format, witness),
        Command::Mine {
            class,
            max_n,
            source,
            run,
            format,
        } => mine(&mut io, class, max_n, source.as_deref(), &run, format),
        Command::Verify {
            target,
            max_n,
            source,
            run,
            format,
        } => verify(&mut io, target, max_n, source.as_deref(), &run, format),
    };
    match result {
        Ok(code) => code,
        Err(Stop::Usage(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Stop::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_PASS,
        Err(Stop::Io(e)) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_source(io: &mut Io, path: &str) -> Result<String, Stop> {
    if path == "-" {
        let mut text = String::new();
        io.stdin.read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Stop::Usage(format!("{path}: {e}")))
    }
}

/// Parses every graph in the input, reporting bad entries on stderr. The
/// flag is set when any entry failed to parse.
fn read_graphs(io: &mut Io, path: &str, kind: InputKind) -> Result<(Vec<(usize, Graph)>, bool), Stop> {
    let text = read_source(io, path)?;
    let format = match kind {
        InputKind::Auto => InputFormat::Auto,
        InputKind::Graph6 => InputFormat::Graph6,
        InputKind::Edges => InputFormat::EdgeList,
    };
    let mut graphs = Vec::new();
    let mut failed = false;
    for (line, parsed) in parse_stream(&text, format) {
        match parsed {
            Ok(g) => graphs.push((line, g)),
            Err(e) => {
                failed = true;
                writeln!(io.err, "line {line}: {e}")?;
            }
        }
    }
    Ok((graphs, failed))
}

fn only_text_or_json(format: Format, command: &str) -> Result<(), Stop> {
    match format {
        Format::Text | Format::Json => Ok(()),
        _ => Err(Stop::Usage(format!("{command} supports --format text or json"))),
    }
}

#[derive(Serialize)]
struct WitnessRecord {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    forbidden_index: Option<usize>,
    vertices: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stable: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clique: Option<VertexSet>,
}

impl From<&Witness> for WitnessRecord {
    fn from(w: &Witness) -> Self {
        let (forbidden_index, stable, clique) = match &w.evidence {
            Evidence::ForbiddenCopy { index, .. } => (Some(*index), None, None),
            Evidence::StableClique { pair } => (None, Some(pair.stable), Some(pair.clique)),
            Evidence::DeficientSubgraph { .. } => (None, None, None),
        };
        WitnessRecord {
            kind: w.kind(),
            forbidden_index,
            vertices: w.vertices(),
            stable,
            clique,
        }
    }
}

#[derive(Serialize)]
struct CopyRecord {
    forbidden_index: usize,
    forbidden_name: &'static str,
    vertices: Vec<usize>,
}

#[derive(Serialize)]
struct AnalysisRecord {
    id: usize,
    #[serde(flatten)]
    invariants: InvariantReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_deficiency: Option<i64>,
    sum_perfect: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    forbidden_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    forbidden_name: Option<&'static str>,
    threshold: bool,
    split: bool,
    apex_threshold: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    all_witnesses: Option<Vec<CopyRecord>>,
}

fn analysis(id: usize, g: &Graph, witness: bool, all: bool) -> AnalysisRecord {
    let (sum_perfect, w) = is_sum_perfect(g);
    let max_deficiency = (g.n() <= SUBSET_SCAN_MAX).then(|| max_deficiency(g).expect("within envelope"));
    if let Some(d) = max_deficiency {
        assert_eq!(sum_perfect, d <= 0, "recognisers disagree on {g:?}");
    }
    let (forbidden_index, forbidden_name) = match &w.evidence {
        Evidence::ForbiddenCopy { index, name, .. } => (Some(*index), Some(*name)),
        _ => (None, None),
    };
    AnalysisRecord {
        id,
        invariants: InvariantReport::compute(g),
        max_deficiency,
        sum_perfect,
        forbidden_index,
        forbidden_name,
        threshold: threshold_elimination(g).is_some(),
        split: is_split(g).is_some(),
        apex_threshold: is_apex_threshold(g).is_some(),
        witness: witness.then(|| WitnessRecord::from(&w)),
        all_witnesses: all.then(|| {
            forbidden_copies(g)
                .into_iter()
                .map(|h| CopyRecord {
                    forbidden_index: h.index,
                    forbidden_name: h.name,
                    vertices: h.embedding.map,
                })
                .collect()
        }),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fmt_vertices(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn analyze(io: &mut Io, input: &InputArgs, format: Format, witness: bool, all: bool) -> Outcome {
    only_text_or_json(format, "analyze")?;
    let (graphs, failed) = read_graphs(io, &input.path, input.kind)?;
    if format == Format::Text && !graphs.is_empty() {
        writeln!(
            io.out,
            "{:>5} {:>3} {:>5} {:>5} {:>3} {:>3} {:>5} {:>7} {:>11} {:>9} {:>5} {:>4}",
            "id", "n", "alpha", "omega", "tau", "nu", "tri", "deficit", "sum-perfect", "forbidden",
            "thr", "split"
        )?;
    }
    for (id, g) in &graphs {
        let r = analysis(*id, g, witness, all);
        if format == Format::Json {
            writeln!(io.out, "{}", serde_json::to_string(&r).expect("serialisable"))?;
            continue;
        }
        let inv = &r.invariants;
        let forbidden = r.forbidden_name.map_or("-".to_string(), |name| {
            format!("H{}:{name}", r.forbidden_index.unwrap_or(0))
        });
        writeln!(
            io.out,
            "{:>5} {:>3} {:>5} {:>5} {:>3} {:>3} {:>5} {:>7} {:>11} {:>9} {:>5} {:>4}",
            r.id,
            inv.n,
            inv.alpha,
            inv.omega,
            inv.tau,
            inv.nu,
            inv.triangles,
            inv.deficit,
            yes_no(r.sum_perfect),
            forbidden,
            yes_no(r.threshold),
            yes_no(r.split)
        )?;
        if let Some(w) = &r.witness {
            match (&w.stable, &w.clique) {
                (Some(s), Some(c)) => writeln!(
                    io.out,
                    "      witness: stable {} clique {}",
                    fmt_vertices(&s.to_vec()),
                    fmt_vertices(&c.to_vec())
                )?,
                _ => writeln!(io.out, "      witness: {} {}", w.kind, fmt_vertices(&w.vertices))?,
            }
        }
        for c in r.all_witnesses.iter().flatten() {
            writeln!(
                io.out,
                "      copy: H{}:{} {}",
                c.forbidden_index,
                c.forbidden_name,
                fmt_vertices(&c.vertices)
            )?;
        }
    }
    Ok(if failed { EXIT_USAGE } else { EXIT_PASS })
}

fn family(io: &mut Io, set: FamilySet, format: Format) -> Outcome {
    let f = forbidden_family();
    let members = match set {
        FamilySet::F => f.members(),
        FamilySet::B => f.conjecture_members(),
    };
    for m in members {
        let g6 = emit_graph6(&m.graph)?;
        match format {
            Format::Text => writeln!(io.out, "H{}\t{}\t{}", m.index, m.name, g6)?,
            Format::Graph6 => writeln!(io.out, "{g6}")?,
            Format::Edges => write!(io.out, "# H{} {}\n{}", m.index, m.name, emit_edge_list(&m.graph))?,
            Format::Json => writeln!(
                io.out,
                "{}",
                json!({
                    "index": m.index,
                    "name": m.name,
                    "n": m.graph.n(),
                    "edges": m.graph.edges(),
                    "graph6": g6,
                    "key": m.key,
                })
            )?,
        }
    }
    Ok(EXIT_PASS)
}

/// Some vertex set whose induced subgraph breaks the subset condition.
fn violating_subset(g: &Graph, ok: impl Fn(usize, usize, usize) -> bool) -> Option<VertexSet> {
    let mut index = 0u64;
    let mut found = None;
    scan_induced_subgraphs(g, |k, a, o| {
        index += 1;
        if ok(k, a, o) {
            true
        } else {
            found = Some(VertexSet::from_bits(index));
            false
        }
    });
    found
}

fn recognize(io: &mut Io, input: &InputArgs, class: ClassPredicate, format: Format, witness: bool) -> Outcome {
    only_text_or_json(format, "recognize")?;
    let (graphs, failed) = read_graphs(io, &input.path, input.kind)?;
    for (id, g) in &graphs {
        let mut record = serde_json::Map::new();
        record.insert("id".into(), json!(id));
        record.insert("class".into(), json!(class.to_string()));
        let (member, detail) = match class {
            ClassPredicate::SumPerfect => {
                let (ok, w) = is_sum_perfect(g);
                (ok, serde_json::to_value(WitnessRecord::from(&w)).expect("serialisable"))
            }
            ClassPredicate::Threshold => match threshold_elimination(g) {
                Some(order) => (true, json!({ "kind": "elimination_order", "vertices": order })),
                None => {
                    let (name, e) = threshold_obstruction(g).expect("non-threshold graphs have one");
                    (false, json!({ "kind": "forbidden_copy", "name": name, "vertices": e.map }))
                }
            },
            ClassPredicate::Perfect | ClassPredicate::Deficiency(_) => {
                if g.n() > class.envelope() {
                    return Err(Error::Envelope {
                        op: "recognize",
                        n: g.n(),
                        max: class.envelope(),
                    }
                    .into());
                }
                let bad = match class {
                    ClassPredicate::Perfect => violating_subset(g, |k, a, o| a * o >= k),
                    ClassPredicate::Deficiency(c) => {
                        violating_subset(g, |k, a, o| a + o + c as usize >= k)
                    }
                    _ => unreachable!(),
                };
                match bad {
                    Some(s) => (false, json!({ "kind": "violating_subgraph", "vertices": s })),
                    None => (true, json!({ "kind": "exhaustive" })),
                }
            }
        };
        record.insert("member".into(), json!(member));
        if witness {
            record.insert("witness".into(), detail.clone());
        }
        match format {
            Format::Json => writeln!(io.out, "{}", serde_json::Value::Object(record))?,
            _ => {
                write!(io.out, "{id}\t{}", yes_no(member))?;
                if witness {
                    write!(io.out, "\t{detail}")?;
                }
                writeln!(io.out)?;
            }
        }
    }
    Ok(if failed { EXIT_USAGE } else { EXIT_PASS })
}

fn source_graphs(io: &mut Io, path: &str) -> Result<Vec<Graph>, Stop> {
    let (graphs, failed) = read_graphs(io, path, InputKind::Auto)?;
    if failed {
        return Err(Stop::Usage(format!("{path}: unreadable graphs in source")));
    }
    Ok(graphs.into_iter().map(|(_, g)| g).collect())
}

fn require_max_n(max_n: Option<usize>) -> Result<usize, Stop> {
    max_n.ok_or_else(|| Stop::Usage("--max-n is required unless --source is given".into()))
}

fn mine(
    io: &mut Io,
    class: ClassPredicate,
    max_n: Option<usize>,
    source: Option<&str>,
    run: &RunArgs,
    format: Format,
) -> Outcome {
    let opts = run.options();
    let result: MineResult = match source {
        Some(path) => {
            let mut graphs = source_graphs(io, path)?;
            if let Some(m) = max_n {
                graphs.retain(|g| g.n() <= m);
            }
            mine_stream(class, graphs, &opts)?
        }
        None => mine_forbidden(class, require_max_n(max_n)?, &opts)?,
    };
    for c in &result.certificates {
        match format {
            Format::Text | Format::Graph6 => writeln!(io.out, "{}", emit_graph6(&c.graph)?)?,
            Format::Edges => write!(io.out, "{}", emit_edge_list(&c.graph))?,
            Format::Json => writeln!(
                io.out,
                "{}",
                json!({
                    "order": c.order,
                    "key": c.key,
                    "graph6": emit_graph6(&c.graph)?,
                    "family_index": forbidden_family().index_of(&c.key),
                })
            )?,
        }
    }
    if matches!(format, Format::Text | Format::Json) {
        writeln!(io.out, "{}", serde_json::to_string(&result.summary()).expect("serialisable"))?;
    }
    writeln!(
        io.err,
        "visited {} graphs in {:.2?}",
        result.visited, result.elapsed
    )?;
    Ok(EXIT_PASS)
}

fn verify(
    io: &mut Io,
    target: Target,
    max_n: Option<usize>,
    source: Option<&str>,
    run: &RunArgs,
    format: Format,
) -> Outcome {
    only_text_or_json(format, "verify")?;
    let opts = run.options();
    let graphs = source.map(|p| source_graphs(io, p)).transpose()?;
    let (name, passed, report, first_bad): (&str, bool, serde_json::Value, Option<Graph>) =
        match target {
            Target::Theorem27 => {
                let r = match graphs {
                    Some(gs) => verify_theorem_27_stream(gs, &opts)?,
                    None => verify_theorem_27(require_max_n(max_n)?, &opts)?,
                };
                let bad = r.unexpected.first().map(|k| k.graph());
                ("theorem27", r.passed(), json!(r), bad)
            }
            Target::Conjecture => {
                let r = match graphs {
                    Some(gs) => verify_conjecture_stream(gs, &opts),
                    None => verify_conjecture(require_max_n(max_n)?, &opts)?,
                };
                let bad = r.counterexamples.first().copied();
                let mut v = json!(r);
                v["counterexamples"] = json!(r.counterexamples.len());
                ("conjecture", r.passed(), v, bad)
            }
            Target::Threshold => {
                let r = match graphs {
                    Some(gs) => verify_threshold_stream(gs, &opts)?,
                    None => verify_threshold(require_max_n(max_n)?, &opts)?,
                };
                let bad = r.disagreements.first().copied();
                let mut v = json!(r);
                v["disagreements"] = json!(r.disagreements.len());
                ("threshold", r.passed(), v, bad)
            }
        };
    let first_bad = first_bad.map(|g| emit_graph6(&g)).transpose()?;
    match format {
        Format::Json => {
            let mut v = report;
            v["target"] = json!(name);
            v["passed"] = json!(passed);
            if let Some(g6) = &first_bad {
                v["first_counterexample"] = json!(g6);
            }
            writeln!(io.out, "{v}")?;
        }
        _ => {
            writeln!(io.out, "{name}: {}", if passed { "PASS" } else { "FAIL" })?;
            if let Some(obj) = report.as_object() {
                for (k, v) in obj {
                    writeln!(io.out, "  {k}: {v}")?;
                }
            }
            if let Some(g6) = &first_bad {
                writeln!(io.out, "  first counterexample: {g6}")?;
            }
        }
    }
    Ok(if passed { EXIT_PASS } else { EXIT_COUNTEREXAMPLE })
}
