//! graph6 and plain edge-list encodings.
//!
//! graph6 follows the standard short form: a size header (one byte for
//! `n <= 62`, `~` plus three bytes above that) followed by the upper
//! triangle of the adjacency matrix in column-major order, packed six bits
//! per byte and offset by 63.
//!
//! The edge-list format is a line holding `n` followed by one `u v` line per
//! edge. Several graphs may follow each other in one stream; a line with a
//! single integer starts a new graph. Blank lines and `#` comments are
//! ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Largest order [`emit_graph6`] encodes (single-byte size header).
pub const GRAPH6_SHORT_MAX: usize = 62;

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b:#04x} outside the printable range")));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated 8-byte size header".into()));
            }
            (sextets(&rest[..6]), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated 4-byte size header".into()));
            }
            (sextets(&rest[..3]), &rest[3..])
        }
        [b, rest @ ..] => (u64::from(b - 63), rest),
    };
    if n > MAX_VERTICES as u64 {
        return Err(Error::TooManyVertices(n as usize));
    }
    let n = n as usize;
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    if body.len() < expected {
        return Err(Error::Graph6(format!(
            "truncated payload: expected {expected} bytes for n={n}, found {}",
            body.len()
        )));
    }
    if body.len() > expected {
        return Err(Error::Graph6(format!(
            "trailing data: expected {expected} bytes for n={n}, found {}",
            body.len()
        )));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edge_list(n, &edges)
}

fn sextets(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0, |acc, &b| acc << 6 | u64::from(b - 63))
}

/// Encodes `g` in graph6 short form (no header, no newline).
pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_SHORT_MAX {
        return Err(Error::Envelope {
            op: "emit_graph6",
            n,
            max: GRAPH6_SHORT_MAX,
        });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(1 + pairs.div_ceil(6));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{}", g.n()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses text holding exactly one edge-list graph.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut graphs = parse_edge_list_stream(text).into_iter();
    match (graphs.next(), graphs.next()) {
        (Some((_, g)), None) => g,
        (None, _) => Err(Error::EdgeList("no graph found".into())),
        (Some(_), Some((line, _))) => Err(Error::EdgeList(format!(
            "expected a single graph, second one starts on line {line}"
        ))),
    }
}

/// Input encodings accepted by [`parse_stream`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Graph6,
    EdgeList,
    /// Edge list when the first meaningful line is a single integer,
    /// graph6 otherwise.
    Auto,
}

/// One parsed graph (or its error) tagged with its 1-based starting line.
pub type Parsed = (usize, Result<Graph>);

pub fn parse_stream(text: &str, format: InputFormat) -> Vec<Parsed> {
    let format = match format {
        InputFormat::Auto => detect_format(text),
        f => f,
    };
    match format {
        InputFormat::EdgeList => parse_edge_list_stream(text),
        _ => text
            .lines()
            .enumerate()
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            })
            .map(|(i, l)| (i + 1, parse_graph6(l.trim())))
            .collect(),
    }
}

fn detect_format(text: &str) -> InputFormat {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.split_whitespace().count() == 1 && l.parse::<usize>().is_ok() => {
            InputFormat::EdgeList
        }
        _ => InputFormat::Graph6,
    }
}

pub fn parse_edge_list_stream(text: &str) -> Vec<Parsed> {
    struct Block {
        line: usize,
        n: usize,
        edges: Vec<(usize, usize)>,
        error: Option<Error>,
    }
    fn finish(b: Block) -> Parsed {
        let g = match b.error {
            Some(e) => Err(e),
            None => Graph::from_edge_list(b.n, &b.edges),
        };
        (b.line, g)
    }

    let mut out = Vec::new();
    let mut current: Option<Block> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [n] => {
                if let Some(b) = current.take() {
                    out.push(finish(b));
                }
                let (n, error) = match n.parse::<usize>() {
                    Ok(n) => (n, None),
                    Err(_) => (0, Some(Error::EdgeList(format!("line {lineno}: bad vertex count `{n}`")))),
                };
                current = Some(Block {
                    line: lineno,
                    n,
                    edges: Vec::new(),
                    error,
                });
            }
            [u, v] => {
                let Some(block) = current.as_mut() else {
                    out.push((
                        lineno,
                        Err(Error::EdgeList(format!("line {lineno}: edge before vertex count"))),
                    ));
                    continue;
                };
                match (u.parse::<usize>(), v.parse::<usize>()) {
                    (Ok(u), Ok(v)) => block.edges.push((u, v)),
                    _ => {
                        block.error.get_or_insert(Error::EdgeList(format!(
                            "line {lineno}: bad edge `{line}`"
                        )));
                    }
                }
            }
            _ => {
                let err = Error::EdgeList(format!("line {lineno}: expected `n` or `u v`, got `{line}`"));
                match current.as_mut() {
                    Some(block) => {
                        block.error.get_or_insert(err);
                    }
                    None => out.push((lineno, Err(err))),
                }
            }
        }
    }
    if let Some(b) = current {
        out.push(finish(b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_encodings() {
        // Reference strings from the graph6 format description.
        assert_eq!(emit_graph6(&Graph::empty(0).unwrap()).unwrap(), "?");
        assert_eq!(emit_graph6(&Graph::empty(1).unwrap()).unwrap(), "@");
        assert_eq!(emit_graph6(&Graph::cycle(5).unwrap()).unwrap(), "Dhc");
        assert_eq!(emit_graph6(&Graph::complete(4).unwrap()).unwrap(), "C~");
        let g = Graph::from_edge_list(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g).unwrap(), "DQc");
    }

    #[test]
    fn parse_small_graphs() {
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1).unwrap());
        assert_eq!(parse_graph6("?").unwrap(), Graph::empty(0).unwrap());
        assert_eq!(parse_graph6(">>graph6<<Dhc\n").unwrap(), Graph::cycle(5).unwrap());
    }

    #[test]
    fn round_trip_c5() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(parse_graph6(&emit_graph6(&c5).unwrap()).unwrap(), c5);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_graph6(""), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("Dh"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("Dhcc"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("D h"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("~"), Err(Error::Graph6(_))));
        // n = 65 in the four-byte header form.
        assert_eq!(parse_graph6("~?@@"), Err(Error::TooManyVertices(65)));
    }

    #[test]
    fn long_header_up_to_capacity() {
        let mut g = Graph::empty(64).unwrap();
        g = g.complement();
        // Header `~` plus the sextets 0, 1, 0 (= 64), then all ones.
        let pairs = 64 * 63 / 2;
        let mut s = String::from("~?@?");
        s.push_str(&"~".repeat(pairs / 6));
        assert_eq!(pairs % 6, 0);
        assert_eq!(parse_graph6(&s).unwrap(), g);
        assert!(emit_graph6(&g).is_err());
    }

    #[test]
    fn edge_list_single_and_stream() {
        let g = parse_edge_list("5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
        assert_eq!(g, Graph::cycle(5).unwrap());
        assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);

        let stream = "# two graphs\n3\n0 1\n\n2\n0 1\n";
        let parsed = parse_stream(stream, InputFormat::Auto);
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0].0, 2);
        assert_eq!(parsed[1].0, 5);
        assert_eq!(parsed[1].1.as_ref().unwrap().edge_count(), 1);
    }

    #[test]
    fn edge_list_errors_keep_line_numbers() {
        let parsed = parse_edge_list_stream("3\n0 5\n2\n0 x\n2\n0 1\n");
        assert_eq!(parsed.len(), 3);
        assert!(matches!(parsed[0].1, Err(Error::VertexOutOfRange { vertex: 5, n: 3 })));
        assert!(matches!(&parsed[1].1, Err(Error::EdgeList(m)) if m.contains("line 4")));
        assert!(parsed[2].1.is_ok());
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("1\n2\n").is_err());
    }

    #[test]
    fn auto_detects_graph6() {
        let parsed = parse_stream("Dhc\nC~\n\n", InputFormat::Auto);
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[1].0, 2);
        assert_eq!(parsed[1].1.as_ref().unwrap().n(), 4);
    }
}
