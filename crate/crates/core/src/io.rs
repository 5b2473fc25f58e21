//! DIMACS and plain edge-list readers and writers.
//!
//! DIMACS files use 1-based ids (`p edge N M`, then `e U V` lines); the plain
//! edge list uses 0-based `U V` pairs, `#` comments, and an optional
//! `# nodes N` directive fixing the vertex count. Writers emit edges in
//! lexicographic order so output is byte-stable.

use std::fmt::Write as _;
use std::io::{self, BufRead};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Dimacs,
    EdgeList,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dimacs" | "col" | "clq" => Ok(Format::Dimacs),
            "edge-list" | "edge_list" | "edgelist" => Ok(Format::EdgeList),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: edge before `p edge` header")]
    MissingHeader { line: usize },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { line: usize, vertex: i64, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: i64 },
    #[error("line {line}: cannot parse `{content}`")]
    MalformedLine { line: usize, content: String },
    #[error("input declares no vertices")]
    NoHeader,
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl ParseError {
    /// 1-based line number the error refers to, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::MalformedHeader { line, .. }
            | ParseError::MissingHeader { line }
            | ParseError::VertexOutOfRange { line, .. }
            | ParseError::SelfLoop { line, .. }
            | ParseError::MalformedLine { line, .. } => Some(*line),
            ParseError::NoHeader | ParseError::Io(_) => None,
        }
    }
}

pub fn parse_graph<R: BufRead>(reader: R, format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::Dimacs => parse_dimacs(reader),
        Format::EdgeList => parse_edge_list(reader),
    }
}

pub fn parse_str(input: &str, format: Format) -> Result<Graph, ParseError> {
    parse_graph(input.as_bytes(), format)
}

fn parse_ids(line: usize, content: &str, fields: &[&str]) -> Result<(i64, i64), ParseError> {
    let bad = || ParseError::MalformedLine {
        line,
        content: content.to_string(),
    };
    match fields {
        [a, b] => Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

fn parse_dimacs<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in reader.lines().enumerate() {
        let line = idx + 1;
        let raw = raw?;
        let content = raw.trim();
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if graph.is_some() {
                    return Err(ParseError::MalformedHeader {
                        line,
                        reason: "duplicate header".into(),
                    });
                }
                let header = |reason: &str| ParseError::MalformedHeader {
                    line,
                    reason: reason.into(),
                };
                if fields.len() != 4 {
                    return Err(header("expected `p edge <n> <m>`"));
                }
                if !matches!(fields[1], "edge" | "col" | "clq") {
                    return Err(header("unsupported problem type"));
                }
                let n: usize = fields[2].parse().map_err(|_| header("bad vertex count"))?;
                let _m: u64 = fields[3].parse().map_err(|_| header("bad edge count"))?;
                if n > MAX_VERTICES {
                    return Err(header("vertex count exceeds 2^31 - 1"));
                }
                graph = Some(Graph::new(n));
            }
            Some("e") => {
                let g = graph.as_mut().ok_or(ParseError::MissingHeader { line })?;
                let (u, v) = parse_ids(line, content, &fields[1..])?;
                let n = g.n();
                for x in [u, v] {
                    if x < 1 || x as u64 > n as u64 {
                        return Err(ParseError::VertexOutOfRange { line, vertex: x, n });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop { line, vertex: u });
                }
                g.add_edge(u as usize - 1, v as usize - 1)
                    .expect("ids validated above");
            }
            Some(_) => {
                return Err(ParseError::MalformedLine {
                    line,
                    content: content.to_string(),
                })
            }
        }
    }
    graph.ok_or(ParseError::NoHeader)
}

fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut max_id: Option<usize> = None;
    for (idx, raw) in reader.lines().enumerate() {
        let line = idx + 1;
        let raw = raw?;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some("nodes") {
                let header = |reason: &str| ParseError::MalformedHeader {
                    line,
                    reason: reason.into(),
                };
                if declared.is_some() || !edges.is_empty() {
                    return Err(header("`# nodes` must precede all edges and appear once"));
                }
                let n: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| header("bad vertex count"))?;
                if n > MAX_VERTICES {
                    return Err(header("vertex count exceeds 2^31 - 1"));
                }
                declared = Some(n);
            }
            continue;
        }
        let content = trimmed.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let (u, v) = parse_ids(line, content, &fields)?;
        let bound = declared.unwrap_or(MAX_VERTICES);
        for x in [u, v] {
            if x < 0 || x as u64 >= bound as u64 {
                return Err(ParseError::VertexOutOfRange {
                    line,
                    vertex: x,
                    n: bound,
                });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        let (u, v) = (u as usize, v as usize);
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    Graph::from_edges(n, edges).map_err(|e| match e {
        GraphError::TooManyVertices(_) => ParseError::MalformedHeader {
            line: 0,
            reason: e.to_string(),
        },
        other => unreachable!("ids validated while parsing: {other}"),
    })
}

/// DIMACS text with 1-based ids and edges in lexicographic order.
pub fn to_dimacs(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 16 * g.edge_count() as usize);
    writeln!(out, "p edge {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Plain 0-based edge list preceded by a `# nodes N` directive.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 14 * g.edge_count() as usize);
    writeln!(out, "# nodes {}", g.n()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn serialize(g: &Graph, format: Format) -> String {
    match format {
        Format::Dimacs => to_dimacs(g),
        Format::EdgeList => to_edge_list(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_basic() {
        let g = parse_str("c comment\np edge 3 2\ne 1 2\ne 2 3\n", Format::Dimacs).unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 2));
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2));
    }

    #[test]
    fn edge_list_collapses_duplicates() {
        let g = parse_str("0 1\n1 2\n1 2", Format::EdgeList).unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 2));
    }

    #[test]
    fn dimacs_self_loop_names_line() {
        let err = parse_str("p edge 3 1\ne 1 1\n", Format::Dimacs).unwrap_err();
        assert!(matches!(err, ParseError::SelfLoop { line: 2, vertex: 1 }));
    }

    #[test]
    fn distinct_errors() {
        let e = parse_str("p edge x 1\n", Format::Dimacs).unwrap_err();
        assert!(matches!(e, ParseError::MalformedHeader { line: 1, .. }));
        let e = parse_str("p edge 3 1\ne 1 4\n", Format::Dimacs).unwrap_err();
        assert!(matches!(
            e,
            ParseError::VertexOutOfRange {
                line: 2,
                vertex: 4,
                n: 3
            }
        ));
        let e = parse_str("p edge 3 1\ne 0 2\n", Format::Dimacs).unwrap_err();
        assert!(matches!(
            e,
            ParseError::VertexOutOfRange {
                line: 2,
                vertex: 0,
                ..
            }
        ));
        let e = parse_str("e 1 2\n", Format::Dimacs).unwrap_err();
        assert!(matches!(e, ParseError::MissingHeader { line: 1 }));
        let e = parse_str("p edge 3 1\ne 1\n", Format::Dimacs).unwrap_err();
        assert!(matches!(e, ParseError::MalformedLine { line: 2, .. }));
        let e = parse_str("# nodes 2\n0 2\n", Format::EdgeList).unwrap_err();
        assert!(matches!(
            e,
            ParseError::VertexOutOfRange {
                line: 2,
                vertex: 2,
                n: 2
            }
        ));
        let e = parse_str("0 1\n3 3\n", Format::EdgeList).unwrap_err();
        assert!(matches!(e, ParseError::SelfLoop { line: 2, vertex: 3 }));
        assert_eq!(e.line(), Some(2));
    }

    #[test]
    fn edge_list_comments_and_isolated_vertices() {
        let g = parse_str(
            "# nodes 6\n# a comment\n0 1 # trailing\n\n4 2\n",
            Format::EdgeList,
        )
        .unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 2));
        assert_eq!(parse_str("", Format::EdgeList).unwrap().n(), 0);
    }

    #[test]
    fn writers_are_sorted() {
        let g = Graph::from_edges(4, [(3, 2), (0, 3), (1, 0)]).unwrap();
        assert_eq!(to_dimacs(&g), "p edge 4 3\ne 1 2\ne 1 4\ne 3 4\n");
        assert_eq!(to_edge_list(&g), "# nodes 4\n0 1\n0 3\n2 3\n");
    }
}
