//! Text formats: the DIMACS-like graph format and the JSON solution file.
//!
//! Graph files are UTF-8 text with optional `c` comment lines, one
//! `p edge <n> <m>` header, and exactly `m` lines `e <u> <v>` with 1-based
//! endpoints. Vertices are 1-based on disk and 0-based in memory; the
//! translation happens only here.

use crate::graph::{Graph, GraphError};
use crate::solution::PmsSolution;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing 'p edge <n> <m>' header")]
    MissingHeader,
    #[error("malformed header")]
    BadHeader,
    #[error("second header line")]
    DuplicateHeader,
    #[error("malformed edge line")]
    BadEdgeLine,
    #[error("vertex index out of range")]
    VertexOutOfRange,
    #[error("self-loop")]
    SelfLoop,
    #[error("duplicate edge")]
    DuplicateEdge,
    #[error("more edge lines than declared")]
    TooManyEdges,
    #[error("expected {expected} edges, found {found}")]
    MissingEdges { expected: usize, found: usize },
    #[error("unknown line type")]
    UnknownLineType,
    #[error("graph too large: {0}")]
    Capacity(String),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parses the DIMACS-like graph format. Line numbers in errors are 1-based.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(err(line_no, ParseErrorKind::DuplicateHeader));
                }
                let kind = tok.next();
                let n = tok.next().and_then(|s| s.parse::<usize>().ok());
                let m = tok.next().and_then(|s| s.parse::<usize>().ok());
                match (kind, n, m, tok.next()) {
                    (Some("edge"), Some(n), Some(m), None) => header = Some((n, m)),
                    _ => return Err(err(line_no, ParseErrorKind::BadHeader)),
                }
            }
            Some("e") => {
                let (n, m) = header.ok_or(err(line_no, ParseErrorKind::MissingHeader))?;
                if edges.len() == m {
                    return Err(err(line_no, ParseErrorKind::TooManyEdges));
                }
                let u = tok.next().and_then(|s| s.parse::<u64>().ok());
                let v = tok.next().and_then(|s| s.parse::<u64>().ok());
                let (u, v) = match (u, v, tok.next()) {
                    (Some(u), Some(v), None) => (u, v),
                    _ => return Err(err(line_no, ParseErrorKind::BadEdgeLine)),
                };
                if u < 1 || v < 1 || u > n as u64 || v > n as u64 {
                    return Err(err(line_no, ParseErrorKind::VertexOutOfRange));
                }
                let (u, v) = (u as u32 - 1, v as u32 - 1);
                if u == v {
                    return Err(err(line_no, ParseErrorKind::SelfLoop));
                }
                if edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)) {
                    return Err(err(line_no, ParseErrorKind::DuplicateEdge));
                }
                edges.push((u, v));
            }
            _ => return Err(err(line_no, ParseErrorKind::UnknownLineType)),
        }
    }

    let (n, m) = header.ok_or(err(last_line.max(1), ParseErrorKind::MissingHeader))?;
    if edges.len() != m {
        return Err(err(
            last_line.max(1),
            ParseErrorKind::MissingEdges {
                expected: m,
                found: edges.len(),
            },
        ));
    }
    Graph::from_edges(n, &edges).map_err(|e| match e {
        GraphError::TooManyVertices { .. } => {
            err(1, ParseErrorKind::Capacity(e.to_string()))
        }
        // out-of-range / loops / duplicates were rejected per line above
        other => err(last_line.max(1), ParseErrorKind::Capacity(other.to_string())),
    })
}

/// Serializes a graph; edges come out with `u < v`, sorted lexicographically,
/// so `parse_graph(serialize_graph(g)) == g` and the bytes are canonical.
pub fn serialize_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("p edge {} {}\n", g.vertex_count(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// On-disk JSON shape of a solution (1-based vertex ids).
#[derive(Debug, Serialize, Deserialize)]
pub struct SolutionFile {
    pub k: usize,
    #[serde(rename = "A")]
    pub a: Vec<u32>,
    #[serde(rename = "B")]
    pub b: Vec<u32>,
    pub matching: Vec<[u32; 2]>,
}

#[derive(Debug, Error)]
pub enum SolutionJsonError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("vertex id {0} must be 1-based (>= 1)")]
    ZeroId(u32),
}

/// Canonical JSON bytes for a solution (sorted sets, matching sorted by the
/// A endpoint, 1-based ids).
pub fn solution_to_json(sol: &PmsSolution) -> String {
    let file = SolutionFile {
        k: sol.size(),
        a: sol.a.iter().map(|v| v + 1).collect(),
        b: sol.b.iter().map(|v| v + 1).collect(),
        matching: sol.matching.iter().map(|&(x, y)| [x + 1, y + 1]).collect(),
    };
    serde_json::to_string(&file).expect("solution serializes")
}

pub fn parse_solution_json(text: &str) -> Result<PmsSolution, SolutionJsonError> {
    let file: SolutionFile = serde_json::from_str(text)?;
    let conv = |v: u32| -> Result<u32, SolutionJsonError> {
        if v == 0 {
            Err(SolutionJsonError::ZeroId(v))
        } else {
            Ok(v - 1)
        }
    };
    let mut a = Vec::with_capacity(file.a.len());
    for v in file.a {
        a.push(conv(v)?);
    }
    let mut b = Vec::with_capacity(file.b.len());
    for v in file.b {
        b.push(conv(v)?);
    }
    let mut matching = Vec::with_capacity(file.matching.len());
    for [x, y] in file.matching {
        matching.push((conv(x)?, conv(y)?));
    }
    Ok(PmsSolution { a, b, matching })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_graph() {
        let g = parse_graph("p edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn parses_edgeless() {
        let g = parse_graph("p edge 3 0").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn comments_and_blank_lines_ok() {
        let g = parse_graph("c hello\n\np edge 2 1\nc mid\ne 1 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_out_of_range() {
        let e = parse_graph("p edge 2 1\ne 1 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, ParseErrorKind::VertexOutOfRange);
        assert!(e.to_string().contains("vertex index out of range"));
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(
            parse_graph("p edge x 1\n").unwrap_err().kind,
            ParseErrorKind::BadHeader
        );
        assert_eq!(
            parse_graph("e 1 2\n").unwrap_err().kind,
            ParseErrorKind::MissingHeader
        );
        assert_eq!(
            parse_graph("p edge 2 1\ne 1 1\n").unwrap_err().kind,
            ParseErrorKind::SelfLoop
        );
        assert_eq!(
            parse_graph("p edge 2 2\ne 1 2\ne 2 1\n").unwrap_err().kind,
            ParseErrorKind::DuplicateEdge
        );
        assert_eq!(
            parse_graph("p edge 2 2\ne 1 2\n").unwrap_err().kind,
            ParseErrorKind::MissingEdges { expected: 2, found: 1 }
        );
        assert_eq!(
            parse_graph("p edge 2 0\ne 1 2\n").unwrap_err().kind,
            ParseErrorKind::TooManyEdges
        );
        assert_eq!(
            parse_graph("q 1 2\n").unwrap_err().kind,
            ParseErrorKind::UnknownLineType
        );
    }

    #[test]
    fn roundtrip() {
        let g = Graph::cycle(5);
        let text = serialize_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn solution_json_roundtrip() {
        let sol = PmsSolution {
            a: vec![0, 3],
            b: vec![1, 2],
            matching: vec![(0, 1), (3, 2)],
        };
        let text = solution_to_json(&sol);
        assert_eq!(
            text,
            r#"{"k":2,"A":[1,4],"B":[2,3],"matching":[[1,2],[4,3]]}"#
        );
        assert_eq!(parse_solution_json(&text).unwrap(), sol);
    }

    #[test]
    fn solution_json_rejects_zero_id() {
        let text = r#"{"k":1,"A":[0],"B":[2],"matching":[[0,2]]}"#;
        assert!(matches!(
            parse_solution_json(text),
            Err(SolutionJsonError::ZeroId(0))
        ));
    }
}
