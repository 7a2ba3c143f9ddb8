//! PACE 2017 tree decomposition format.
//!
//! `c` comment lines, one header `s td <#bags> <width+1> <n>`, bag lines
//! `b <id> <v...>`, then tree edges `<id> <id>`; ids and vertices 1-based.

use super::TreeDecomposition;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct TdParseError {
    pub line: usize,
    pub kind: TdParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TdParseErrorKind {
    #[error("missing 's td <bags> <width+1> <n>' header")]
    MissingHeader,
    #[error("malformed header")]
    BadHeader,
    #[error("second header line")]
    DuplicateHeader,
    #[error("malformed bag line")]
    BadBagLine,
    #[error("bag id out of range")]
    BagIdOutOfRange,
    #[error("bag {0} declared twice")]
    DuplicateBag(usize),
    #[error("vertex id out of range")]
    VertexOutOfRange,
    #[error("malformed tree edge line")]
    BadEdgeLine,
    #[error("expected {expected} tree edges, found {found}")]
    WrongEdgeCount { expected: usize, found: usize },
    #[error("bag {0} never declared")]
    MissingBag(usize),
}

/// A parsed decomposition plus the vertex count it declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaceTd {
    pub td: TreeDecomposition,
    pub n: usize,
}

pub fn parse_td(text: &str) -> Result<PaceTd, TdParseError> {
    let err = |line: usize, kind: TdParseErrorKind| TdParseError { line, kind };
    let mut header: Option<(usize, usize)> = None; // (#bags, n)
    let mut bags: Vec<Option<Vec<u32>>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_whitespace();
        let first = tok.next().unwrap();
        match first {
            "s" => {
                if header.is_some() {
                    return Err(err(line_no, TdParseErrorKind::DuplicateHeader));
                }
                let kind = tok.next();
                let nums: Vec<Option<usize>> =
                    (0..3).map(|_| tok.next().and_then(|s| s.parse().ok())).collect();
                match (kind, &nums[..], tok.next()) {
                    (Some("td"), [Some(bag_count), Some(_width1), Some(n)], None) => {
                        header = Some((*bag_count, *n));
                        bags = vec![None; *bag_count];
                    }
                    _ => return Err(err(line_no, TdParseErrorKind::BadHeader)),
                }
            }
            "b" => {
                let (bag_count, n) = header.ok_or(err(line_no, TdParseErrorKind::MissingHeader))?;
                let id: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or(err(line_no, TdParseErrorKind::BadBagLine))?;
                if id < 1 || id > bag_count {
                    return Err(err(line_no, TdParseErrorKind::BagIdOutOfRange));
                }
                if bags[id - 1].is_some() {
                    return Err(err(line_no, TdParseErrorKind::DuplicateBag(id)));
                }
                let mut content = Vec::new();
                for t in tok {
                    let v: u64 = t
                        .parse()
                        .map_err(|_| err(line_no, TdParseErrorKind::BadBagLine))?;
                    if v < 1 || v > n as u64 {
                        return Err(err(line_no, TdParseErrorKind::VertexOutOfRange));
                    }
                    content.push(v as u32 - 1);
                }
                content.sort_unstable();
                content.dedup();
                bags[id - 1] = Some(content);
            }
            _ => {
                let (bag_count, _) = header.ok_or(err(line_no, TdParseErrorKind::MissingHeader))?;
                let x: usize = first
                    .parse()
                    .map_err(|_| err(line_no, TdParseErrorKind::BadEdgeLine))?;
                let y: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or(err(line_no, TdParseErrorKind::BadEdgeLine))?;
                if tok.next().is_some() {
                    return Err(err(line_no, TdParseErrorKind::BadEdgeLine));
                }
                if x < 1 || x > bag_count || y < 1 || y > bag_count {
                    return Err(err(line_no, TdParseErrorKind::BagIdOutOfRange));
                }
                edges.push((x - 1, y - 1));
            }
        }
    }

    let (bag_count, n) = header.ok_or(err(last_line.max(1), TdParseErrorKind::MissingHeader))?;
    if bag_count > 0 && edges.len() != bag_count - 1 {
        return Err(err(
            last_line.max(1),
            TdParseErrorKind::WrongEdgeCount {
                expected: bag_count.saturating_sub(1),
                found: edges.len(),
            },
        ));
    }
    let mut resolved = Vec::with_capacity(bag_count);
    for (i, bag) in bags.into_iter().enumerate() {
        match bag {
            Some(b) => resolved.push(b),
            None => {
                return Err(err(
                    last_line.max(1),
                    TdParseErrorKind::MissingBag(i + 1),
                ))
            }
        }
    }
    Ok(PaceTd {
        td: TreeDecomposition {
            bags: resolved,
            edges,
        },
        n,
    })
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let width1 = td.bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.bags.len(), width1, n);
    for (i, bag) in td.bags.iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for &v in bag {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for &(x, y) in &td.edges {
        out.push_str(&format!("{} {}\n", x + 1, y + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn single_bag_covering_triangle() {
        let pace = parse_td("s td 1 3 3\nb 1 1 2 3\n").unwrap();
        assert_eq!(pace.n, 3);
        assert_eq!(pace.td.width(), 2);
        pace.td.validate(&Graph::complete(3)).unwrap();
    }

    #[test]
    fn uncovered_edge_is_a_validity_error() {
        let pace = parse_td("s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n").unwrap();
        let err = pace.td.validate(&Graph::complete(3)).unwrap_err();
        assert_eq!(err, super::super::TwError::EdgeUncovered(0, 2));
    }

    #[test]
    fn format_errors() {
        assert_eq!(
            parse_td("b 1 1\n").unwrap_err().kind,
            TdParseErrorKind::MissingHeader
        );
        assert_eq!(
            parse_td("s td 1 1 2\nb 5 1\n").unwrap_err().kind,
            TdParseErrorKind::BagIdOutOfRange
        );
        assert_eq!(
            parse_td("s td 1 1 2\nb 1 7\n").unwrap_err().kind,
            TdParseErrorKind::VertexOutOfRange
        );
        assert_eq!(
            parse_td("s td 2 1 2\nb 1 1\nb 2 2\n").unwrap_err().kind,
            TdParseErrorKind::WrongEdgeCount {
                expected: 1,
                found: 0
            }
        );
        assert_eq!(
            parse_td("s td 1 1 2\n").unwrap_err().kind,
            TdParseErrorKind::MissingBag(1)
        );
        assert_eq!(
            parse_td("s td 1 1 2\nb 1 1\nb 1 1\n").unwrap_err().kind,
            TdParseErrorKind::DuplicateBag(1)
        );
    }

    #[test]
    fn roundtrip_through_writer() {
        let g = crate::generate::gnp(9, 0.4, 2);
        let td = crate::treewidth::build_tree_decomposition(&g);
        let text = write_td(&td, 9);
        let back = parse_td(&text).unwrap();
        assert_eq!(back.n, 9);
        assert_eq!(back.td, td);
    }
}
