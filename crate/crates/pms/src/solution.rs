//! Solution certificates and their verifier.
//!
//! A pair `(A, B)` of disjoint vertex sets is perfectly matched when every
//! vertex of `A` has exactly one neighbor in `B` and vice versa; the cross
//! edges then form an induced perfect matching recorded in `matching`.

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// A (claimed) pair of perfectly matched sets together with its matching.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PmsSolution {
    /// Sorted vertex ids of side A.
    pub a: Vec<u32>,
    /// Sorted vertex ids of side B.
    pub b: Vec<u32>,
    /// Matched pairs `(a, b)`, sorted by the A endpoint.
    pub matching: Vec<(u32, u32)>,
}

impl PmsSolution {
    pub fn empty() -> PmsSolution {
        PmsSolution::default()
    }

    /// Builds the solution for matched pairs, deriving `a`, `b` and sort
    /// order from the pair list.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> PmsSolution {
        let mut matching: Vec<(u32, u32)> = pairs.to_vec();
        matching.sort_unstable();
        let mut a: Vec<u32> = matching.iter().map(|&(x, _)| x).collect();
        let mut b: Vec<u32> = matching.iter().map(|&(_, y)| y).collect();
        a.sort_unstable();
        b.sort_unstable();
        PmsSolution { a, b, matching }
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    pub fn a_set(&self) -> VertexSet {
        self.a.iter().copied().collect()
    }

    pub fn b_set(&self) -> VertexSet {
        self.b.iter().copied().collect()
    }
}

/// First violated condition found by [`verify_solution`], with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A vertex id is not a vertex of the graph (precondition failure).
    InvalidInput { vertex: u32 },
    /// A vertex appears twice within A or within B.
    DuplicateVertex { vertex: u32 },
    /// Sets are not disjoint.
    NotDisjoint { vertex: u32 },
    /// |A|, |B| and |matching| must all agree.
    SizeMismatch { a: usize, b: usize, matching: usize },
    /// A matched pair is not an edge of the graph.
    NotAnEdge { a: u32, b: u32 },
    /// A matched pair does not go from A to B.
    PairOutsideSets { a: u32, b: u32 },
    /// A vertex is matched more than once.
    DoublyMatched { vertex: u32 },
    /// A vertex of A has `count != 1` neighbors in B (or symmetrically).
    WrongCrossDegree { vertex: u32, count: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::InvalidInput { vertex } => {
                write!(f, "invalid input: vertex {vertex} out of range")
            }
            Violation::DuplicateVertex { vertex } => {
                write!(f, "vertex {vertex} listed twice in one set")
            }
            Violation::NotDisjoint { vertex } => {
                write!(f, "sets not disjoint: vertex {vertex} in both A and B")
            }
            Violation::SizeMismatch { a, b, matching } => {
                write!(f, "size mismatch: |A|={a}, |B|={b}, |matching|={matching}")
            }
            Violation::NotAnEdge { a, b } => {
                write!(f, "matched pair ({a}, {b}) is not an edge of the graph")
            }
            Violation::PairOutsideSets { a, b } => {
                write!(f, "matched pair ({a}, {b}) does not go from A to B")
            }
            Violation::DoublyMatched { vertex } => {
                write!(f, "vertex {vertex} appears in more than one matched pair")
            }
            Violation::WrongCrossDegree { vertex, count } => {
                write!(
                    f,
                    "vertex {vertex} has {count} neighbors in the opposite set (want exactly 1)"
                )
            }
        }
    }
}

/// Checks a claimed solution against the definition, reporting the first
/// violated condition.
pub fn verify_solution(g: &Graph, sol: &PmsSolution) -> Result<(), Violation> {
    let n = g.vertex_count() as u32;
    for &v in sol.a.iter().chain(sol.b.iter()) {
        if v >= n {
            return Err(Violation::InvalidInput { vertex: v });
        }
    }
    for &(x, y) in &sol.matching {
        if x >= n || y >= n {
            return Err(Violation::InvalidInput {
                vertex: x.max(y),
            });
        }
    }

    let a_set = sol.a_set();
    let b_set = sol.b_set();
    if a_set.len() != sol.a.len() {
        let v = first_duplicate(&sol.a).unwrap();
        return Err(Violation::DuplicateVertex { vertex: v });
    }
    if b_set.len() != sol.b.len() {
        let v = first_duplicate(&sol.b).unwrap();
        return Err(Violation::DuplicateVertex { vertex: v });
    }
    if let Some(v) = a_set.intersection(&b_set).first() {
        return Err(Violation::NotDisjoint { vertex: v });
    }
    if sol.a.len() != sol.b.len() || sol.a.len() != sol.matching.len() {
        return Err(Violation::SizeMismatch {
            a: sol.a.len(),
            b: sol.b.len(),
            matching: sol.matching.len(),
        });
    }

    let mut matched = VertexSet::new();
    for &(x, y) in &sol.matching {
        if !a_set.contains(x) || !b_set.contains(y) {
            return Err(Violation::PairOutsideSets { a: x, b: y });
        }
        if !g.has_edge(x, y) {
            return Err(Violation::NotAnEdge { a: x, b: y });
        }
        if matched.contains(x) {
            return Err(Violation::DoublyMatched { vertex: x });
        }
        if matched.contains(y) {
            return Err(Violation::DoublyMatched { vertex: y });
        }
        matched.insert(x);
        matched.insert(y);
    }

    for &v in &sol.a {
        let count = g.degree_in(v, &b_set);
        if count != 1 {
            return Err(Violation::WrongCrossDegree { vertex: v, count });
        }
    }
    for &v in &sol.b {
        let count = g.degree_in(v, &a_set);
        if count != 1 {
            return Err(Violation::WrongCrossDegree { vertex: v, count });
        }
    }
    Ok(())
}

fn first_duplicate(sorted_or_not: &[u32]) -> Option<u32> {
    let mut seen = VertexSet::new();
    for &v in sorted_or_not {
        if seen.contains(v) {
            return Some(v);
        }
        seen.insert(v);
    }
    None
}
