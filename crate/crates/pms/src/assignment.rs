//! Partial vertex labelings used by the modulator-parameterized solvers.
//!
//! An assignment maps part of the vertex set to `a` (side A), `b` (side B)
//! or `d` (discarded). It is *valid* when every a-vertex has at most one
//! b-neighbor inside the labeled domain and vice versa, and a *feasible
//! solution* when it is total and `(a-set, b-set)` is a pair of perfectly
//! matched sets.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::solution::{verify_solution, PmsSolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    A,
    B,
    D,
}

/// A partial labeling of the vertices of one fixed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    labels: Vec<Option<Label>>,
}

impl Assignment {
    pub fn unassigned(n: usize) -> Assignment {
        Assignment {
            labels: vec![None; n],
        }
    }

    #[inline]
    pub fn get(&self, v: u32) -> Option<Label> {
        self.labels[v as usize]
    }

    #[inline]
    pub fn set(&mut self, v: u32, l: Label) {
        self.labels[v as usize] = Some(l);
    }

    pub fn domain(&self) -> VertexSet {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.is_some())
            .map(|(v, _)| v as u32)
            .collect()
    }

    pub fn is_total(&self) -> bool {
        self.labels.iter().all(|l| l.is_some())
    }

    pub fn a_set(&self) -> VertexSet {
        self.side_set(Label::A)
    }

    pub fn b_set(&self) -> VertexSet {
        self.side_set(Label::B)
    }

    fn side_set(&self, side: Label) -> VertexSet {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == Some(side))
            .map(|(v, _)| v as u32)
            .collect()
    }

    /// Every a-vertex has at most one b-neighbor (within the labeled
    /// domain), and symmetrically.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let a = self.a_set();
        let b = self.b_set();
        a.iter().all(|v| g.degree_in(v, &b) <= 1) && b.iter().all(|v| g.degree_in(v, &a) <= 1)
    }

    /// A labeled side vertex is matched when it has a cross neighbor within
    /// the domain.
    pub fn is_matched(&self, g: &Graph, v: u32) -> bool {
        let opposite = match self.get(v) {
            Some(Label::A) => self.b_set(),
            Some(Label::B) => self.a_set(),
            _ => return false,
        };
        g.degree_in(v, &opposite) >= 1
    }

    /// Total, valid, and every side vertex matched exactly once.
    pub fn is_feasible_solution(&self, g: &Graph) -> bool {
        self.is_total() && verify_solution(g, &self.to_solution(g)).is_ok()
    }

    /// `|a-set|` when feasible, 0 otherwise.
    pub fn size(&self, g: &Graph) -> usize {
        if self.is_feasible_solution(g) {
            self.a_set().len()
        } else {
            0
        }
    }

    /// Reads the solution off the labels; each side vertex's matched partner
    /// is its unique cross neighbor (callers check feasibility separately).
    pub fn to_solution(&self, g: &Graph) -> PmsSolution {
        let a = self.a_set();
        let b = self.b_set();
        let mut pairs = Vec::with_capacity(a.len());
        for v in a.iter() {
            match g.neighbor_set(v).intersection(&b).first() {
                Some(w) => pairs.push((v, w)),
                // unmatched a-vertex: surface it so verification fails loudly
                None => {
                    return PmsSolution {
                        a: a.to_vec(),
                        b: b.to_vec(),
                        matching: Vec::new(),
                    }
                }
            }
        }
        PmsSolution {
            a: a.to_vec(),
            b: b.to_vec(),
            matching: pairs,
        }
    }
}
