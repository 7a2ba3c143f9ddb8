//! Immutable simple undirected graphs with a dual adjacency representation.
//!
//! Every graph keeps both sorted neighbor lists (for `O(deg)` iteration) and
//! per-vertex neighbor bitsets (for `O(n/64)` "neighbors inside this set"
//! counts, which dominate the exponential solvers). The two representations
//! are constructed together and never diverge.

use crate::bitset::{VertexSet, MAX_VERTICES};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {n} vertices, exceeding the supported maximum of {max}", max = MAX_VERTICES)]
    TooManyVertices { n: usize },
    #[error("vertex {v} out of range for graph with {n} vertices")]
    VertexOutOfRange { v: u32, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: u32 },
    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: u32, v: u32 },
}

/// An immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<u32>>,
    adj_bits: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects self-loops, duplicate edges
    /// (in either orientation) and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let mut adj_bits = vec![VertexSet::new(); n];
        for &(u, v) in edges {
            if u as usize >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            if adj_bits[u as usize].contains(v) {
                return Err(GraphError::DuplicateEdge { u, v });
            }
            adj_bits[u as usize].insert(v);
            adj_bits[v as usize].insert(u);
        }
        let adj = adj_bits.iter().map(|s| s.to_vec()).collect();
        Ok(Graph { n, adj, adj_bits })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph::from_edges(n, &[]).expect("empty graph within capacity")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    #[inline]
    pub fn neighbor_set(&self, v: u32) -> &VertexSet {
        &self.adj_bits[v as usize]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj_bits[u as usize].contains(v)
    }

    /// Number of neighbors of `v` inside `s`.
    #[inline]
    pub fn degree_in(&self, v: u32, s: &VertexSet) -> usize {
        self.adj_bits[v as usize].intersection_len(s)
    }

    /// Per-vertex neighbor masks as single words, available when `n <= 64`.
    /// The machine-word fast path for the exponential solvers.
    pub fn u64_neighbor_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(self.adj_bits.iter().map(|s| s.low_word()).collect())
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n as u32 {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        0..self.n as u32
    }

    /// Subgraph induced by `s`, plus the map from new ids back to old ids.
    ///
    /// New ids are assigned in ascending order of the old ids, so the map is
    /// a sorted vector and `map[new] = old`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<u32>) {
        let map = s.to_vec();
        let mut back = vec![u32::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            back[old as usize] = new as u32;
        }
        let mut edges = Vec::new();
        for (new_u, &old_u) in map.iter().enumerate() {
            for &old_v in self.neighbors(old_u) {
                if old_v > old_u && s.contains(old_v) {
                    edges.push((new_u as u32, back[old_v as usize]));
                }
            }
        }
        let g = Graph::from_edges(map.len(), &edges).expect("induced subgraph is simple");
        (g, map)
    }

    /// Complement graph: edge iff non-edge in `self` (no self-loops).
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n as u32 {
            for v in u + 1..self.n as u32 {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(self.n, &edges).expect("complement is simple")
    }

    /// Connected components, each a sorted vertex list, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for start in 0..self.n as u32 {
            if seen.contains(start) {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start);
            let mut queue = vec![start];
            while let Some(u) = queue.pop() {
                for &v in self.neighbors(u) {
                    if !seen.contains(v) {
                        seen.insert(v);
                        comp.push(v);
                        queue.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    // --- structured families used throughout the tests and generators ---

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n as u32).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n as u32).map(|v| (v - 1, v)).collect();
        edges.push((0, n as u32 - 1));
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a as u32 {
            for v in 0..b as u32 {
                edges.push((u, a as u32 + v));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves as u32).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    /// Disjoint union, relabeling each part's vertices after the previous.
    pub fn disjoint_union(parts: &[&Graph]) -> Graph {
        let n: usize = parts.iter().map(|g| g.n).sum();
        let mut edges = Vec::new();
        let mut offset = 0u32;
        for g in parts {
            for (u, v) in g.edges() {
                edges.push((u + offset, v + offset));
            }
            offset += g.n as u32;
        }
        Graph::from_edges(n, &edges).unwrap()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { v: 2, n: 2 })
        );
        assert_eq!(
            Graph::from_edges(2, &[(1, 1)]),
            Err(GraphError::SelfLoop { v: 1 })
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { u: 1, v: 0 })
        );
        assert!(Graph::from_edges(MAX_VERTICES + 1, &[]).is_err());
    }

    #[test]
    fn dual_representation_agrees() {
        let g = Graph::cycle(5);
        for v in g.vertices() {
            assert_eq!(g.neighbors(v), g.neighbor_set(v).to_vec().as_slice());
            for &u in g.neighbors(v) {
                assert!(g.has_edge(u, v) && g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn induced_subgraph_cases() {
        let c4 = Graph::cycle(4);
        // adjacent pair -> K2
        let (g, map) = c4.induced_subgraph(&VertexSet::from_iter([0, 1]));
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(map, vec![0, 1]);
        // empty set -> empty graph
        let (g, _) = c4.induced_subgraph(&VertexSet::EMPTY);
        assert_eq!(g.vertex_count(), 0);
        // opposite corners of C4 -> two isolated vertices
        let (g, _) = c4.induced_subgraph(&VertexSet::from_iter([0, 2]));
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn complement_cases() {
        assert_eq!(Graph::complete(3).complement().edge_count(), 0);
        assert_eq!(Graph::empty(2).complement(), Graph::complete(2));
        // P3 (0-1-2) complements to the single edge {0,2}
        assert_eq!(Graph::path(3).complement().edges(), vec![(0, 2)]);
    }

    #[test]
    fn components_split() {
        let g = Graph::disjoint_union(&[&Graph::complete(3), &Graph::complete(2)]);
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4]]);
    }
}
