//! Constructive gadget generators for the four hardness reductions, each
//! carrying the exact target-size translation of its source instance so the
//! equivalences can be checked executably and hard instances produced.
//!
//! Vertex numbering is fixed per family and recorded in `labels`, which
//! partition the constructed vertex set by role.

use crate::graph::Graph;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("the given set is not a vertex cover: edge {{{0}, {1}}} uncovered")]
    NotAVertexCover(u32, u32),
    #[error("cover vertex {0} out of range")]
    CoverVertexOutOfRange(u32),
}

/// A generated instance: the graph, the solution size the source maps to,
/// and the construction bookkeeping.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub graph: Graph,
    pub target_k: usize,
    pub reduction: &'static str,
    pub source_params: BTreeMap<String, u64>,
    /// Role tag -> sorted vertex ids (0-based); the tags partition V.
    pub labels: BTreeMap<String, Vec<u32>>,
}

#[derive(Serialize)]
struct ProvenanceFile<'a> {
    reduction: &'a str,
    #[serde(rename = "sourceParams")]
    source_params: &'a BTreeMap<String, u64>,
    #[serde(rename = "targetK")]
    target_k: usize,
    labels: BTreeMap<&'a String, Vec<u32>>,
}

impl ReducedInstance {
    /// Sidecar JSON with 1-based vertex ids.
    pub fn provenance_json(&self) -> String {
        let labels = self
            .labels
            .iter()
            .map(|(tag, vs)| (tag, vs.iter().map(|v| v + 1).collect()))
            .collect();
        serde_json::to_string(&ProvenanceFile {
            reduction: self.reduction,
            source_params: &self.source_params,
            target_k: self.target_k,
            labels,
        })
        .expect("provenance serializes")
    }

    fn assert_labels_partition(&self) {
        let mut seen = crate::bitset::VertexSet::new();
        let mut count = 0usize;
        for vs in self.labels.values() {
            for &v in vs {
                assert!(!seen.contains(v), "labels overlap at {v}");
                seen.insert(v);
                count += 1;
            }
        }
        assert_eq!(count, self.graph.vertex_count(), "labels must cover V");
    }
}

/// Irredundant-set source: Y is a clique copy of V, Z an independent copy,
/// and `z_i ~ y_j` iff `v_j` lies in the closed neighborhood of `v_i`. The
/// output is a split graph and the size translates one-to-one.
pub fn reduce_irredundant_to_pms(g: &Graph, k: usize) -> ReducedInstance {
    let n = g.vertex_count();
    let y = |i: u32| i;
    let z = |i: u32| n as u32 + i;
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            edges.push((y(i), y(j)));
        }
    }
    for i in 0..n as u32 {
        edges.push((z(i), y(i)));
        for &j in g.neighbors(i) {
            edges.push((z(i), y(j)));
        }
    }
    let graph = Graph::from_edges(2 * n, &edges).expect("construction is simple");
    let out = ReducedInstance {
        graph,
        target_k: k,
        reduction: "split-irredundant",
        source_params: BTreeMap::from([("n".into(), n as u64), ("k".into(), k as u64)]),
        labels: BTreeMap::from([
            ("Y".to_string(), (0..n as u32).collect()),
            ("Z".to_string(), (n as u32..2 * n as u32).collect()),
        ]),
    };
    out.assert_labels_partition();
    debug_assert!(is_split(&out.graph, n), "Y clique, Z independent");
    out
}

fn is_split(g: &Graph, n: usize) -> bool {
    let clique_ok = (0..n as u32).all(|i| (i + 1..n as u32).all(|j| g.has_edge(i, j)));
    let indep_ok = (n as u32..g.vertex_count() as u32)
        .all(|i| (i + 1..g.vertex_count() as u32).all(|j| !g.has_edge(i, j)));
    clique_ok && indep_ok
}

/// Doubling construction: two copies of V with `v'_i ~ v''_j` iff
/// `v_i ~ v_j`. The output is bipartite and sizes double.
pub fn reduce_pms_to_bipartite(g: &Graph, k: usize) -> ReducedInstance {
    let n = g.vertex_count();
    let mut edges = Vec::new();
    for (i, j) in g.edges() {
        edges.push((i, n as u32 + j));
        edges.push((j, n as u32 + i));
    }
    let graph = Graph::from_edges(2 * n, &edges).expect("construction is simple");
    debug_assert!((0..n as u32).all(|i| (i + 1..n as u32).all(|j| !graph.has_edge(i, j))));
    let out = ReducedInstance {
        graph,
        target_k: 2 * k,
        reduction: "bipartite-double",
        source_params: BTreeMap::from([("n".into(), n as u64), ("k".into(), k as u64)]),
        labels: BTreeMap::from([
            ("V'".to_string(), (0..n as u32).collect()),
            ("V''".to_string(), (n as u32..2 * n as u32).collect()),
        ]),
    };
    out.assert_labels_partition();
    out
}

/// Greedy 2-approximate vertex cover: repeatedly take both endpoints of the
/// lexicographically first uncovered edge.
pub fn greedy_vertex_cover(g: &Graph) -> Vec<u32> {
    let mut cover = crate::bitset::VertexSet::new();
    for (u, v) in g.edges() {
        if !cover.contains(u) && !cover.contains(v) {
            cover.insert(u);
            cover.insert(v);
        }
    }
    cover.to_vec()
}

/// Clique source with a vertex cover: two cliques L (cover copies + a1, a2)
/// and R (cover copies + b1, b2, u) joined by a perfect matching of rungs,
/// the non-cover vertices attached to u and to the R-copies of their
/// non-neighbors, and one 4-vertex path gadget per non-edge inside the
/// cover. A clique of size l corresponds to a solution of size
/// `2 + 2*|non-edges(cover)| + l`.
pub fn reduce_clique_to_pms(
    g: &Graph,
    cover: &[u32],
    l: usize,
) -> Result<ReducedInstance, ReductionError> {
    let n = g.vertex_count();
    let mut cover = cover.to_vec();
    cover.sort_unstable();
    cover.dedup();
    for &v in &cover {
        if v as usize >= n {
            return Err(ReductionError::CoverVertexOutOfRange(v));
        }
    }
    let in_cover: crate::bitset::VertexSet = cover.iter().copied().collect();
    for (x, y) in g.edges() {
        if !in_cover.contains(x) && !in_cover.contains(y) {
            return Err(ReductionError::NotAVertexCover(x, y));
        }
    }
    let rest: Vec<u32> = g.vertices().filter(|&v| !in_cover.contains(v)).collect();
    let k = cover.len();

    // layout: L copies, a1, a2, R copies, b1, b2, u, F, gadget paths
    let lcopy = |i: usize| i as u32;
    let a1 = k as u32;
    let a2 = k as u32 + 1;
    let rcopy = |i: usize| (k + 2 + i) as u32;
    let b1 = (2 * k + 2) as u32;
    let b2 = (2 * k + 3) as u32;
    let u = (2 * k + 4) as u32;
    let fvert = |j: usize| (2 * k + 5 + j) as u32;
    let gadget_base = 2 * k + 5 + rest.len();

    let mut non_edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if !g.has_edge(cover[i], cover[j]) {
                non_edges.push((i, j));
            }
        }
    }

    let mut edges = Vec::new();
    let left: Vec<u32> = (0..k).map(lcopy).chain([a1, a2]).collect();
    for (ai, &x) in left.iter().enumerate() {
        for &y in &left[ai + 1..] {
            edges.push((x, y));
        }
    }
    let right: Vec<u32> = (0..k).map(rcopy).chain([b1, b2, u]).collect();
    for (ai, &x) in right.iter().enumerate() {
        for &y in &right[ai + 1..] {
            edges.push((x, y));
        }
    }
    edges.push((a1, b1));
    edges.push((a2, b2));
    for i in 0..k {
        edges.push((lcopy(i), rcopy(i)));
    }
    for (j, &orig) in rest.iter().enumerate() {
        edges.push((fvert(j), u));
        for (i, &c) in cover.iter().enumerate() {
            if !g.has_edge(orig, c) {
                edges.push((fvert(j), rcopy(i)));
            }
        }
    }
    for (gi, &(i, j)) in non_edges.iter().enumerate() {
        let e = |p: usize| (gadget_base + 4 * gi + p) as u32;
        edges.push((e(0), e(1)));
        edges.push((e(1), e(2)));
        edges.push((e(2), e(3)));
        edges.push((rcopy(i), e(0)));
        edges.push((rcopy(i), e(3)));
        edges.push((rcopy(j), e(1)));
        edges.push((rcopy(j), e(2)));
    }

    let total = gadget_base + 4 * non_edges.len();
    let graph = Graph::from_edges(total, &edges).expect("construction is simple");

    // V \ F is a vertex cover of the output, so its cover number is at most
    // |L| + |R| + 4*|non_edges|; equivalently F spans no edges.
    for (j1, _) in rest.iter().enumerate() {
        for (j2, _) in rest.iter().enumerate().skip(j1 + 1) {
            debug_assert!(!graph.has_edge(fvert(j1), fvert(j2)));
        }
    }

    let out = ReducedInstance {
        graph,
        target_k: 2 + 2 * non_edges.len() + l,
        reduction: "kernel-clique",
        source_params: BTreeMap::from([
            ("n".into(), n as u64),
            ("coverSize".into(), k as u64),
            ("l".into(), l as u64),
            ("coverNonEdges".into(), non_edges.len() as u64),
        ]),
        labels: BTreeMap::from([
            ("L".to_string(), left),
            ("R".to_string(), right),
            ("F".to_string(), (0..rest.len()).map(fvert).collect()),
            (
                "Xebar".to_string(),
                (gadget_base as u32..total as u32).collect(),
            ),
        ]),
    };
    out.assert_labels_partition();
    Ok(out)
}

/// Independent-set source (planarity-preserving): a copy of the graph, one
/// pendant per vertex, and a 4-vertex path gadget per edge whose endpoints
/// attach to the edge's two copies in the crossing-free pattern. A size-k
/// independent set corresponds to a solution of size `k + 2*|E|`.
pub fn reduce_independent_set_to_pms_planar(g: &Graph, k: usize) -> ReducedInstance {
    let n = g.vertex_count();
    let edges_src = g.edges();
    let vprime = |i: u32| i;
    let pendant = |i: u32| n as u32 + i;
    let gadget_base = 2 * n;

    let mut edges = Vec::new();
    for &(i, j) in &edges_src {
        edges.push((vprime(i), vprime(j)));
    }
    for i in 0..n as u32 {
        edges.push((vprime(i), pendant(i)));
    }
    for (gi, &(i, j)) in edges_src.iter().enumerate() {
        let e = |p: usize| (gadget_base + 4 * gi + p) as u32;
        edges.push((e(0), e(1)));
        edges.push((e(1), e(2)));
        edges.push((e(2), e(3)));
        edges.push((vprime(i), e(0)));
        edges.push((vprime(i), e(3)));
        edges.push((vprime(j), e(1)));
        edges.push((vprime(j), e(2)));
    }

    let total = gadget_base + 4 * edges_src.len();
    let graph = Graph::from_edges(total, &edges).expect("construction is simple");
    // the pattern only adds pendant vertices and paths local to each edge
    for i in 0..n as u32 {
        debug_assert_eq!(graph.degree(pendant(i)), 1);
    }

    let out = ReducedInstance {
        graph,
        target_k: k + 2 * edges_src.len(),
        reduction: "planar-is",
        source_params: BTreeMap::from([
            ("n".into(), n as u64),
            ("m".into(), edges_src.len() as u64),
            ("k".into(), k as u64),
        ]),
        labels: BTreeMap::from([
            ("V'".to_string(), (0..n as u32).collect()),
            ("V''".to_string(), (n as u32..2 * n as u32).collect()),
            (
                "Xe".to_string(),
                (gadget_base as u32..total as u32).collect(),
            ),
        ]),
    };
    out.assert_labels_partition();
    out
}
