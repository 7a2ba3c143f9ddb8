//! Cluster and co-cluster deletion sets (the parameters of the FPT solvers).
//!
//! A cluster deletion set X leaves G−X a disjoint union of cliques; a
//! co-cluster deletion set leaves a complete multipartite graph. Both are
//! found by bounded-depth branching on induced P3s (delete one of the three
//! vertices), the co-cluster case by branching on the complement. The upward
//! scan over budgets returns a smallest modulator.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModulatorKind {
    Cluster,
    Cocluster,
}

/// A deletion set together with the decomposition of the remainder: the
/// maximal cliques of G−X (cluster) or its maximal independent sets
/// (co-cluster), each sorted, ordered by smallest member, partitioning V∖X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulator {
    pub kind: ModulatorKind,
    pub x: Vec<u32>,
    pub parts: Vec<Vec<u32>>,
}

impl Modulator {
    pub fn x_set(&self) -> VertexSet {
        self.x.iter().copied().collect()
    }
}

#[derive(Debug, Error)]
pub enum ModulatorError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("vertex id {0} out of range (file ids are 1-based)")]
    BadVertex(u32),
    #[error("deletion set does not leave a {0:?} remainder")]
    NotAModulator(ModulatorKind),
}

/// Searches for a cluster deletion set of size at most `kmax`; `parts` are
/// the connected components of G−X. Branching picks the first induced P3 in
/// a canonical scan and tries deleting each of its three vertices, so the
/// result is deterministic. Budgets are scanned upward, making the returned
/// modulator smallest.
pub fn find_cluster_deletion(g: &Graph, kmax: usize) -> Option<Modulator> {
    find_cluster_deletion_budgeted(g, kmax, u64::MAX).expect("unbounded budget")
}

/// Same as [`find_cluster_deletion`], giving up once the branching tree
/// exceeds `node_budget` nodes. `Err(())` means the budget ran out (the
/// deterministic stand-in for a wall-clock cutoff); `Ok(None)` a definite
/// "no modulator of that size".
pub fn find_cluster_deletion_budgeted(
    g: &Graph,
    kmax: usize,
    node_budget: u64,
) -> Result<Option<Modulator>, ()> {
    debug_assert!(kmax <= 25, "branching depth beyond 25 is impractical");
    let mut budget = node_budget;
    for k in 0..=kmax {
        let mut removed = VertexSet::new();
        if branch_p3(g, k, &mut removed, &mut budget)? {
            let x = removed.to_vec();
            let keep = VertexSet::full(g.vertex_count()).difference(&removed);
            let parts = cluster_parts(g, &keep);
            return Ok(Some(Modulator {
                kind: ModulatorKind::Cluster,
                x,
                parts,
            }));
        }
    }
    Ok(None)
}

/// Co-cluster deletion via the complement: G−X is complete multipartite iff
/// complement(G)−X is a cluster graph; the complement's cliques are the
/// maximal independent sets of G−X.
pub fn find_cocluster_deletion(g: &Graph, kmax: usize) -> Option<Modulator> {
    find_cocluster_deletion_budgeted(g, kmax, u64::MAX).expect("unbounded budget")
}

pub fn find_cocluster_deletion_budgeted(
    g: &Graph,
    kmax: usize,
    node_budget: u64,
) -> Result<Option<Modulator>, ()> {
    let co = g.complement();
    Ok(
        find_cluster_deletion_budgeted(&co, kmax, node_budget)?.map(|m| Modulator {
            kind: ModulatorKind::Cocluster,
            x: m.x,
            parts: m.parts,
        }),
    )
}

/// First induced P3 (u - center - w with u, w nonadjacent) in a canonical
/// scan over live vertices.
fn find_p3(g: &Graph, removed: &VertexSet) -> Option<(u32, u32, u32)> {
    for center in 0..g.vertex_count() as u32 {
        if removed.contains(center) {
            continue;
        }
        let nbrs: Vec<u32> = g
            .neighbors(center)
            .iter()
            .copied()
            .filter(|&v| !removed.contains(v))
            .collect();
        for (i, &u) in nbrs.iter().enumerate() {
            for &w in &nbrs[i + 1..] {
                if !g.has_edge(u, w) {
                    return Some((u, center, w));
                }
            }
        }
    }
    None
}

fn branch_p3(g: &Graph, budget_k: usize, removed: &mut VertexSet, nodes: &mut u64) -> Result<bool, ()> {
    if *nodes == 0 {
        return Err(());
    }
    *nodes -= 1;
    let Some((u, c, w)) = find_p3(g, removed) else {
        return Ok(true);
    };
    if budget_k == 0 {
        return Ok(false);
    }
    for v in [u, c, w] {
        removed.insert(v);
        if branch_p3(g, budget_k - 1, removed, nodes)? {
            return Ok(true);
        }
        removed.remove(v);
    }
    Ok(false)
}

fn cluster_parts(g: &Graph, keep: &VertexSet) -> Vec<Vec<u32>> {
    let (rest, map) = g.induced_subgraph(keep);
    rest.components()
        .into_iter()
        .map(|comp| comp.into_iter().map(|v| map[v as usize]).collect())
        .collect()
}

/// Checks all modulator invariants against `g`: parts partition V∖X, and the
/// remainder is a cluster graph with `parts` its maximal cliques (or a
/// complete multipartite graph with `parts` its maximal independent sets).
pub fn verify_modulator(g: &Graph, m: &Modulator) -> bool {
    let n = g.vertex_count();
    if m.x.iter().any(|&v| v as usize >= n) {
        return false;
    }
    let x = m.x_set();
    if x.len() != m.x.len() {
        return false;
    }
    let mut covered = VertexSet::new();
    for part in &m.parts {
        if part.is_empty() {
            return false;
        }
        for &v in part {
            if v as usize >= n || x.contains(v) || covered.contains(v) {
                return false;
            }
            covered.insert(v);
        }
    }
    if covered.union(&x) != VertexSet::full(n) {
        return false;
    }
    match m.kind {
        ModulatorKind::Cluster => {
            // each part is a clique, with no edges between parts
            for (i, part) in m.parts.iter().enumerate() {
                for (ai, &u) in part.iter().enumerate() {
                    for &v in &part[ai + 1..] {
                        if !g.has_edge(u, v) {
                            return false;
                        }
                    }
                }
                for other in &m.parts[i + 1..] {
                    for &u in part {
                        for &v in other {
                            if g.has_edge(u, v) {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        }
        ModulatorKind::Cocluster => {
            // each part independent, all cross-part pairs adjacent
            for (i, part) in m.parts.iter().enumerate() {
                for (ai, &u) in part.iter().enumerate() {
                    for &v in &part[ai + 1..] {
                        if g.has_edge(u, v) {
                            return false;
                        }
                    }
                }
                for other in &m.parts[i + 1..] {
                    for &u in part {
                        for &v in other {
                            if !g.has_edge(u, v) {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        }
    }
}

/// On-disk JSON shape: `{"kind": "cluster"|"cocluster", "X": [1-based]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct ModulatorFile {
    pub kind: ModulatorKind,
    #[serde(rename = "X")]
    pub x: Vec<u32>,
}

/// Parses a modulator file and recomputes `parts` against the graph,
/// rejecting deletion sets that do not leave the declared remainder class.
pub fn parse_modulator_json(text: &str, g: &Graph) -> Result<Modulator, ModulatorError> {
    let file: ModulatorFile = serde_json::from_str(text)?;
    let n = g.vertex_count();
    let mut x = Vec::with_capacity(file.x.len());
    for v in file.x {
        if v == 0 || v as usize > n {
            return Err(ModulatorError::BadVertex(v));
        }
        x.push(v - 1);
    }
    x.sort_unstable();
    x.dedup();
    let x_set: VertexSet = x.iter().copied().collect();
    let keep = VertexSet::full(n).difference(&x_set);
    let base = match file.kind {
        ModulatorKind::Cluster => g.clone(),
        ModulatorKind::Cocluster => g.complement(),
    };
    let parts = cluster_parts(&base, &keep);
    let m = Modulator {
        kind: file.kind,
        x,
        parts,
    };
    if !verify_modulator(g, &m) {
        return Err(ModulatorError::NotAModulator(file.kind));
    }
    Ok(m)
}

pub fn modulator_to_json(m: &Modulator) -> String {
    let file = ModulatorFile {
        kind: m.kind,
        x: m.x.iter().map(|v| v + 1).collect(),
    };
    serde_json::to_string(&file).expect("modulator serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cluster_graph_needs_no_deletions() {
        let g = Graph::disjoint_union(&[&Graph::complete(3), &Graph::complete(3)]);
        let m = find_cluster_deletion(&g, 5).unwrap();
        assert!(m.x.is_empty());
        assert_eq!(m.parts, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(verify_modulator(&g, &m));
    }

    #[test]
    fn p3_needs_one_deletion() {
        let g = Graph::path(3);
        let m = find_cluster_deletion(&g, 3).unwrap();
        assert_eq!(m.x.len(), 1);
        assert!(verify_modulator(&g, &m));
    }

    #[test]
    fn c5_needs_two_deletions() {
        let g = Graph::cycle(5);
        assert!(find_cluster_deletion(&g, 1).is_none());
        let m = find_cluster_deletion(&g, 2).unwrap();
        assert_eq!(m.x.len(), 2);
        assert!(verify_modulator(&g, &m));
        // C5 is self-complementary, so the co-cluster distance matches
        assert!(find_cocluster_deletion(&g, 1).is_none());
        assert_eq!(find_cocluster_deletion(&g, 2).unwrap().x.len(), 2);
    }

    #[test]
    fn cocluster_cases() {
        let g = Graph::complete_bipartite(2, 2);
        let m = find_cocluster_deletion(&g, 3).unwrap();
        assert!(m.x.is_empty());
        assert_eq!(m.parts, vec![vec![0, 1], vec![2, 3]]);
        assert!(verify_modulator(&g, &m));

        // single edge plus isolated vertex: co-P3, one deletion suffices
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let m = find_cocluster_deletion(&g, 3).unwrap();
        assert!(m.x.len() <= 1);
        assert!(verify_modulator(&g, &m));
    }

    #[test]
    fn verify_rejects_wrong_decompositions() {
        let g = Graph::path(3);
        let m = Modulator {
            kind: ModulatorKind::Cluster,
            x: vec![],
            parts: vec![vec![0, 1, 2]],
        };
        assert!(!verify_modulator(&g, &m), "P3 is not a cluster graph");
        let good = Modulator {
            kind: ModulatorKind::Cluster,
            x: vec![1],
            parts: vec![vec![0], vec![2]],
        };
        assert!(verify_modulator(&g, &good));
        // K_{2,2} as a co-cluster with both sides as parts
        let g = Graph::complete_bipartite(2, 2);
        let m = Modulator {
            kind: ModulatorKind::Cocluster,
            x: vec![],
            parts: vec![vec![0, 1], vec![2, 3]],
        };
        assert!(verify_modulator(&g, &m));
    }

    #[test]
    fn upward_scan_matches_bruteforce_minimum() {
        // minimality at desk scale: compare against trying all deletion sets
        for seed in 0..20u64 {
            let n = 5 + (seed % 4) as usize;
            let g = crate::generate::gnp(n, 0.45, seed);
            let m = find_cluster_deletion(&g, n).unwrap();
            let brute = (0u64..1 << n)
                .filter(|mask| {
                    let removed: VertexSet =
                        (0..n as u32).filter(|v| mask >> v & 1 == 1).collect();
                    find_p3(&g, &removed).is_none()
                })
                .map(|mask| mask.count_ones() as usize)
                .min()
                .unwrap();
            assert_eq!(m.x.len(), brute, "seed {seed}");
        }
    }

    #[test]
    fn duality_with_complement() {
        for seed in 0..10u64 {
            let g = crate::generate::gnp(7, 0.5, seed);
            let a = find_cocluster_deletion(&g, 7).unwrap();
            let b = find_cluster_deletion(&g.complement(), 7).unwrap();
            assert_eq!(a.x, b.x);
            assert_eq!(a.parts, b.parts);
        }
    }

    #[test]
    fn budget_cutoff_reports_exhaustion() {
        let g = Graph::cycle(5);
        assert_eq!(find_cluster_deletion_budgeted(&g, 2, 1), Err(()));
    }

    #[test]
    fn modulator_json_roundtrip() {
        let g = Graph::path(3);
        let m = find_cluster_deletion(&g, 3).unwrap();
        let text = modulator_to_json(&m);
        assert_eq!(text, r#"{"kind":"cluster","X":[1]}"#);
        let back = parse_modulator_json(&text, &g).unwrap();
        assert_eq!(back, m);
        // a set that is not a cluster modulator is rejected
        let bad = r#"{"kind":"cluster","X":[]}"#;
        assert!(matches!(
            parse_modulator_json(bad, &g),
            Err(ModulatorError::NotAModulator(ModulatorKind::Cluster))
        ));
        assert!(parse_modulator_json(r#"{"kind":"cluster","X":[9]}"#, &g).is_err());
    }
}
