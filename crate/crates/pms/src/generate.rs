//! Seeded random instance generators. Identical inputs give identical graphs
//! (ChaCha-based, platform independent), which the CLI relies on for
//! byte-identical output files.

use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi G(n, p).
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are simple")
}

/// Uniform random recursive tree on `n` vertices (width-1 instances for the
/// treewidth solver).
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let parent = rng.random_range(0..v) as u32;
        edges.push((parent, v as u32));
    }
    Graph::from_edges(n, &edges).expect("tree edges are simple")
}

/// A cluster graph (disjoint cliques of the given sizes) plus `modk` extra
/// modulator vertices attached with probability 1/2 to every earlier vertex.
/// The modulator vertices are the last `modk` ids.
pub fn cluster_plus(clique_sizes: &[usize], modk: usize, seed: u64) -> Graph {
    let base: usize = clique_sizes.iter().sum();
    let n = base + modk;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut offset = 0u32;
    for &size in clique_sizes {
        for i in 0..size as u32 {
            for j in i + 1..size as u32 {
                edges.push((offset + i, offset + j));
            }
        }
        offset += size as u32;
    }
    for m in base..n {
        for v in 0..m {
            if rng.random_bool(0.5) {
                edges.push((v as u32, m as u32));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are simple")
}

/// A co-cluster graph (complete multipartite with the given part sizes) plus
/// `modk` random modulator vertices, as in [`cluster_plus`].
pub fn cocluster_plus(part_sizes: &[usize], modk: usize, seed: u64) -> Graph {
    let base: usize = part_sizes.iter().sum();
    let n = base + modk;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut starts = Vec::new();
    let mut acc = 0usize;
    for &s in part_sizes {
        starts.push(acc);
        acc += s;
    }
    for (pi, &si) in part_sizes.iter().enumerate() {
        for (pj, &sj) in part_sizes.iter().enumerate().skip(pi + 1) {
            for i in 0..si {
                for j in 0..sj {
                    edges.push(((starts[pi] + i) as u32, (starts[pj] + j) as u32));
                }
            }
        }
    }
    for m in base..n {
        for v in 0..m {
            if rng.random_bool(0.5) {
                edges.push((v as u32, m as u32));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are simple")
}
