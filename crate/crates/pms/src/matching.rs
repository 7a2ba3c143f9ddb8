//! Maximum-cardinality and maximum-weight bipartite matching.
//!
//! Weights are positive integers. The weighted solver augments along
//! most-negative-cost paths (successive shortest paths, Bellman-Ford on the
//! residual graph), then extracts the lexicographically smallest optimal
//! matching by greedily forcing pairs in ascending `(l, r)` order while the
//! optimum is preserved. Determinism is part of the contract: callers freeze
//! witnesses byte-for-byte.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BipartiteError {
    #[error("left endpoint {0} out of range")]
    LeftOutOfRange(u32),
    #[error("right endpoint {0} out of range")]
    RightOutOfRange(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("edge ({0}, {1}) has zero weight; weights must be >= 1")]
    ZeroWeight(u32, u32),
}

/// Bipartite graph with `left` + `right` vertices and weighted edges.
#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    pub left: usize,
    pub right: usize,
    edges: Vec<(u32, u32, u64)>,
    adj: Vec<Vec<(u32, u64)>>,
}

impl BipartiteGraph {
    pub fn new(
        left: usize,
        right: usize,
        mut edges: Vec<(u32, u32, u64)>,
    ) -> Result<BipartiteGraph, BipartiteError> {
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); left];
        for w in edges.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(BipartiteError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        for &(l, r, w) in &edges {
            if l as usize >= left {
                return Err(BipartiteError::LeftOutOfRange(l));
            }
            if r as usize >= right {
                return Err(BipartiteError::RightOutOfRange(r));
            }
            if w == 0 {
                return Err(BipartiteError::ZeroWeight(l, r));
            }
            adj[l as usize].push((r, w));
        }
        Ok(BipartiteGraph {
            left,
            right,
            edges,
            adj,
        })
    }

    pub fn edges(&self) -> &[(u32, u32, u64)] {
        &self.edges
    }
}

/// A matching: pair list sorted by left endpoint, plus its total weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(u32, u32)>,
    pub total_weight: u64,
}

impl Matching {
    pub fn cardinality(&self) -> usize {
        self.pairs.len()
    }
}

/// Maximum-cardinality matching via augmenting paths, trying left vertices
/// in ascending order (deterministic given input order).
pub fn max_cardinality_matching(bg: &BipartiteGraph) -> Matching {
    let mut match_r: Vec<Option<u32>> = vec![None; bg.right];
    let mut match_l: Vec<Option<u32>> = vec![None; bg.left];

    fn try_augment(
        bg: &BipartiteGraph,
        l: u32,
        seen: &mut [bool],
        match_l: &mut [Option<u32>],
        match_r: &mut [Option<u32>],
    ) -> bool {
        for &(r, _) in &bg.adj[l as usize] {
            if seen[r as usize] {
                continue;
            }
            seen[r as usize] = true;
            let free = match match_r[r as usize] {
                None => true,
                Some(l2) => try_augment(bg, l2, seen, match_l, match_r),
            };
            if free {
                match_r[r as usize] = Some(l);
                match_l[l as usize] = Some(r);
                return true;
            }
        }
        false
    }

    for l in 0..bg.left as u32 {
        let mut seen = vec![false; bg.right];
        try_augment(bg, l, &mut seen, &mut match_l, &mut match_r);
    }

    collect(bg, &match_l)
}

/// Maximum total weight over all matchings; ties broken toward the
/// lexicographically smallest pair sequence under ascending `(l, r)`.
pub fn max_weight_matching(bg: &BipartiteGraph) -> Matching {
    let target = optimal_weight(bg, &[], &[]);

    let mut banned_l = vec![false; bg.left];
    let mut banned_r = vec![false; bg.right];
    let mut pairs = Vec::new();
    let mut base = 0u64;

    for l in 0..bg.left {
        let mut chosen = None;
        for &(r, w) in &bg.adj[l] {
            if banned_r[r as usize] {
                continue;
            }
            banned_l[l] = true;
            banned_r[r as usize] = true;
            let rest = optimal_weight(bg, &banned_l, &banned_r);
            if base + w + rest == target {
                chosen = Some((r, w));
                break;
            }
            banned_l[l] = false;
            banned_r[r as usize] = false;
        }
        match chosen {
            Some((r, w)) => {
                pairs.push((l as u32, r));
                base += w;
            }
            None => banned_l[l] = true,
        }
    }
    debug_assert_eq!(base, target);
    Matching {
        pairs,
        total_weight: target,
    }
}

/// Weight of a maximum-weight matching avoiding banned vertices.
/// Successive shortest augmenting paths; costs are negated weights so the
/// best marginal gain is the most negative path. Stops when no augmenting
/// path improves the total.
fn optimal_weight(bg: &BipartiteGraph, banned_l: &[bool], banned_r: &[bool]) -> u64 {
    let (nl, nr) = (bg.left, bg.right);
    let live_l = |l: usize| banned_l.is_empty() || !banned_l[l];
    let live_r = |r: usize| banned_r.is_empty() || !banned_r[r];

    let mut match_l: Vec<Option<u32>> = vec![None; nl];
    let mut match_r: Vec<Option<u32>> = vec![None; nr];
    let mut total = 0u64;

    loop {
        // Bellman-Ford over the residual graph. dist indexes: 0..nl left,
        // nl..nl+nr right.
        const INF: i64 = i64::MAX / 4;
        let mut dist = vec![INF; nl + nr];
        let mut pred_of_r: Vec<Option<u32>> = vec![None; nr];
        for l in 0..nl {
            if live_l(l) && match_l[l].is_none() {
                dist[l] = 0;
            }
        }
        for _ in 0..nl + nr {
            let mut changed = false;
            for &(l, r, w) in &bg.edges {
                let (li, ri) = (l as usize, r as usize);
                if !live_l(li) || !live_r(ri) {
                    continue;
                }
                if match_l[li] == Some(r) {
                    // residual back edge r -> l with cost +w
                    if dist[nl + ri] < INF && dist[nl + ri] + (w as i64) < dist[li] {
                        dist[li] = dist[nl + ri] + w as i64;
                        changed = true;
                    }
                } else {
                    // forward edge l -> r with cost -w
                    if dist[li] < INF && dist[li] - (w as i64) < dist[nl + ri] {
                        dist[nl + ri] = dist[li] - w as i64;
                        pred_of_r[ri] = Some(l);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        // Best free right endpoint with negative path cost.
        let mut best: Option<(i64, usize)> = None;
        for r in 0..nr {
            if live_r(r) && match_r[r].is_none() && dist[nl + r] < 0 {
                if best.map_or(true, |(d, _)| dist[nl + r] < d) {
                    best = Some((dist[nl + r], r));
                }
            }
        }
        let Some((gain, mut r)) = best else {
            return total;
        };
        total += (-gain) as u64;

        // Flip the augmenting path back to a free left vertex.
        loop {
            let l = pred_of_r[r].expect("reachable right vertex has a predecessor");
            let prev = match_l[l as usize].replace(r as u32);
            match_r[r] = Some(l);
            match prev {
                None => break,
                Some(r2) => r = r2 as usize,
            }
        }
    }
}

fn collect(bg: &BipartiteGraph, match_l: &[Option<u32>]) -> Matching {
    let mut pairs = Vec::new();
    let mut total = 0u64;
    for (l, m) in match_l.iter().enumerate() {
        if let Some(r) = m {
            pairs.push((l as u32, *r));
            let w = bg.adj[l].iter().find(|&&(rr, _)| rr == *r).unwrap().1;
            total += w;
        }
    }
    Matching {
        pairs,
        total_weight: total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bg(l: usize, r: usize, edges: &[(u32, u32, u64)]) -> BipartiteGraph {
        BipartiteGraph::new(l, r, edges.to_vec()).unwrap()
    }

    /// Exhaustive maximum over all matchings; the independent oracle for
    /// small instances.
    pub(crate) fn brute_force_best(bg: &BipartiteGraph) -> (usize, u64) {
        let edges = bg.edges();
        let m = edges.len();
        assert!(m <= 20);
        let mut best_card = 0usize;
        let mut best_weight = 0u64;
        for mask in 0u32..1 << m {
            let mut used_l = 0u64;
            let mut used_r = 0u64;
            let mut ok = true;
            let mut w_sum = 0u64;
            let mut count = 0usize;
            for (i, &(l, r, w)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if used_l >> l & 1 == 1 || used_r >> r & 1 == 1 {
                        ok = false;
                        break;
                    }
                    used_l |= 1 << l;
                    used_r |= 1 << r;
                    w_sum += w;
                    count += 1;
                }
            }
            if ok {
                best_card = best_card.max(count);
                best_weight = best_weight.max(w_sum);
            }
        }
        (best_card, best_weight)
    }

    #[test]
    fn cardinality_examples() {
        // complete 2x2
        let g = bg(2, 2, &[(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]);
        assert_eq!(max_cardinality_matching(&g).cardinality(), 2);
        // shared right vertex
        let g = bg(2, 1, &[(0, 0, 1), (1, 0, 1)]);
        assert_eq!(max_cardinality_matching(&g).cardinality(), 1);
        // star
        let g = bg(1, 3, &[(0, 0, 1), (0, 1, 1), (0, 2, 1)]);
        assert_eq!(max_cardinality_matching(&g).cardinality(), 1);
    }

    #[test]
    fn weight_beats_cardinality() {
        // Keeping the heavy single edge (weight 5) beats matching both
        // left vertices (weight 2). Expected values frozen from
        // brute_force_best.
        let g = bg(2, 2, &[(0, 0, 5), (0, 1, 1), (1, 0, 1)]);
        assert_eq!(brute_force_best(&g).1, 5);
        let m = max_weight_matching(&g);
        assert_eq!(m.total_weight, 5);
        assert_eq!(m.pairs, vec![(0, 0)]);
    }

    #[test]
    fn cardinality_beats_single_heavy_edge_when_sums_win() {
        let g = bg(2, 2, &[(0, 0, 5), (0, 1, 5), (1, 0, 2)]);
        assert_eq!(brute_force_best(&g).1, 7);
        let m = max_weight_matching(&g);
        assert_eq!(m.total_weight, 7);
        assert_eq!(m.pairs, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn single_and_empty() {
        let g = bg(1, 1, &[(0, 0, 7)]);
        assert_eq!(max_weight_matching(&g).total_weight, 7);
        let g = bg(3, 2, &[]);
        let m = max_weight_matching(&g);
        assert_eq!(m.total_weight, 0);
        assert!(m.pairs.is_empty());
    }

    #[test]
    fn lexicographic_tie_break() {
        // Two optimal perfect matchings of weight 6; the lex-smaller pair
        // sequence is [(0,0),(1,1)].
        let g = bg(2, 2, &[(0, 0, 3), (0, 1, 3), (1, 0, 3), (1, 1, 3)]);
        let m = max_weight_matching(&g);
        assert_eq!(m.total_weight, 6);
        assert_eq!(m.pairs, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            BipartiteGraph::new(1, 1, vec![(1, 0, 1)]).unwrap_err(),
            BipartiteError::LeftOutOfRange(1)
        );
        assert_eq!(
            BipartiteGraph::new(1, 1, vec![(0, 0, 1), (0, 0, 2)]).unwrap_err(),
            BipartiteError::DuplicateEdge(0, 0)
        );
        assert_eq!(
            BipartiteGraph::new(1, 1, vec![(0, 0, 0)]).unwrap_err(),
            BipartiteError::ZeroWeight(0, 0)
        );
    }

    #[test]
    fn matches_brute_force_on_random_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let l = rng.random_range(1..=5usize);
            let r = rng.random_range(1..=5usize);
            let mut edges = Vec::new();
            for li in 0..l as u32 {
                for ri in 0..r as u32 {
                    if rng.random_bool(0.5) {
                        edges.push((li, ri, rng.random_range(1..=6u64)));
                    }
                }
            }
            if edges.len() > 20 {
                edges.truncate(20);
            }
            let g = BipartiteGraph::new(l, r, edges).unwrap();
            let (best_card, best_weight) = brute_force_best(&g);
            assert_eq!(max_cardinality_matching(&g).cardinality(), best_card);
            let m = max_weight_matching(&g);
            assert_eq!(m.total_weight, best_weight);
            // pairs really form a matching of that weight
            let mut w_sum = 0u64;
            let mut used_l = vec![false; l];
            let mut used_r = vec![false; r];
            for &(li, ri) in &m.pairs {
                assert!(!used_l[li as usize] && !used_r[ri as usize]);
                used_l[li as usize] = true;
                used_r[ri as usize] = true;
                w_sum += g
                    .edges()
                    .iter()
                    .find(|&&(a, b, _)| (a, b) == (li, ri))
                    .unwrap()
                    .2;
            }
            assert_eq!(w_sum, best_weight);
        }
    }
}
