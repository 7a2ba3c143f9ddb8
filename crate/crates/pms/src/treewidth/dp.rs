//! The dynamic program over a nice tree decomposition.
//!
//! A table entry at node t is keyed by (A_t, B_t, p, n_A, n_B): the bag
//! intersections of the two sides, a bit per labeled bag vertex saying
//! whether its matching partner already lies below the bag, and the side
//! sizes within the subtree graph. An entry exists iff two disjoint sets
//! realize it such that every below-bag side vertex has exactly one cross
//! neighbor. Tables are sparse: only realizable keys are stored, with one
//! witness predecessor each (first found under a deterministic iteration
//! order), so a maximum solution can be replayed from the root.
//!
//! Entries are generated bottom-up (child entries push parent entries).
//! Keys in which some labeled bag vertex already sees two partners — its
//! below-partner bit plus opposite-labeled bag neighbors exceed one — can
//! never complete and are pruned on insertion; every cross edge inside the
//! bag eventually contributes to both endpoints, so the prune is sound.

use super::{NiceTreeDecomposition, NodeKind, TwError};
use crate::graph::Graph;
use crate::solution::PmsSolution;
use std::collections::BTreeMap;

/// Key: (a_mask, b_mask, p_mask, n_a, n_b) over bag positions.
type Key = (u16, u16, u16, u16, u16);

#[derive(Clone, Debug)]
enum Witness {
    Leaf,
    Intro(Key),
    ForgetToA(Key),
    ForgetToB(Key),
    ForgetSkip(Key),
    Join(Key, Key),
}

#[derive(Clone, Debug)]
pub struct DpConfig {
    /// Largest admissible bag (the table key packs bags into 16-bit masks;
    /// anything larger is rejected as a capacity error).
    pub max_bag: usize,
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig { max_bag: 12 }
    }
}

/// Result of a DP run.
#[derive(Debug)]
pub struct DpOutcome {
    /// Sizes k for which a pair of perfectly matched sets exists in G,
    /// ascending (always contains 0; downward closed).
    pub feasible_k: Vec<usize>,
    /// Total entries stored across all node tables.
    pub states_stored: u64,
    tables: Vec<BTreeMap<Key, Witness>>,
}

/// Runs the table computation bottom-up over the decomposition.
pub fn dp_solve(
    g: &Graph,
    ntd: &NiceTreeDecomposition,
    config: &DpConfig,
) -> Result<DpOutcome, TwError> {
    let limit = config.max_bag.min(16);
    for node in &ntd.nodes {
        if node.bag.len() > limit {
            return Err(TwError::BagTooLarge {
                size: node.bag.len(),
                limit,
            });
        }
    }

    let node_count = ntd.nodes.len();
    let mut tables: Vec<BTreeMap<Key, Witness>> = vec![BTreeMap::new(); node_count];
    // adjacency restricted to each node's bag, in bag positions
    let bag_adj: Vec<Vec<u16>> = ntd
        .nodes
        .iter()
        .map(|node| {
            node.bag
                .iter()
                .map(|&v| {
                    let mut mask = 0u16;
                    for (j, &u) in node.bag.iter().enumerate() {
                        if g.has_edge(v, u) {
                            mask |= 1 << j;
                        }
                    }
                    mask
                })
                .collect()
        })
        .collect();

    for t in ntd.post_order() {
        let node = &ntd.nodes[t];
        match &node.kind {
            NodeKind::Leaf => {
                tables[t].insert((0, 0, 0, 0, 0), Witness::Leaf);
            }
            NodeKind::Introduce(v) => {
                let c = node.children[0];
                let pos = node.bag.binary_search(v).expect("introduced vertex in bag") as u32;
                let child_table = std::mem::take(&mut tables[c]);
                let adj = &bag_adj[t];
                for (&(a, b, p, na, nb), _) in child_table.iter() {
                    let a2 = insert_zero_bit(a, pos);
                    let b2 = insert_zero_bit(b, pos);
                    let p2 = insert_zero_bit(p, pos);
                    let key = (a2, b2, p2, na, nb);
                    store(&mut tables[t], adj, key, Witness::Intro((a, b, p, na, nb)));
                    let key_a = (a2 | 1 << pos, b2, p2, na + 1, nb);
                    store(&mut tables[t], adj, key_a, Witness::Intro((a, b, p, na, nb)));
                    let key_b = (a2, b2 | 1 << pos, p2, na, nb + 1);
                    store(&mut tables[t], adj, key_b, Witness::Intro((a, b, p, na, nb)));
                }
                tables[c] = child_table;
            }
            NodeKind::Forget(v) => {
                let c = node.children[0];
                let child_bag = &ntd.nodes[c].bag;
                let pos = child_bag.binary_search(v).expect("forgotten vertex in child") as u32;
                let child_adj = &bag_adj[c];
                let adj = &bag_adj[t];
                let child_table = std::mem::take(&mut tables[c]);
                for (&ck, _) in child_table.iter() {
                    let (a, b, p, na, nb) = ck;
                    let vbit = 1u16 << pos;
                    if a & vbit != 0 {
                        // v joins the below-bag part of A; it needs exactly
                        // one partner: a bag neighbor in B, or its p bit.
                        let bag_partners = child_adj[pos as usize] & b;
                        let below = p & vbit != 0;
                        match (bag_partners.count_ones(), below) {
                            (1, false) => {
                                let u = bag_partners.trailing_zeros();
                                // the partner must not already be served
                                if p & (1 << u) == 0 {
                                    let key = (
                                        remove_bit(a, pos),
                                        remove_bit(b, pos),
                                        remove_bit(p | (1 << u), pos),
                                        na,
                                        nb,
                                    );
                                    store(&mut tables[t], adj, key, Witness::ForgetToA(ck));
                                }
                            }
                            (0, true) => {
                                let key = (
                                    remove_bit(a, pos),
                                    remove_bit(b, pos),
                                    remove_bit(p & !vbit, pos),
                                    na,
                                    nb,
                                );
                                store(&mut tables[t], adj, key, Witness::ForgetToA(ck));
                            }
                            _ => {}
                        }
                    } else if b & vbit != 0 {
                        let bag_partners = child_adj[pos as usize] & a;
                        let below = p & vbit != 0;
                        match (bag_partners.count_ones(), below) {
                            (1, false) => {
                                let u = bag_partners.trailing_zeros();
                                if p & (1 << u) == 0 {
                                    let key = (
                                        remove_bit(a, pos),
                                        remove_bit(b, pos),
                                        remove_bit(p | (1 << u), pos),
                                        na,
                                        nb,
                                    );
                                    store(&mut tables[t], adj, key, Witness::ForgetToB(ck));
                                }
                            }
                            (0, true) => {
                                let key = (
                                    remove_bit(a, pos),
                                    remove_bit(b, pos),
                                    remove_bit(p & !vbit, pos),
                                    na,
                                    nb,
                                );
                                store(&mut tables[t], adj, key, Witness::ForgetToB(ck));
                            }
                            _ => {}
                        }
                    } else {
                        let key = (
                            remove_bit(a, pos),
                            remove_bit(b, pos),
                            remove_bit(p, pos),
                            na,
                            nb,
                        );
                        store(&mut tables[t], adj, key, Witness::ForgetSkip(ck));
                    }
                }
                tables[c] = child_table;
            }
            NodeKind::Join => {
                let (c1, c2) = (node.children[0], node.children[1]);
                let adj = &bag_adj[t];
                let t1 = std::mem::take(&mut tables[c1]);
                let t2 = std::mem::take(&mut tables[c2]);
                // group the second table by (a, b) for the merge
                let mut groups: BTreeMap<(u16, u16), Vec<Key>> = BTreeMap::new();
                for &k2 in t2.keys() {
                    groups.entry((k2.0, k2.1)).or_default().push(k2);
                }
                for (&k1, _) in t1.iter() {
                    let (a, b, p1, na1, nb1) = k1;
                    let Some(partners) = groups.get(&(a, b)) else {
                        continue;
                    };
                    for &k2 in partners {
                        let (_, _, p2, na2, nb2) = k2;
                        if p1 & p2 != 0 {
                            continue; // a vertex cannot have partners below both children
                        }
                        let key = (
                            a,
                            b,
                            p1 | p2,
                            na1 + na2 - a.count_ones() as u16,
                            nb1 + nb2 - b.count_ones() as u16,
                        );
                        store(&mut tables[t], adj, key, Witness::Join(k1, k2));
                    }
                }
                tables[c1] = t1;
                tables[c2] = t2;
            }
        }
    }

    let states_stored = tables.iter().map(|t| t.len() as u64).sum();
    let mut feasible_k: Vec<usize> = tables[ntd.root]
        .keys()
        .filter(|&&(a, b, p, na, nb)| a == 0 && b == 0 && p == 0 && na == nb)
        .map(|&(_, _, _, na, _)| na as usize)
        .collect();
    feasible_k.sort_unstable();
    feasible_k.dedup();
    debug_assert_eq!(
        feasible_k,
        (0..feasible_k.len()).collect::<Vec<_>>(),
        "root feasible set must be downward closed"
    );
    Ok(DpOutcome {
        feasible_k,
        states_stored,
        tables,
    })
}

impl DpOutcome {
    /// Replays witness pointers from the root entry for size `k`, collecting
    /// side membership at the forget nodes (each vertex is forgotten exactly
    /// once).
    pub fn extract(&self, g: &Graph, ntd: &NiceTreeDecomposition, k: usize) -> Option<PmsSolution> {
        let root_key: Key = (0, 0, 0, k as u16, k as u16);
        self.tables[ntd.root].get(&root_key)?;
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut stack = vec![(ntd.root, root_key)];
        while let Some((t, key)) = stack.pop() {
            let node = &ntd.nodes[t];
            match self.tables[t].get(&key).expect("witness chain is stored") {
                Witness::Leaf => {}
                Witness::Intro(ck) => stack.push((node.children[0], *ck)),
                Witness::ForgetToA(ck) => {
                    if let NodeKind::Forget(v) = node.kind {
                        a.push(v);
                    }
                    stack.push((node.children[0], *ck));
                }
                Witness::ForgetToB(ck) => {
                    if let NodeKind::Forget(v) = node.kind {
                        b.push(v);
                    }
                    stack.push((node.children[0], *ck));
                }
                Witness::ForgetSkip(ck) => stack.push((node.children[0], *ck)),
                Witness::Join(k1, k2) => {
                    stack.push((node.children[0], *k1));
                    stack.push((node.children[1], *k2));
                }
            }
        }
        let b_set: crate::bitset::VertexSet = b.iter().copied().collect();
        let mut pairs = Vec::with_capacity(a.len());
        for &v in &a {
            let partner = g.neighbor_set(v).intersection(&b_set).first()?;
            pairs.push((v, partner));
        }
        Some(PmsSolution::from_pairs(&pairs))
    }
}

/// Inserts a key (keeping the first witness) unless some labeled bag vertex
/// already has more than one committed partner.
fn store(table: &mut BTreeMap<Key, Witness>, bag_adj: &[u16], key: Key, witness: Witness) {
    let (a, b, p, _, _) = key;
    debug_assert_eq!(p & !(a | b), 0, "p bits only on labeled vertices");
    for i in 0..bag_adj.len() as u32 {
        let bit = 1u16 << i;
        let opposite = if a & bit != 0 {
            b
        } else if b & bit != 0 {
            a
        } else {
            continue;
        };
        let committed = (p >> i & 1) as u32 + (bag_adj[i as usize] & opposite).count_ones();
        if committed > 1 {
            return;
        }
    }
    table.entry(key).or_insert(witness);
}

#[inline]
fn insert_zero_bit(mask: u16, pos: u32) -> u16 {
    let low = mask & ((1 << pos) - 1);
    let high = mask & !((1u16 << pos).wrapping_sub(1));
    low | (high << 1)
}

#[inline]
fn remove_bit(mask: u16, pos: u32) -> u16 {
    let low = mask & ((1 << pos) - 1);
    let high = mask & !(((1u32 << (pos + 1)) - 1) as u16);
    low | (high >> 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracle::pms_max_bruteforce;
    use crate::solution::verify_solution;
    use crate::treewidth::{build_tree_decomposition, build_tree_decomposition_with, EliminationOrder};

    fn solve(g: &Graph) -> DpOutcome {
        let ntd = build_tree_decomposition(g).to_nice();
        dp_solve(g, &ntd, &DpConfig::default()).unwrap()
    }

    #[test]
    fn bit_helpers() {
        assert_eq!(insert_zero_bit(0b1011, 2), 0b10011);
        assert_eq!(insert_zero_bit(0b1011, 0), 0b10110);
        assert_eq!(remove_bit(0b10011, 2), 0b1011);
        assert_eq!(remove_bit(0b10110, 0), 0b1011);
        for mask in 0u16..256 {
            for pos in 0..8 {
                assert_eq!(remove_bit(insert_zero_bit(mask, pos), pos), mask);
            }
        }
    }

    #[test]
    fn root_sets_on_fixtures() {
        assert_eq!(solve(&Graph::complete(2)).feasible_k, vec![0, 1]);
        assert_eq!(solve(&Graph::cycle(4)).feasible_k, vec![0, 1, 2]);
        assert_eq!(solve(&Graph::star(3)).feasible_k, vec![0, 1]);
        assert_eq!(solve(&Graph::empty(3)).feasible_k, vec![0]);
    }

    #[test]
    fn witnesses_verify() {
        for g in [
            Graph::path(4),
            Graph::disjoint_union(&[&Graph::complete(2), &Graph::complete(2)]),
            Graph::cycle(6),
            crate::generate::gnp(10, 0.4, 5),
        ] {
            let ntd = build_tree_decomposition(&g).to_nice();
            let out = dp_solve(&g, &ntd, &DpConfig::default()).unwrap();
            for &k in &out.feasible_k {
                if k == 0 {
                    continue;
                }
                let sol = out.extract(&g, &ntd, k).unwrap();
                assert_eq!(sol.size(), k);
                assert_eq!(verify_solution(&g, &sol), Ok(()));
            }
        }
    }

    #[test]
    fn agrees_with_bruteforce_on_random_graphs() {
        for seed in 0..50u64 {
            let n = 6 + (seed % 8) as usize;
            let p = [0.2, 0.35, 0.5][(seed % 3) as usize];
            let g = crate::generate::gnp(n, p, seed);
            let ntd = build_tree_decomposition(&g).to_nice();
            let out = dp_solve(&g, &ntd, &DpConfig { max_bag: 16 }).unwrap();
            let (bk, _) = pms_max_bruteforce(&g).unwrap();
            assert_eq!(
                out.feasible_k.last().copied().unwrap_or(0),
                bk,
                "n={n} p={p} seed={seed}"
            );
        }
    }

    #[test]
    fn decomposition_independence() {
        for seed in 0..20u64 {
            let g = crate::generate::gnp(11, 0.35, seed);
            let a = dp_solve(
                &g,
                &build_tree_decomposition_with(&g, EliminationOrder::MinFill).to_nice(),
                &DpConfig { max_bag: 16 },
            )
            .unwrap();
            let b = dp_solve(
                &g,
                &build_tree_decomposition_with(&g, EliminationOrder::MinDegree).to_nice(),
                &DpConfig { max_bag: 16 },
            )
            .unwrap();
            assert_eq!(a.feasible_k, b.feasible_k, "seed {seed}");
        }
    }

    #[test]
    fn bag_limit_is_enforced() {
        let g = Graph::complete(14);
        let ntd = build_tree_decomposition(&g).to_nice();
        let err = dp_solve(&g, &ntd, &DpConfig::default()).unwrap_err();
        assert!(matches!(err, TwError::BagTooLarge { limit: 12, .. }), "{err:?}");
        assert!(dp_solve(&g, &ntd, &DpConfig { max_bag: 16 }).is_ok());
    }

    /// Spot-check stored keys against their semantic definition on the
    /// subtree graph: a stored key must be realized by two disjoint sets
    /// with the declared bag intersections, below-partner counts and sizes.
    #[test]
    fn sparse_table_soundness_sampled() {
        let g = crate::generate::gnp(8, 0.45, 13);
        let ntd = build_tree_decomposition(&g).to_nice();
        let out = dp_solve(&g, &ntd, &DpConfig { max_bag: 16 }).unwrap();

        // subtree vertex sets
        let mut below: Vec<crate::bitset::VertexSet> =
            vec![crate::bitset::VertexSet::new(); ntd.nodes.len()];
        for t in ntd.post_order() {
            let mut s = crate::bitset::VertexSet::new();
            for &v in &ntd.nodes[t].bag {
                s.insert(v);
            }
            for &c in &ntd.nodes[t].children {
                s = s.union(&below[c]);
            }
            below[t] = s;
        }

        for (t, table) in out.tables.iter().enumerate() {
            let bag = &ntd.nodes[t].bag;
            let gamma: Vec<u32> = below[t].to_vec();
            if gamma.len() > 10 {
                continue;
            }
            for (&(a_mask, b_mask, p_mask, na, nb), _) in table.iter() {
                let realized = realizes(&g, bag, &gamma, a_mask, b_mask, p_mask, na, nb);
                assert!(
                    realized,
                    "stored key unrealizable at node {t}: ({a_mask:b},{b_mask:b},{p_mask:b},{na},{nb})"
                );
            }
        }
    }

    /// Brute-force check of the table-entry semantics.
    #[allow(clippy::too_many_arguments)]
    fn realizes(
        g: &Graph,
        bag: &[u32],
        gamma: &[u32],
        a_mask: u16,
        b_mask: u16,
        p_mask: u16,
        na: u16,
        nb: u16,
    ) -> bool {
        let m = gamma.len();
        let bag_set: crate::bitset::VertexSet = bag.iter().copied().collect();
        for a_bits in 0u32..1 << m {
            if a_bits.count_ones() != na as u32 {
                continue;
            }
            for b_bits in 0u32..1 << m {
                if b_bits.count_ones() != nb as u32 || a_bits & b_bits != 0 {
                    continue;
                }
                let a_set: crate::bitset::VertexSet = (0..m)
                    .filter(|&i| a_bits >> i & 1 == 1)
                    .map(|i| gamma[i])
                    .collect();
                let b_set: crate::bitset::VertexSet = (0..m)
                    .filter(|&i| b_bits >> i & 1 == 1)
                    .map(|i| gamma[i])
                    .collect();
                // bag intersections must match the key
                let mut ok = true;
                for (i, &v) in bag.iter().enumerate() {
                    let want_a = a_mask >> i & 1 == 1;
                    let want_b = b_mask >> i & 1 == 1;
                    if a_set.contains(v) != want_a || b_set.contains(v) != want_b {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                // below-bag side vertices need exactly one cross neighbor
                let below_a = a_set.difference(&bag_set);
                let below_b = b_set.difference(&bag_set);
                if below_a.iter().any(|v| g.degree_in(v, &b_set) != 1)
                    || below_b.iter().any(|v| g.degree_in(v, &a_set) != 1)
                {
                    continue;
                }
                // labeled bag vertices: p counts below-bag partners
                for (i, &v) in bag.iter().enumerate() {
                    let want = (p_mask >> i & 1) as usize;
                    if a_mask >> i & 1 == 1 && g.degree_in(v, &below_b) != want {
                        ok = false;
                        break;
                    }
                    if b_mask >> i & 1 == 1 && g.degree_in(v, &below_a) != want {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return true;
                }
            }
        }
        false
    }
}
