//! Tree decompositions: heuristic construction, validation, conversion to
//! nice form, and the dynamic program on top of them.
//!
//! Decompositions come from an elimination-order heuristic (min-fill by
//! default, min-degree as an independent second route) or from a PACE-format
//! file ([`td`]). Either way they are validated and converted into a nice
//! decomposition (leaf / introduce / forget / join nodes, root bag empty)
//! before the solver in [`dp`] runs.

pub mod dp;
pub mod td;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::solution::PmsSolution;
use crate::SolveStats;
use thiserror::Error;

pub use dp::{dp_solve, DpConfig, DpOutcome};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwError {
    #[error("vertex {0} appears in no bag")]
    VertexUncovered(u32),
    #[error("edge {{{0}, {1}}} is covered by no bag")]
    EdgeUncovered(u32, u32),
    #[error("bags containing vertex {0} do not form a connected subtree")]
    DisconnectedSubtree(u32),
    #[error("decomposition tree is not a tree")]
    NotATree,
    #[error("bag vertex {0} out of range")]
    BagVertexOutOfRange(u32),
    #[error("bag of size {size} exceeds the solver limit {limit}")]
    BagTooLarge { size: usize, limit: usize },
    #[error("nice decomposition malformed at node {node}: {reason}")]
    MalformedNice { node: usize, reason: &'static str },
}

/// A raw (not necessarily nice) tree decomposition: one bag per node, tree
/// edges between node indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<u32>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Checks the three decomposition properties against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), TwError> {
        let n = g.vertex_count();
        let node_count = self.bags.len();
        if node_count == 0 {
            return if n == 0 { Ok(()) } else { Err(TwError::VertexUncovered(0)) };
        }
        for bag in &self.bags {
            for &v in bag {
                if v as usize >= n {
                    return Err(TwError::BagVertexOutOfRange(v));
                }
            }
        }
        // tree shape: connected with exactly node_count - 1 edges
        if self.edges.len() != node_count - 1 {
            return Err(TwError::NotATree);
        }
        let mut adj = vec![Vec::new(); node_count];
        for &(x, y) in &self.edges {
            if x >= node_count || y >= node_count {
                return Err(TwError::NotATree);
            }
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut seen = vec![false; node_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for &u in &adj[t] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(TwError::NotATree);
        }
        // coverage
        let mut covered = VertexSet::new();
        for bag in &self.bags {
            for &v in bag {
                covered.insert(v);
            }
        }
        for v in 0..n as u32 {
            if !covered.contains(v) {
                return Err(TwError::VertexUncovered(v));
            }
        }
        for (u, v) in g.edges() {
            let hit = self
                .bags
                .iter()
                .any(|bag| bag.contains(&u) && bag.contains(&v));
            if !hit {
                return Err(TwError::EdgeUncovered(u, v));
            }
        }
        // connected occupancy per vertex
        for v in 0..n as u32 {
            let members: Vec<usize> = (0..node_count)
                .filter(|&t| self.bags[t].contains(&v))
                .collect();
            let member_set: std::collections::HashSet<usize> = members.iter().copied().collect();
            let mut seen = std::collections::HashSet::new();
            let mut stack = vec![members[0]];
            seen.insert(members[0]);
            while let Some(t) = stack.pop() {
                for &u in &adj[t] {
                    if member_set.contains(&u) && seen.insert(u) {
                        stack.push(u);
                    }
                }
            }
            if seen.len() != members.len() {
                return Err(TwError::DisconnectedSubtree(v));
            }
        }
        Ok(())
    }

    /// Converts to a nice decomposition rooted at an empty bag.
    pub fn to_nice(&self) -> NiceTreeDecomposition {
        let node_count = self.bags.len();
        if node_count == 0 {
            return NiceTreeDecomposition {
                nodes: vec![NiceNode {
                    kind: NodeKind::Leaf,
                    bag: Vec::new(),
                    children: Vec::new(),
                }],
                root: 0,
            };
        }
        // root the raw tree at node 0
        let mut adj = vec![Vec::new(); node_count];
        for &(x, y) in &self.edges {
            adj[x].push(y);
            adj[y].push(x);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        let mut children = vec![Vec::new(); node_count];
        let mut order = Vec::with_capacity(node_count);
        let mut seen = vec![false; node_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            order.push(t);
            for &u in &adj[t] {
                if !seen[u] {
                    seen[u] = true;
                    children[t].push(u);
                    stack.push(u);
                }
            }
        }

        let mut out = NiceBuilder { nodes: Vec::new() };
        // build bottom-up over the rooted traversal order
        let mut built: Vec<Option<usize>> = vec![None; node_count];
        for &t in order.iter().rev() {
            let bag = sorted(&self.bags[t]);
            let top = if children[t].is_empty() {
                out.leaf_chain(&bag)
            } else {
                let mut arms = Vec::new();
                for &c in &children[t] {
                    let child_top = built[c].expect("children built first");
                    let child_bag = sorted(&self.bags[c]);
                    arms.push(out.reshape(child_top, &child_bag, &bag));
                }
                let mut acc = arms[0];
                for &arm in &arms[1..] {
                    acc = out.push(NodeKind::Join, bag.clone(), vec![acc, arm]);
                }
                acc
            };
            built[t] = Some(top);
        }
        let mut top = built[0].expect("root built");
        // forget chain down to the empty root bag
        let root_bag = sorted(&self.bags[0]);
        for (i, &v) in root_bag.iter().enumerate() {
            top = out.push(NodeKind::Forget(v), root_bag[i + 1..].to_vec(), vec![top]);
        }
        NiceTreeDecomposition {
            nodes: out.nodes,
            root: top,
        }
    }
}

fn sorted(bag: &[u32]) -> Vec<u32> {
    let mut b = bag.to_vec();
    b.sort_unstable();
    b.dedup();
    b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(u32),
    Forget(u32),
    Join,
}

#[derive(Clone, Debug)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted bag contents.
    pub bag: Vec<u32>,
    pub children: Vec<usize>,
}

/// A rooted nice tree decomposition: the root bag is empty, leaves are
/// empty, and every interior node introduces one vertex, forgets one vertex,
/// or joins two children with identical bags.
#[derive(Clone, Debug)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

struct NiceBuilder {
    nodes: Vec<NiceNode>,
}

impl NiceBuilder {
    fn push(&mut self, kind: NodeKind, bag: Vec<u32>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
        });
        self.nodes.len() - 1
    }

    /// Leaf followed by introduces of the whole bag, ascending.
    fn leaf_chain(&mut self, bag: &[u32]) -> usize {
        let mut cur = self.push(NodeKind::Leaf, Vec::new(), Vec::new());
        let mut cur_bag = Vec::new();
        for &v in bag {
            cur_bag.push(v);
            cur_bag.sort_unstable();
            cur = self.push(NodeKind::Introduce(v), cur_bag.clone(), vec![cur]);
        }
        cur
    }

    /// Forget the child-only vertices, then introduce the parent-only ones,
    /// turning a subtree topped with `from` into one topped with `to`.
    fn reshape(&mut self, mut cur: usize, from: &[u32], to: &[u32]) -> usize {
        let mut bag = from.to_vec();
        for &v in from {
            if !to.contains(&v) {
                bag.retain(|&u| u != v);
                cur = self.push(NodeKind::Forget(v), bag.clone(), vec![cur]);
            }
        }
        for &v in to {
            if !from.contains(&v) {
                bag.push(v);
                bag.sort_unstable();
                cur = self.push(NodeKind::Introduce(v), bag.clone(), vec![cur]);
            }
        }
        cur
    }
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Post-order traversal (children before parents), iterative.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((t, expanded)) = stack.pop() {
            if expanded {
                out.push(t);
            } else {
                stack.push((t, true));
                for &c in self.nodes[t].children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Checks every structural invariant of nice decompositions plus the
    /// three tree decomposition properties against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), TwError> {
        let root = &self.nodes[self.root];
        if !root.bag.is_empty() {
            return Err(TwError::MalformedNice {
                node: self.root,
                reason: "root bag not empty",
            });
        }
        for (i, node) in self.nodes.iter().enumerate() {
            for w in node.bag.windows(2) {
                if w[0] >= w[1] {
                    return Err(TwError::MalformedNice {
                        node: i,
                        reason: "bag not sorted",
                    });
                }
            }
            for &v in &node.bag {
                if v as usize >= g.vertex_count() {
                    return Err(TwError::BagVertexOutOfRange(v));
                }
            }
            match &node.kind {
                NodeKind::Leaf => {
                    if !node.children.is_empty() || !node.bag.is_empty() {
                        return Err(TwError::MalformedNice {
                            node: i,
                            reason: "leaf must have empty bag and no children",
                        });
                    }
                }
                NodeKind::Introduce(v) => {
                    if node.children.len() != 1 {
                        return Err(TwError::MalformedNice {
                            node: i,
                            reason: "introduce needs one child",
                        });
                    }
                    let child = &self.nodes[node.children[0]];
                    let mut expect = child.bag.clone();
                    expect.push(*v);
                    expect.sort_unstable();
                    if child.bag.contains(v) || node.bag != expect {
                        return Err(TwError::MalformedNice {
                            node: i,
                            reason: "introduce bag mismatch",
                        });
                    }
                }
                NodeKind::Forget(v) => {
                    if node.children.len() != 1 {
                        return Err(TwError::MalformedNice {
                            node: i,
                            reason: "forget needs one child",
                        });
                    }
                    let child = &self.nodes[node.children[0]];
                    let mut expect = child.bag.clone();
                    expect.retain(|u| u != v);
                    if !child.bag.contains(v) || node.bag != expect {
                        return Err(TwError::MalformedNice {
                            node: i,
                            reason: "forget bag mismatch",
                        });
                    }
                }
                NodeKind::Join => {
                    if node.children.len() != 2 {
                        return Err(TwError::MalformedNice {
                            node: i,
                            reason: "join needs two children",
                        });
                    }
                    let (c1, c2) = (node.children[0], node.children[1]);
                    if self.nodes[c1].bag != node.bag || self.nodes[c2].bag != node.bag {
                        return Err(TwError::MalformedNice {
                            node: i,
                            reason: "join bags differ",
                        });
                    }
                }
            }
        }
        // convert to a raw decomposition and reuse the property checks
        let raw = TreeDecomposition {
            bags: self.nodes.iter().map(|n| n.bag.clone()).collect(),
            edges: self
                .nodes
                .iter()
                .enumerate()
                .flat_map(|(i, n)| n.children.iter().map(move |&c| (i, c)))
                .collect(),
        };
        raw.validate(g)
    }
}

/// Elimination heuristics for [`build_tree_decomposition_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationOrder {
    /// Eliminate the vertex whose neighborhood needs the fewest fill edges.
    MinFill,
    /// Eliminate the vertex of smallest current degree.
    MinDegree,
}

/// Min-fill heuristic decomposition (not necessarily of optimal width).
pub fn build_tree_decomposition(g: &Graph) -> TreeDecomposition {
    build_tree_decomposition_with(g, EliminationOrder::MinFill)
}

pub fn build_tree_decomposition_with(g: &Graph, order: EliminationOrder) -> TreeDecomposition {
    let n = g.vertex_count();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![Vec::new()],
            edges: Vec::new(),
        };
    }
    let mut work: Vec<VertexSet> = (0..n as u32).map(|v| *g.neighbor_set(v)).collect();
    let mut live = VertexSet::full(n);
    let mut bags: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut position = vec![usize::MAX; n];

    for step in 0..n {
        let mut best: Option<(usize, u32)> = None;
        for v in live.iter() {
            let nbrs = work[v as usize].intersection(&live);
            let score = match order {
                EliminationOrder::MinDegree => nbrs.len(),
                EliminationOrder::MinFill => {
                    let mut fill = 0usize;
                    let members: Vec<u32> = nbrs.to_vec();
                    for (i, &a) in members.iter().enumerate() {
                        for &b in &members[i + 1..] {
                            if !work[a as usize].contains(b) {
                                fill += 1;
                            }
                        }
                    }
                    fill
                }
            };
            if best.map_or(true, |(s, _)| score < s) {
                best = Some((score, v));
            }
        }
        let (_, v) = best.expect("live vertex exists");
        let nbrs = work[v as usize].intersection(&live);
        let mut bag = nbrs.to_vec();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        position[v as usize] = step;
        // make the remaining neighborhood a clique
        let members: Vec<u32> = nbrs.to_vec();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                work[a as usize].insert(b);
                work[b as usize].insert(a);
            }
        }
        live.remove(v);
    }

    // connect each bag to the bag of its first-eliminated later member
    let order_of = |v: u32| position[v as usize];
    let eliminated_at: Vec<u32> = {
        let mut e = vec![0u32; n];
        for v in 0..n as u32 {
            e[position[v as usize]] = v;
        }
        e
    };
    let mut edges = Vec::new();
    for (i, bag) in bags.iter().enumerate() {
        let me = eliminated_at[i];
        let parent = bag
            .iter()
            .copied()
            .filter(|&v| v != me)
            .map(order_of)
            .min();
        match parent {
            Some(j) => edges.push((i, j)),
            None => {
                if i + 1 < n {
                    edges.push((i, i + 1));
                }
            }
        }
    }
    TreeDecomposition { bags, edges }
}

/// Runs the solver end to end: build (or accept) a nice decomposition, run
/// the DP, extract and verify a maximum witness.
pub fn pms_max_treewidth(
    g: &Graph,
    ntd: Option<&NiceTreeDecomposition>,
    config: &DpConfig,
) -> Result<(usize, PmsSolution, SolveStats), TwError> {
    let built;
    let ntd = match ntd {
        Some(t) => t,
        None => {
            built = build_tree_decomposition(g).to_nice();
            &built
        }
    };
    let outcome = dp_solve(g, ntd, config)?;
    let k_max = outcome.feasible_k.last().copied().unwrap_or(0);
    let solution = if k_max == 0 {
        PmsSolution::empty()
    } else {
        outcome
            .extract(g, ntd, k_max)
            .expect("feasible k has a witness")
    };
    debug_assert_eq!(crate::solution::verify_solution(g, &solution), Ok(()));
    let stats = SolveStats {
        dp_states_stored: outcome.states_stored,
        ..SolveStats::default()
    };
    Ok((k_max, solution, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heuristic_widths_on_fixtures() {
        // trees have treewidth 1; min-fill is exact on chordal graphs
        let t = crate::generate::random_tree(20, 1);
        let td = build_tree_decomposition(&t);
        assert_eq!(td.width(), 1);
        td.validate(&t).unwrap();

        let k4 = Graph::complete(4);
        let td = build_tree_decomposition(&k4);
        assert_eq!(td.width(), 3);
        td.validate(&k4).unwrap();

        // a cycle triangulates to width 2
        let c5 = Graph::cycle(5);
        let td = build_tree_decomposition(&c5);
        assert_eq!(td.width(), 2);
        td.validate(&c5).unwrap();
    }

    #[test]
    fn nice_conversion_preserves_validity_and_width() {
        for (g, seed) in [
            (crate::generate::gnp(12, 0.3, 3), 3),
            (crate::generate::gnp(10, 0.6, 4), 4),
            (Graph::disjoint_union(&[&Graph::complete(3), &Graph::path(4)]), 0),
        ] {
            let td = build_tree_decomposition(&g);
            td.validate(&g).unwrap_or_else(|e| panic!("raw invalid (seed {seed}): {e}"));
            let nice = td.to_nice();
            nice.validate(&g)
                .unwrap_or_else(|e| panic!("nice invalid (seed {seed}): {e}"));
            assert_eq!(nice.width(), td.width());
        }
    }

    #[test]
    fn empty_and_tiny_graphs() {
        let g = Graph::empty(0);
        let nice = build_tree_decomposition(&g).to_nice();
        nice.validate(&g).unwrap();
        let g = Graph::empty(1);
        let nice = build_tree_decomposition(&g).to_nice();
        nice.validate(&g).unwrap();

        let g = Graph::complete(2);
        let nice = build_tree_decomposition(&g).to_nice();
        nice.validate(&g).unwrap();
        assert_eq!(nice.width(), 1);
    }

    #[test]
    fn validate_catches_defects() {
        let g = Graph::complete(3);
        // single bag missing vertex 2
        let td = TreeDecomposition {
            bags: vec![vec![0, 1]],
            edges: vec![],
        };
        assert_eq!(td.validate(&g), Err(TwError::VertexUncovered(2)));
        // covers vertices but not edge {1, 2}
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![0, 2]],
            edges: vec![(0, 1)],
        };
        assert_eq!(td.validate(&g), Err(TwError::EdgeUncovered(1, 2)));
        // disconnected occupancy for vertex 0
        let p3 = Graph::path(3);
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            edges: vec![(0, 1), (1, 2)],
        };
        assert_eq!(td.validate(&p3), Err(TwError::DisconnectedSubtree(0)));
    }

    #[test]
    fn min_degree_also_valid() {
        let g = crate::generate::gnp(14, 0.4, 9);
        let td = build_tree_decomposition_with(&g, EliminationOrder::MinDegree);
        td.validate(&g).unwrap();
        td.to_nice().validate(&g).unwrap();
    }
}
