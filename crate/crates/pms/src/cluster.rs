//! Optimization parameterized by a cluster deletion set X.
//!
//! The solver enumerates valid boundary labelings of X (at most 3^|X|), and
//! for each one all ways to partition its unmatched a- and b-vertices into
//! blocks that must be matched wholly inside single cliques of G−X. A block
//! can land in a clique only if every block vertex has a private partner
//! there; cliques not consumed by blocks may still contribute one internal
//! (a, b) pair. Choosing an optimal combination is a maximum-weight matching
//! on a small auxiliary bipartite graph: block edges weigh n+1 (they must
//! all be saturated), internal-pair edges weigh 1 (each adds one to the
//! solution size).

use crate::assignment::{Assignment, Label};
use crate::graph::Graph;
use crate::matching::{max_weight_matching, BipartiteGraph};
use crate::modulator::{Modulator, ModulatorKind};
use crate::solution::PmsSolution;
use crate::subsets::partitions;

/// Iterator over the valid labelings of X, in ascending order of the base-3
/// counter (digit i is the label of the i-th vertex of X: 0=a, 1=b, 2=d).
pub struct BoundaryAssignments<'g> {
    g: &'g Graph,
    x: Vec<u32>,
    next: u64,
    end: u64,
}

impl<'g> BoundaryAssignments<'g> {
    pub fn new(g: &'g Graph, x: &[u32]) -> BoundaryAssignments<'g> {
        let total = 3u64.pow(x.len() as u32);
        Self::range(g, x, 0, total)
    }

    /// Restriction to a counter subrange, the unit of parallel chunking.
    pub fn range(g: &'g Graph, x: &[u32], lo: u64, hi: u64) -> BoundaryAssignments<'g> {
        assert!(x.len() <= 25, "boundary larger than 25 is impractical");
        BoundaryAssignments {
            g,
            x: x.to_vec(),
            next: lo,
            end: hi.min(3u64.pow(x.len() as u32)),
        }
    }

    fn decode(&self, mut code: u64) -> Assignment {
        let mut f = Assignment::unassigned(self.g.vertex_count());
        for &v in &self.x {
            let label = match code % 3 {
                0 => Label::A,
                1 => Label::B,
                _ => Label::D,
            };
            f.set(v, label);
            code /= 3;
        }
        f
    }
}

impl Iterator for BoundaryAssignments<'_> {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        while self.next < self.end {
            let f = self.decode(self.next);
            self.next += 1;
            if f.is_valid(self.g) {
                return Some(f);
            }
        }
        None
    }
}

/// Boundary vertices labeled `side` with no cross partner inside X.
pub fn unmatched_boundary(g: &Graph, x: &[u32], fx: &Assignment, side: Label) -> Vec<u32> {
    x.iter()
        .copied()
        .filter(|&v| fx.get(v) == Some(side) && !fx.is_matched(g, v))
        .collect()
}

/// Tests whether clique C can perfectly match `block` (a block of unmatched
/// boundary vertices on `side`), returning the partner set S.
///
/// For `side == A` the partners get label b: vertex `u ∈ C` is eligible for
/// `v` when its a-labeled neighborhood is exactly `{v}`. Eligible sets for
/// distinct block vertices are disjoint, and the smallest eligible id is
/// taken per vertex, so S is deterministic. Returned in block order.
pub fn clique_can_match(
    g: &Graph,
    clique: &[u32],
    block: &[u32],
    side: Label,
    fx: &Assignment,
) -> Option<Vec<u32>> {
    let labeled = match side {
        Label::A => fx.a_set(),
        Label::B => fx.b_set(),
        Label::D => panic!("blocks carry side a or b"),
    };
    let mut partners = Vec::with_capacity(block.len());
    for &v in block {
        let u = clique
            .iter()
            .copied()
            .find(|&u| g.has_edge(u, v) && g.degree_in(u, &labeled) == 1)?;
        partners.push(u);
    }
    Some(partners)
}

/// Smallest pair `(u, v)`, `u != v`, of clique vertices where `u` has no
/// b-labeled neighbor and `v` no a-labeled neighbor; such a clique can host
/// one internal matched pair with everything else discarded.
pub fn clique_type3_witness(g: &Graph, clique: &[u32], fx: &Assignment) -> Option<(u32, u32)> {
    let a_set = fx.a_set();
    let b_set = fx.b_set();
    for &u in clique {
        if g.degree_in(u, &b_set) != 0 {
            continue;
        }
        for &v in clique {
            if v != u && g.degree_in(v, &a_set) == 0 {
                return Some((u, v));
            }
        }
    }
    None
}

/// A pair of block partitions for the unmatched boundary sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionPair {
    pub a_blocks: Vec<Vec<u32>>,
    pub b_blocks: Vec<Vec<u32>>,
}

/// Optimal extension size for a fixed boundary labeling and block partition
/// pair, via maximum-weight matching on the auxiliary graph.
///
/// Returns `(0, None)` when some block cannot be saturated; otherwise the
/// constructed total assignment and its size.
pub fn opt_for_partition(
    g: &Graph,
    modulator: &Modulator,
    fx: &Assignment,
    pp: &PartitionPair,
) -> (usize, Option<Assignment>) {
    let n = g.vertex_count();
    let cliques = &modulator.parts;
    let l = cliques.len();
    let r = pp.a_blocks.len();
    let s = pp.b_blocks.len();
    let block_weight = n as u64 + 1;

    let mut edges = Vec::new();
    for (i, block) in pp.a_blocks.iter().enumerate() {
        for (c, clique) in cliques.iter().enumerate() {
            if clique_can_match(g, clique, block, Label::A, fx).is_some() {
                edges.push((i as u32, c as u32, block_weight));
            }
        }
    }
    for (j, block) in pp.b_blocks.iter().enumerate() {
        for (c, clique) in cliques.iter().enumerate() {
            if clique_can_match(g, clique, block, Label::B, fx).is_some() {
                edges.push(((r + j) as u32, c as u32, block_weight));
            }
        }
    }
    for (c, clique) in cliques.iter().enumerate() {
        if clique_type3_witness(g, clique, fx).is_some() {
            edges.push(((r + s + c) as u32, c as u32, 1));
        }
    }

    let bg = BipartiteGraph::new(r + s + l, l, edges).expect("auxiliary graph is well formed");
    let matching = max_weight_matching(&bg);

    // An extension leaving a block unmatched has size 0, so only matchings
    // saturating every block vertex are of interest.
    let mut saturated = vec![false; r + s];
    for &(left, _) in &matching.pairs {
        if (left as usize) < r + s {
            saturated[left as usize] = true;
        }
    }
    if saturated.iter().any(|&sat| !sat) {
        return (0, None);
    }

    let mut f = fx.clone();
    for clique in cliques {
        for &v in clique {
            f.set(v, Label::D);
        }
    }
    for &(left, c) in &matching.pairs {
        let clique = &cliques[c as usize];
        let left = left as usize;
        if left < r {
            let partners = clique_can_match(g, clique, &pp.a_blocks[left], Label::A, fx)
                .expect("edge implies matchability");
            for u in partners {
                f.set(u, Label::B);
            }
        } else if left < r + s {
            let partners = clique_can_match(g, clique, &pp.b_blocks[left - r], Label::B, fx)
                .expect("edge implies matchability");
            for u in partners {
                f.set(u, Label::A);
            }
        } else {
            let (u, v) = clique_type3_witness(g, clique, fx).expect("edge implies witness");
            f.set(u, Label::A);
            f.set(v, Label::B);
        }
    }

    debug_assert!(f.is_valid(g), "constructed extension must be valid");
    if !f.is_feasible_solution(g) {
        return (0, None);
    }
    (f.a_set().len(), Some(f))
}

fn solution_is_better(size: usize, sol: &PmsSolution, best: &Option<(usize, PmsSolution)>) -> bool {
    match best {
        None => true,
        Some((bs, bsol)) => {
            size > *bs
                || (size == *bs
                    && (&sol.a, &sol.b, &sol.matching) < (&bsol.a, &bsol.b, &bsol.matching))
        }
    }
}

fn best_for_fx(g: &Graph, modulator: &Modulator, fx: &Assignment) -> Option<(usize, PmsSolution)> {
    let a_x = unmatched_boundary(g, &modulator.x, fx, Label::A);
    let b_x = unmatched_boundary(g, &modulator.x, fx, Label::B);
    let mut best: Option<(usize, PmsSolution)> = None;
    for a_blocks in partitions(&a_x) {
        for b_blocks in partitions(&b_x) {
            let pp = PartitionPair {
                a_blocks: a_blocks.clone(),
                b_blocks,
            };
            let (size, f) = opt_for_partition(g, modulator, fx, &pp);
            if let Some(f) = f {
                let sol = f.to_solution(g);
                if solution_is_better(size, &sol, &best) {
                    best = Some((size, sol));
                }
            }
        }
    }
    best
}

/// Maximum over all boundary labelings and block partitions. Workers share
/// the labeling counter space in chunks; the merge prefers larger size, then
/// the lexicographically smallest solution, so the outcome is independent of
/// the thread count.
pub fn pms_max_cluster_threaded(
    g: &Graph,
    modulator: &Modulator,
    threads: usize,
) -> (usize, PmsSolution) {
    assert_eq!(modulator.kind, ModulatorKind::Cluster);
    let total = 3u64.pow(modulator.x.len() as u32);
    let workers = if threads == 0 {
        std::thread::available_parallelism().map_or(1, |p| p.get())
    } else {
        threads
    };

    let best = if workers <= 1 || total < 64 {
        let mut best: Option<(usize, PmsSolution)> = None;
        for fx in BoundaryAssignments::new(g, &modulator.x) {
            merge_candidate(&mut best, best_for_fx(g, modulator, &fx));
        }
        best
    } else {
        let chunk = total.div_ceil(workers as u64);
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..workers as u64 {
                let (lo, hi) = (w * chunk, ((w + 1) * chunk).min(total));
                handles.push(scope.spawn(move || {
                    let mut local: Option<(usize, PmsSolution)> = None;
                    for fx in BoundaryAssignments::range(g, &modulator.x, lo, hi) {
                        merge_candidate(&mut local, best_for_fx(g, modulator, &fx));
                    }
                    local
                }));
            }
            let mut best: Option<(usize, PmsSolution)> = None;
            for h in handles {
                merge_candidate(&mut best, h.join().expect("cluster worker panicked"));
            }
            best
        })
    };

    match best {
        Some((k, sol)) if k > 0 => (k, sol),
        _ => (0, PmsSolution::empty()),
    }
}

fn merge_candidate(best: &mut Option<(usize, PmsSolution)>, cand: Option<(usize, PmsSolution)>) {
    if let Some((size, sol)) = cand {
        if solution_is_better(size, &sol, best) {
            *best = Some((size, sol));
        }
    }
}

pub fn pms_max_cluster(g: &Graph, modulator: &Modulator) -> (usize, PmsSolution) {
    pms_max_cluster_threaded(g, modulator, 1)
}
