//! Brute-force reference solvers.
//!
//! These are the ground truth for every other solver in the crate and for
//! the reduction equivalence tests. They enumerate subsets in
//! colexicographic order with no pruning beyond trivial degree checks, so
//! their outputs are deterministic and their logic is auditable at a glance.
//! They are not performance artifacts; each enforces a small-instance bound.

use crate::graph::Graph;
use crate::solution::PmsSolution;
use crate::subsets::ColexSubsets;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for brute force: n = {n}, bound = {bound}")]
    Capacity { n: usize, bound: usize },
}

fn masks_for(g: &Graph, bound: usize) -> Result<Vec<u64>, OracleError> {
    if g.vertex_count() > bound {
        return Err(OracleError::Capacity {
            n: g.vertex_count(),
            bound,
        });
    }
    Ok(g.u64_neighbor_masks().expect("bound <= 64"))
}

fn mask_to_vec(mut m: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}

/// Decides whether a pair of perfectly matched sets of size exactly `k`
/// exists, scanning every k-subset `A` in colex order.
///
/// For each `A`, `C(A)` is the set of outside vertices with exactly one
/// neighbor in `A`; if every `A`-vertex has a neighbor in `C(A)`, picking the
/// smallest such neighbor per vertex yields a valid `B` (members of `C(A)`
/// have exactly one `A`-neighbor, so distinct vertices pick distinct
/// partners). `k = 0` is trivially feasible with the empty pair.
pub fn pms_decide_bruteforce(g: &Graph, k: usize) -> Result<Option<PmsSolution>, OracleError> {
    let n = g.vertex_count();
    let adj = masks_for(g, 64)?;
    if k == 0 {
        return Ok(Some(PmsSolution::empty()));
    }
    if 2 * k > n {
        return Ok(None);
    }
    for a_mask in ColexSubsets::all(n as u32, k as u32) {
        if let Some(sol) = complete_subset(&adj, n, a_mask) {
            return Ok(Some(sol));
        }
    }
    Ok(None)
}

/// Tries to extend the candidate side `A` (given as a mask) to a full
/// solution; shared with the exact solver's small-k regime.
pub(crate) fn complete_subset(adj: &[u64], n: usize, a_mask: u64) -> Option<PmsSolution> {
    let mut c_mask = 0u64;
    for v in 0..n {
        if a_mask >> v & 1 == 0 && (adj[v] & a_mask).count_ones() == 1 {
            c_mask |= 1 << v;
        }
    }
    let mut pairs = Vec::with_capacity(a_mask.count_ones() as usize);
    let mut rest = a_mask;
    while rest != 0 {
        let a = rest.trailing_zeros();
        rest &= rest - 1;
        let options = adj[a as usize] & c_mask;
        if options == 0 {
            return None;
        }
        pairs.push((a, options.trailing_zeros()));
    }
    Some(PmsSolution::from_pairs(&pairs))
}

/// Largest feasible size, by descending scan from `n/2` (valid because the
/// property is downward closed: dropping a matched pair keeps it).
pub fn pms_max_bruteforce(g: &Graph) -> Result<(usize, PmsSolution), OracleError> {
    let n = g.vertex_count();
    for k in (1..=n / 2).rev() {
        if let Some(sol) = pms_decide_bruteforce(g, k)? {
            return Ok((k, sol));
        }
    }
    Ok((0, PmsSolution::empty()))
}

/// Searches for a bipartition (A, B) of all vertices, both sides nonempty,
/// in which every vertex has exactly one cross neighbor. Enumerates the
/// 2^(n-1) bipartitions with vertex 0 pinned to A.
pub fn perfect_matching_cut_bruteforce(
    g: &Graph,
) -> Result<Option<(Vec<u32>, Vec<u32>)>, OracleError> {
    let n = g.vertex_count();
    let adj = masks_for(g, 63)?;
    if n < 2 {
        return Ok(None);
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    for raw in 1u64..1 << (n - 1) {
        let b_mask = raw << 1;
        let a_mask = full ^ b_mask;
        let ok = (0..n).all(|v| {
            let opposite = if a_mask >> v & 1 == 1 { b_mask } else { a_mask };
            (adj[v] & opposite).count_ones() == 1
        });
        if ok {
            return Ok(Some((mask_to_vec(a_mask), mask_to_vec(b_mask))));
        }
    }
    Ok(None)
}

/// Maximum size of an irredundant set: every member `v` has a private
/// closed neighbor `p` with `N[p] ∩ I = {v}`.
pub fn irredundant_set_max(g: &Graph) -> Result<usize, OracleError> {
    let n = g.vertex_count();
    let adj = masks_for(g, 16)?;
    let closed: Vec<u64> = (0..n).map(|v| adj[v] | 1 << v).collect();
    let mut best = 0usize;
    for set in 0u64..1 << n {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut members = set;
        let mut ok = true;
        while members != 0 {
            let v = members.trailing_zeros() as usize;
            members &= members - 1;
            let mut cands = closed[v];
            let mut private = false;
            while cands != 0 {
                let p = cands.trailing_zeros() as usize;
                cands &= cands - 1;
                if closed[p] & set == 1 << v {
                    private = true;
                    break;
                }
            }
            if !private {
                ok = false;
                break;
            }
        }
        if ok {
            best = size;
        }
    }
    Ok(best)
}

/// Exact maximum clique size by branch and bound.
pub fn max_clique(g: &Graph) -> Result<usize, OracleError> {
    Ok(max_clique_vertices(g)?.len())
}

/// Exact maximum independent set size.
pub fn max_independent_set(g: &Graph) -> Result<usize, OracleError> {
    Ok(max_independent_set_vertices(g)?.len())
}

/// A maximum clique itself (deterministic: branches in ascending id order).
pub fn max_clique_vertices(g: &Graph) -> Result<Vec<u32>, OracleError> {
    let n = g.vertex_count();
    let adj = masks_for(g, 20)?;
    let mut best: u64 = 0;
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    fn grow(adj: &[u64], current: u64, cands: u64, best: &mut u64) {
        if current.count_ones() + cands.count_ones() <= best.count_ones() {
            return;
        }
        if cands == 0 {
            if current.count_ones() > best.count_ones() {
                *best = current;
            }
            return;
        }
        let v = cands.trailing_zeros() as usize;
        grow(adj, current | 1 << v, cands & adj[v], best);
        grow(adj, current, cands & !(1 << v), best);
    }
    grow(&adj, 0, full, &mut best);
    Ok(mask_to_vec(best))
}

/// A maximum independent set itself (clique of the complement).
pub fn max_independent_set_vertices(g: &Graph) -> Result<Vec<u32>, OracleError> {
    max_clique_vertices(&g.complement())
}
