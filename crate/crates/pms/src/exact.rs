//! Exact exponential optimization.
//!
//! Two regimes, crossed over at an entropy-balanced fraction of n: for small
//! k, scan k-subsets as candidate A-sides and complete them greedily; for k
//! near n/2, scan 2k-subsets and ask whether the induced subgraph splits
//! into a perfect matching cut. The crossover epsilon solves
//! `H(e) = H(1-2e) + 2e*log2(alpha)`, where alpha is the assumed exponential
//! base of the matching-cut subroutine.
//!
//! Subset scans run in colex rank order. Workers process rank chunks and the
//! merge keeps the smallest-rank witness, so results are identical for every
//! thread count.

use crate::graph::Graph;
use crate::oracle::complete_subset;
use crate::solution::PmsSolution;
use crate::subsets::{binomial, ColexSubsets};
use crate::SolveStats;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ExactError {
    #[error("binary entropy argument {0} outside [0, 1]")]
    EntropyDomain(f64),
    #[error("alpha must be >= 1, got {0}")]
    BadAlpha(f64),
    #[error("crossover equation has no root in [1/3, 1/2] for alpha = {0}")]
    NoRoot(f64),
    #[error("epsilon {0} invalid: must lie in (0, 1/2] and be >= 1/(2+alpha)")]
    BadEpsilon(f64),
    #[error("exact solver supports at most 64 vertices, got {0}")]
    Capacity(usize),
}

/// Binary entropy `H(x) = -x log2 x - (1-x) log2 (1-x)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64, ExactError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(ExactError::EntropyDomain(x));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.log2() - (1.0 - x) * (1.0 - x).log2())
}

/// Solves `H(e) - H(1-2e) - 2e*log2(alpha) = 0` for `e` in `[1/3, 1/2]` by
/// bisection to absolute tolerance 1e-9. At `alpha = 1` the root is exactly
/// 1/3 (the equation degenerates to `H(e) = H(1-2e)`).
pub fn solve_crossover_epsilon(alpha: f64) -> Result<f64, ExactError> {
    if !(alpha >= 1.0) {
        return Err(ExactError::BadAlpha(alpha));
    }
    let log_a = alpha.log2();
    let g = |e: f64| -> f64 {
        let h_e = binary_entropy(e).expect("e within domain");
        let h_r = binary_entropy(1.0 - 2.0 * e).expect("1-2e within domain");
        h_e - h_r - 2.0 * e * log_a
    };
    let (mut lo, mut hi) = (1.0 / 3.0, 0.5);
    let (glo, ghi) = (g(lo), g(hi));
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo.signum() == ghi.signum() {
        return Err(ExactError::NoRoot(alpha));
    }
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if g(mid).signum() == glo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Parameters of the exact solver.
#[derive(Clone, Debug)]
pub struct ExactConfig {
    /// Assumed exponential base of the perfect-matching-cut subroutine.
    pub alpha: f64,
    /// Crossover fraction: k <= floor(epsilon * n) uses the subset-completion
    /// regime, larger k the matching-cut regime.
    pub epsilon: f64,
    /// Worker count for the subset scans; 0 means all available cores.
    pub threads: usize,
}

impl ExactConfig {
    /// Base reported for the matching-cut algorithm this solver stands in
    /// for; with it the crossover lands near 0.4072.
    pub const DEFAULT_ALPHA: f64 = 1.2721;

    pub fn new() -> ExactConfig {
        Self::with_alpha(Self::DEFAULT_ALPHA).expect("default alpha is valid")
    }

    /// Derives epsilon from the crossover equation for the given alpha.
    pub fn with_alpha(alpha: f64) -> Result<ExactConfig, ExactError> {
        let epsilon = solve_crossover_epsilon(alpha)?;
        Ok(ExactConfig {
            alpha,
            epsilon,
            threads: 1,
        })
    }

    /// Overrides epsilon. It must lie in (0, 1/2] and respect
    /// `epsilon >= 1/(2+alpha)`, the monotonicity condition under which the
    /// large-k sum is decreasing.
    pub fn with_epsilon(mut self, epsilon: f64) -> Result<ExactConfig, ExactError> {
        if !(epsilon > 0.0 && epsilon <= 0.5) || epsilon < 1.0 / (2.0 + self.alpha) {
            return Err(ExactError::BadEpsilon(epsilon));
        }
        self.epsilon = epsilon;
        Ok(self)
    }

    pub fn with_threads(mut self, threads: usize) -> ExactConfig {
        self.threads = threads;
        self
    }

    fn worker_count(&self) -> usize {
        if self.threads == 0 {
            std::thread::available_parallelism().map_or(1, |p| p.get())
        } else {
            self.threads
        }
    }
}

impl Default for ExactConfig {
    fn default() -> Self {
        Self::new()
    }
}

// ---------------------------------------------------------------------------
// Perfect matching cut by branching with unit propagation
// ---------------------------------------------------------------------------

/// Searches for a perfect matching cut: a bipartition of all vertices, both
/// sides nonempty, where every vertex has exactly one cross neighbor.
///
/// Branches on the side of the lowest unassigned vertex (vertex 0 pinned to
/// side A) and propagates: a vertex with its cross partner fixed pulls all
/// its undecided neighbors onto its own side; a vertex with no partner yet
/// and a single undecided neighbor claims it.
pub fn perfect_matching_cut(g: &Graph) -> Result<Option<(Vec<u32>, Vec<u32>)>, ExactError> {
    let n = g.vertex_count();
    let adj = g
        .u64_neighbor_masks()
        .ok_or(ExactError::Capacity(n))?;
    Ok(pmc_masks(&adj, n).map(|b_mask| {
        let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        (bits(full ^ b_mask), bits(b_mask))
    }))
}

fn bits(mut m: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}

/// Returns the B-side mask of some perfect matching cut, or None.
pub(crate) fn pmc_masks(adj: &[u64], n: usize) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };

    #[derive(Clone, Copy)]
    struct State {
        a: u64,
        b: u64,
    }

    // Assigns `v` to a side and propagates to fixpoint. False on conflict.
    fn assign(adj: &[u64], st: &mut State, v: u32, to_a: bool) -> bool {
        let mut queue = vec![(v, to_a)];
        while let Some((v, to_a)) = queue.pop() {
            let bit = 1u64 << v;
            let (own, opp) = if to_a { (st.a, st.b) } else { (st.b, st.a) };
            if own & bit != 0 {
                continue;
            }
            if opp & bit != 0 {
                return false;
            }
            if to_a {
                st.a |= bit;
            } else {
                st.b |= bit;
            }
            // recheck v and all its neighbors
            let mut dirty = adj[v as usize] | bit;
            while dirty != 0 {
                let w = dirty.trailing_zeros();
                dirty &= dirty - 1;
                let wb = 1u64 << w;
                let assigned = st.a | st.b;
                if assigned & wb == 0 {
                    continue;
                }
                let w_in_a = st.a & wb != 0;
                let opp_mask = if w_in_a { st.b } else { st.a };
                let cross = (adj[w as usize] & opp_mask).count_ones();
                let undecided = adj[w as usize] & !assigned;
                match cross {
                    0 => match undecided.count_ones() {
                        0 => return false,
                        1 => queue.push((undecided.trailing_zeros(), !w_in_a)),
                        _ => {}
                    },
                    1 => {
                        let mut u = undecided;
                        while u != 0 {
                            let x = u.trailing_zeros();
                            u &= u - 1;
                            queue.push((x, w_in_a));
                        }
                    }
                    _ => return false,
                }
            }
        }
        true
    }

    fn search(adj: &[u64], st: State, full: u64) -> Option<u64> {
        let assigned = st.a | st.b;
        if assigned == full {
            let all_matched = (0..adj.len()).all(|v| {
                let opp = if st.a >> v & 1 == 1 { st.b } else { st.a };
                (adj[v] & opp).count_ones() == 1
            });
            return if all_matched { Some(st.b) } else { None };
        }
        let v = (!assigned & full).trailing_zeros();
        for to_a in [true, false] {
            let mut next = st;
            if assign(adj, &mut next, v, to_a) {
                if let Some(b) = search(adj, next, full) {
                    return Some(b);
                }
            }
        }
        None
    }

    let mut st = State { a: 0, b: 0 };
    if !assign(adj, &mut st, 0, true) {
        return None;
    }
    search(adj, st, full)
}

// ---------------------------------------------------------------------------
// The crossover solver
// ---------------------------------------------------------------------------

/// Outcome of an exact run: the optimum, a verified witness, and counters.
#[derive(Clone, Debug)]
pub struct ExactOutcome {
    pub k_max: usize,
    pub solution: PmsSolution,
    pub stats: SolveStats,
}

/// Decides size `k` only, using the regime the crossover assigns to `k`.
/// Returns the witness and the number of subsets a serial scan would have
/// inspected (rank of the first hit plus one, or the full count on a miss).
pub fn pms_decide_exact(
    g: &Graph,
    k: usize,
    cfg: &ExactConfig,
) -> Result<(Option<PmsSolution>, u128), ExactError> {
    let n = g.vertex_count();
    let adj = g.u64_neighbor_masks().ok_or(ExactError::Capacity(n))?;
    if k == 0 {
        return Ok((Some(PmsSolution::empty()), 0));
    }
    if 2 * k > n {
        return Ok((None, 0));
    }
    let small_k_limit = (cfg.epsilon * n as f64).floor() as usize;
    Ok(decide_at_k(&adj, n, k, small_k_limit, cfg.worker_count()))
}

/// Optimization: descending scan from n/2; the first feasible k is the
/// maximum by downward closure.
pub fn pms_max_exact(g: &Graph, cfg: &ExactConfig) -> Result<ExactOutcome, ExactError> {
    let n = g.vertex_count();
    let adj = g.u64_neighbor_masks().ok_or(ExactError::Capacity(n))?;
    let small_k_limit = (cfg.epsilon * n as f64).floor() as usize;
    let workers = cfg.worker_count();
    let mut inspected: u128 = 0;
    for k in (1..=n / 2).rev() {
        let (hit, count) = decide_at_k(&adj, n, k, small_k_limit, workers);
        inspected += count;
        if let Some(solution) = hit {
            return Ok(ExactOutcome {
                k_max: k,
                solution,
                stats: SolveStats {
                    subsets_enumerated: inspected.min(u64::MAX as u128) as u64,
                    ..SolveStats::default()
                },
            });
        }
    }
    Ok(ExactOutcome {
        k_max: 0,
        solution: PmsSolution::empty(),
        stats: SolveStats {
            subsets_enumerated: inspected.min(u64::MAX as u128) as u64,
            ..SolveStats::default()
        },
    })
}

fn decide_at_k(
    adj: &[u64],
    n: usize,
    k: usize,
    small_k_limit: usize,
    workers: usize,
) -> (Option<PmsSolution>, u128) {
    if k <= small_k_limit {
        scan_subsets(n as u32, k as u32, workers, |a_mask| {
            complete_subset(adj, n, a_mask)
        })
    } else {
        scan_subsets(n as u32, 2 * k as u32, workers, |s_mask| {
            pmc_on_induced(adj, s_mask)
        })
    }
}

/// Runs the matching-cut search on the subgraph induced by `s_mask` and
/// lifts a witness back to original vertex ids.
fn pmc_on_induced(adj: &[u64], s_mask: u64) -> Option<PmsSolution> {
    let vs = bits(s_mask);
    let m = vs.len();
    let mut sub = vec![0u64; m];
    for (i, &vi) in vs.iter().enumerate() {
        let nbrs = adj[vi as usize] & s_mask;
        for (j, &vj) in vs.iter().enumerate() {
            if nbrs >> vj & 1 == 1 {
                sub[i] |= 1 << j;
            }
        }
    }
    let b_local = pmc_masks(&sub, m)?;
    let mut b_global = 0u64;
    for (i, &vi) in vs.iter().enumerate() {
        if b_local >> i & 1 == 1 {
            b_global |= 1 << vi;
        }
    }
    let mut pairs = Vec::with_capacity(m / 2);
    let mut a_rest = s_mask ^ b_global;
    while a_rest != 0 {
        let a = a_rest.trailing_zeros();
        a_rest &= a_rest - 1;
        let partner = adj[a as usize] & b_global;
        debug_assert_eq!(partner.count_ones(), 1);
        pairs.push((a, partner.trailing_zeros()));
    }
    Some(PmsSolution::from_pairs(&pairs))
}

/// Scans all `size`-subsets of `0..n` in colex rank order, returning the
/// smallest-rank subset accepted by `test` plus the canonical inspection
/// count (rank + 1 on a hit, the full binomial on a miss). With several
/// workers the rank range is chunked; a shared best-rank bound lets workers
/// skip chunks that can no longer win, and the merge by minimum rank makes
/// the outcome independent of the worker count.
fn scan_subsets<F>(n: u32, size: u32, workers: usize, test: F) -> (Option<PmsSolution>, u128)
where
    F: Fn(u64) -> Option<PmsSolution> + Sync,
{
    let total = binomial(n as u64, size as u64);
    let serial_threshold = 4096u128;
    if workers <= 1 || total <= serial_threshold {
        for (off, mask) in ColexSubsets::all(n, size).enumerate() {
            if let Some(sol) = test(mask) {
                return (Some(sol), off as u128 + 1);
            }
        }
        return (None, total);
    }

    let chunk_size = (total / (workers as u128 * 8) + 1).max(1024);
    let chunk_count = total.div_ceil(chunk_size) as usize;
    let next_chunk = AtomicUsize::new(0);
    let best_rank = AtomicU64::new(u64::MAX);

    let hits: Vec<(u64, PmsSolution)> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for _ in 0..workers {
            handles.push(scope.spawn(|| {
                let mut local: Option<(u64, PmsSolution)> = None;
                loop {
                    let c = next_chunk.fetch_add(1, Ordering::Relaxed);
                    if c >= chunk_count {
                        break;
                    }
                    let lo = c as u128 * chunk_size;
                    if lo >= best_rank.load(Ordering::Relaxed) as u128 {
                        break;
                    }
                    let hi = (lo + chunk_size).min(total);
                    for (off, mask) in ColexSubsets::range(n, size, lo, hi).enumerate() {
                        let rank = lo as u64 + off as u64;
                        if off % 1024 == 0 && rank >= best_rank.load(Ordering::Relaxed) {
                            break;
                        }
                        if let Some(sol) = test(mask) {
                            best_rank.fetch_min(rank, Ordering::Relaxed);
                            match &local {
                                Some((r, _)) if *r <= rank => {}
                                _ => local = Some((rank, sol)),
                            }
                            break;
                        }
                    }
                }
                local
            }));
        }
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });

    match hits.into_iter().min_by_key(|(r, _)| *r) {
        Some((rank, sol)) => (Some(sol), rank as u128 + 1),
        None => (None, total),
    }
}

/// The crossover work bound: `sum_{k<=floor(eps n)} C(n,k) +
/// sum_{k>floor(eps n), k<=n/2} C(n,2k)`. Instrumented counters must never
/// exceed it.
pub fn subset_work_bound(n: usize, epsilon: f64) -> u128 {
    let limit = (epsilon * n as f64).floor() as usize;
    let mut bound: u128 = 0;
    for k in 0..=limit.min(n / 2) {
        bound += binomial(n as u64, k as u64);
    }
    for k in limit + 1..=n / 2 {
        bound += binomial(n as u64, 2 * k as u64);
    }
    bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{perfect_matching_cut_bruteforce, pms_max_bruteforce};
    use crate::solution::verify_solution;

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // published constants for the default alpha
        let h = binary_entropy(0.4072).unwrap();
        assert!((h - 0.97499).abs() < 1e-4, "H(0.4072) = {h}");
        assert!((2f64.powf(h) - 1.96565).abs() < 1e-4);
        assert_eq!(
            binary_entropy(1.5),
            Err(ExactError::EntropyDomain(1.5))
        );
        assert_eq!(
            binary_entropy(-0.1),
            Err(ExactError::EntropyDomain(-0.1))
        );
    }

    #[test]
    fn crossover_examples() {
        let eps = solve_crossover_epsilon(1.2721).unwrap();
        assert!((eps - 0.4072).abs() < 5e-4, "eps = {eps}");
        assert_eq!(solve_crossover_epsilon(1.0).unwrap(), 1.0 / 3.0);
        // bisection self-check: residual of the defining equation
        let eps2 = solve_crossover_epsilon(2.0).unwrap();
        let resid = binary_entropy(eps2).unwrap()
            - binary_entropy(1.0 - 2.0 * eps2).unwrap()
            - 2.0 * eps2 * 2f64.log2();
        assert!(resid.abs() < 1e-8, "residual {resid}");
        assert!(solve_crossover_epsilon(0.5).is_err());
        assert!(solve_crossover_epsilon(4.0).is_err());
    }

    #[test]
    fn config_validation() {
        let cfg = ExactConfig::new();
        assert!((cfg.epsilon - 0.4072).abs() < 5e-4);
        assert!(cfg.epsilon >= 1.0 / (2.0 + cfg.alpha));
        assert!(ExactConfig::new().with_epsilon(0.2).is_err());
        assert!(ExactConfig::new().with_epsilon(0.45).is_ok());
    }

    #[test]
    fn pmc_branching_examples() {
        let g = Graph::cycle(4);
        let (a, b) = perfect_matching_cut(&g).unwrap().unwrap();
        assert_eq!(a.len() + b.len(), 4);
        assert_eq!(perfect_matching_cut(&Graph::complete(3)).unwrap(), None);
        // two disjoint K2s: both edges cross
        let g = Graph::disjoint_union(&[&Graph::complete(2), &Graph::complete(2)]);
        assert!(perfect_matching_cut(&g).unwrap().is_some());
        assert_eq!(perfect_matching_cut(&Graph::empty(1)).unwrap(), None);
    }

    #[test]
    fn pmc_branching_agrees_with_bruteforce() {
        for seed in 0..60u64 {
            let n = 3 + (seed % 8) as usize; // 3..=10
            let p = [0.2, 0.4, 0.6][(seed % 3) as usize];
            let g = crate::generate::gnp(n, p, seed);
            let brute = perfect_matching_cut_bruteforce(&g).unwrap().is_some();
            let fast = perfect_matching_cut(&g).unwrap();
            assert_eq!(fast.is_some(), brute, "n={n} seed={seed}");
            if let Some((a, b)) = fast {
                // witness really is a perfect matching cut
                assert_eq!(a.len() + b.len(), n);
                let bset: crate::bitset::VertexSet = b.iter().copied().collect();
                let aset: crate::bitset::VertexSet = a.iter().copied().collect();
                for &v in &a {
                    assert_eq!(g.degree_in(v, &bset), 1);
                }
                for &v in &b {
                    assert_eq!(g.degree_in(v, &aset), 1);
                }
            }
        }
    }

    #[test]
    fn exact_examples() {
        let cfg = ExactConfig::new();
        let out = pms_max_exact(&Graph::complete(2), &cfg).unwrap();
        assert_eq!(out.k_max, 1);
        assert_eq!((out.solution.a.clone(), out.solution.b.clone()), (vec![0], vec![1]));
        assert_eq!(pms_max_exact(&Graph::cycle(4), &cfg).unwrap().k_max, 2);

        let g = crate::generate::gnp(12, 0.5, 7);
        let out = pms_max_exact(&g, &cfg).unwrap();
        let (brute_k, _) = pms_max_bruteforce(&g).unwrap();
        assert_eq!(out.k_max, brute_k);
        assert_eq!(verify_solution(&g, &out.solution), Ok(()));
    }

    #[test]
    fn exact_matches_bruteforce_and_respects_bound() {
        let cfg = ExactConfig::new();
        for seed in 0..40u64 {
            let n = 4 + (seed % 9) as usize; // 4..=12
            let p = [0.25, 0.5, 0.75][(seed % 3) as usize];
            let g = crate::generate::gnp(n, p, seed);
            let out = pms_max_exact(&g, &cfg).unwrap();
            let (bk, _) = pms_max_bruteforce(&g).unwrap();
            assert_eq!(out.k_max, bk, "n={n} seed={seed}");
            assert_eq!(verify_solution(&g, &out.solution), Ok(()));
            let bound = subset_work_bound(n, cfg.epsilon);
            assert!(
                (out.stats.subsets_enumerated as u128) <= bound,
                "counter {} exceeds bound {bound}",
                out.stats.subsets_enumerated
            );
        }
    }

    #[test]
    fn parallel_scan_is_deterministic() {
        let g = crate::generate::gnp(14, 0.5, 11);
        let serial = pms_max_exact(&g, &ExactConfig::new().with_threads(1)).unwrap();
        let parallel = pms_max_exact(&g, &ExactConfig::new().with_threads(4)).unwrap();
        assert_eq!(serial.k_max, parallel.k_max);
        assert_eq!(serial.solution, parallel.solution);
        assert_eq!(
            serial.stats.subsets_enumerated,
            parallel.stats.subsets_enumerated
        );
    }

    #[test]
    fn decide_mode() {
        let cfg = ExactConfig::new();
        let g = Graph::complete(2);
        assert!(pms_decide_exact(&g, 1, &cfg).unwrap().0.is_some());
        assert!(pms_decide_exact(&g, 2, &cfg).unwrap().0.is_none());
        assert!(pms_decide_exact(&g, 0, &cfg).unwrap().0.is_some());
    }
}
