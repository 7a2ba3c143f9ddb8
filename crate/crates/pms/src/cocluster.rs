//! Optimization parameterized by a co-cluster deletion set X.
//!
//! G−X is complete multipartite, so any two remainder vertices from
//! different parts are adjacent. That forces a sharp case split per boundary
//! labeling: when unmatched boundary vertices exist on both sides, all
//! remainder solution vertices must share a single part (otherwise two of
//! them would be adjacent across sides), and matching them to the boundary
//! is a bipartite matching that must saturate it. When one side has no
//! unmatched boundary vertices, at most one (or, if both are empty, two)
//! remainder vertices can take that side's label, so they can be guessed
//! outright and their partners picked greedily.

use crate::assignment::{Assignment, Label};
use crate::cluster::{unmatched_boundary, BoundaryAssignments};
use crate::graph::Graph;
use crate::matching::{max_cardinality_matching, BipartiteGraph};
use crate::modulator::{Modulator, ModulatorKind};
use crate::solution::PmsSolution;

/// Case 1: both boundary sides have unmatched vertices. For each maximal
/// independent set I of G−X, match I-vertices against the unmatched
/// boundary (a vertex can serve `v` when its labeled neighborhood on `v`'s
/// side is exactly `{v}`); feasible iff some I saturates the whole boundary.
pub fn opt_case_both_nonempty(
    g: &Graph,
    modulator: &Modulator,
    fx: &Assignment,
) -> (usize, Option<Assignment>) {
    let a_x = unmatched_boundary(g, &modulator.x, fx, Label::A);
    let b_x = unmatched_boundary(g, &modulator.x, fx, Label::B);
    debug_assert!(!a_x.is_empty() && !b_x.is_empty());
    let a_set = fx.a_set();
    let b_set = fx.b_set();

    let boundary: Vec<u32> = a_x.iter().chain(b_x.iter()).copied().collect();
    let mut best: Option<(usize, Assignment)> = None;

    for part in &modulator.parts {
        let mut edges = Vec::new();
        for (li, &u) in part.iter().enumerate() {
            for (ri, &v) in boundary.iter().enumerate() {
                let eligible = if ri < a_x.len() {
                    g.has_edge(u, v) && g.degree_in(u, &a_set) == 1
                } else {
                    g.has_edge(u, v) && g.degree_in(u, &b_set) == 1
                };
                if eligible {
                    edges.push((li as u32, ri as u32, 1));
                }
            }
        }
        let bg = BipartiteGraph::new(part.len(), boundary.len(), edges)
            .expect("matching graph is well formed");
        let m = max_cardinality_matching(&bg);
        if m.cardinality() < boundary.len() {
            continue;
        }
        let mut f = fx.clone();
        for p in &modulator.parts {
            for &v in p {
                f.set(v, Label::D);
            }
        }
        for &(li, ri) in &m.pairs {
            let u = part[li as usize];
            let label = if (ri as usize) < a_x.len() {
                Label::B
            } else {
                Label::A
            };
            f.set(u, label);
        }
        if f.is_feasible_solution(g) {
            let size = f.a_set().len();
            if best.as_ref().map_or(true, |(bs, _)| size > *bs) {
                best = Some((size, f));
            }
        }
    }

    match best {
        Some((size, f)) => (size, Some(f)),
        None => (0, None),
    }
}

/// Case 2: the `guess` side has no unmatched boundary vertices. Guess the
/// remainder vertices S that take that side's label (|S| <= 1 while the
/// other side still has unmatched vertices, else |S| <= 2, and the empty
/// guess is always tried); reject S-vertices adjacent to the opposite
/// labeled set, then give every unmatched vertex and every S-vertex its
/// smallest private partner.
pub fn opt_case_one_empty(
    g: &Graph,
    modulator: &Modulator,
    fx: &Assignment,
    guess: Label,
) -> (usize, Option<Assignment>) {
    let partner_label = match guess {
        Label::A => Label::B,
        Label::B => Label::A,
        Label::D => panic!("guess side must be a or b"),
    };
    let own_unmatched = unmatched_boundary(g, &modulator.x, fx, guess);
    debug_assert!(unmatched_boundary(g, &modulator.x, fx, partner_label).is_empty());
    let opposite_set = match guess {
        Label::A => fx.b_set(),
        _ => fx.a_set(),
    };
    let own_labeled = match guess {
        Label::A => fx.a_set(),
        _ => fx.b_set(),
    };
    let max_s = if own_unmatched.is_empty() { 2 } else { 1 };

    let x_set = modulator.x_set();
    let outside: Vec<u32> = g.vertices().filter(|&v| !x_set.contains(v)).collect();

    let mut guesses: Vec<Vec<u32>> = vec![Vec::new()];
    guesses.extend(outside.iter().map(|&v| vec![v]));
    if max_s >= 2 {
        for (i, &u) in outside.iter().enumerate() {
            for &w in &outside[i + 1..] {
                guesses.push(vec![u, w]);
            }
        }
    }

    let mut best: Option<(usize, Assignment)> = None;
    'guess: for s in &guesses {
        // every vertex of the opposite label is already matched; an
        // S-vertex adjacent to one would give it a second partner
        if s.iter().any(|&v| g.degree_in(v, &opposite_set) != 0) {
            continue;
        }
        let mut f = fx.clone();
        for &v in &outside {
            f.set(v, Label::D);
        }
        let mut guessed_side = own_labeled;
        for &v in s {
            f.set(v, guess);
            guessed_side.insert(v);
        }
        let s_set: crate::bitset::VertexSet = s.iter().copied().collect();
        for &u in own_unmatched.iter().chain(s.iter()) {
            let partner = outside.iter().copied().find(|&v| {
                !s_set.contains(v) && g.has_edge(u, v) && g.degree_in(v, &guessed_side) == 1
            });
            match partner {
                Some(v) => f.set(v, partner_label),
                None => continue 'guess,
            }
        }
        if f.is_feasible_solution(g) {
            let size = f.a_set().len();
            if best.as_ref().map_or(true, |(bs, _)| size > *bs) {
                best = Some((size, f));
            }
        }
    }

    match best {
        Some((size, f)) => (size, Some(f)),
        None => (0, None),
    }
}

fn best_for_fx(g: &Graph, modulator: &Modulator, fx: &Assignment) -> (usize, Option<Assignment>) {
    let a_x = unmatched_boundary(g, &modulator.x, fx, Label::A);
    let b_x = unmatched_boundary(g, &modulator.x, fx, Label::B);
    if !a_x.is_empty() && !b_x.is_empty() {
        opt_case_both_nonempty(g, modulator, fx)
    } else if b_x.is_empty() {
        opt_case_one_empty(g, modulator, fx, Label::A)
    } else {
        opt_case_one_empty(g, modulator, fx, Label::B)
    }
}

/// Maximum over all valid boundary labelings; same deterministic merge and
/// chunked parallelism as the cluster solver.
pub fn pms_max_cocluster_threaded(
    g: &Graph,
    modulator: &Modulator,
    threads: usize,
) -> (usize, PmsSolution) {
    assert_eq!(modulator.kind, ModulatorKind::Cocluster);
    let total = 3u64.pow(modulator.x.len() as u32);
    let workers = if threads == 0 {
        std::thread::available_parallelism().map_or(1, |p| p.get())
    } else {
        threads
    };

    let run_range = |lo: u64, hi: u64| -> Option<(usize, PmsSolution)> {
        let mut local: Option<(usize, PmsSolution)> = None;
        for fx in BoundaryAssignments::range(g, &modulator.x, lo, hi) {
            let (size, f) = best_for_fx(g, modulator, &fx);
            if let Some(f) = f {
                let sol = f.to_solution(g);
                if is_better(size, &sol, &local) {
                    local = Some((size, sol));
                }
            }
        }
        local
    };

    let best = if workers <= 1 || total < 64 {
        run_range(0, total)
    } else {
        let chunk = total.div_ceil(workers as u64);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers as u64)
                .map(|w| {
                    let run = &run_range;
                    let (lo, hi) = (w * chunk, ((w + 1) * chunk).min(total));
                    scope.spawn(move || run(lo, hi))
                })
                .collect();
            let mut best: Option<(usize, PmsSolution)> = None;
            for h in handles {
                if let Some((size, sol)) = h.join().expect("cocluster worker panicked") {
                    if is_better(size, &sol, &best) {
                        best = Some((size, sol));
                    }
                }
            }
            best
        })
    };

    match best {
        Some((k, sol)) if k > 0 => (k, sol),
        _ => (0, PmsSolution::empty()),
    }
}

fn is_better(size: usize, sol: &PmsSolution, best: &Option<(usize, PmsSolution)>) -> bool {
    match best {
        None => true,
        Some((bs, bsol)) => {
            size > *bs
                || (size == *bs
                    && (&sol.a, &sol.b, &sol.matching) < (&bsol.a, &bsol.b, &bsol.matching))
        }
    }
}

pub fn pms_max_cocluster(g: &Graph, modulator: &Modulator) -> (usize, PmsSolution) {
    pms_max_cocluster_threaded(g, modulator, 1)
}
