//! Strategy synthesis for arbitrary connected graphs.
//!
//! The marked contour positions of a spanning tree form a virtual path
//! through all n vertices. Each round of the odd-even path strategy is
//! emulated on that virtual path: a virtual edge swap becomes a short
//! walk of real tree-edge swaps (a [`SwapJob`]), conflicting jobs are
//! separated by colors, and each color class plays its jobs in lockstep.
//! The result is a strategy of at most `20 * Δ_T * n` rounds.

use serde::Serialize;

use crate::bounds::contour_bound;
use crate::contour::{build_contour, mark_positions, Contour};
use crate::error::{Error, Result};
use crate::graph::{max_degree, spanning_tree, Graph, Matching, SpanningTree, TreePolicy};
use crate::path_strategy::Strategy;
use crate::simulate;

/// One virtual-edge swap, realized as a walk of tree-edge swaps.
///
/// The job exchanges the agents sitting on the two marked vertices of
/// virtual edge `virtual_index` and leaves every other agent where it
/// was: the forward pass bubbles the lower agent up the Γ interval, the
/// backward pass restores the interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapJob {
    /// Index k of the virtual path edge joining marks k and k+1.
    pub virtual_index: usize,
    /// The Γ position interval (marks[k], marks[k+1]); its width is 1, 2,
    /// or 3.
    pub gamma_interval: (usize, usize),
    /// Tree edges to swap, one per sub-round: forward projections of the
    /// interval's steps, then the backward steps. Length 1, 3, or 5.
    pub edge_sequence: Vec<(usize, usize)>,
    /// Assigned by [`conflict_color`]; `None` until then.
    pub color: Option<usize>,
}

impl SwapJob {
    /// Distinct vertices the job touches. The projection is injective on
    /// a mark interval, so this has `width + 1 <= 4` entries.
    pub fn footprint(&self) -> Vec<usize> {
        let mut f = Vec::with_capacity(4);
        for &(u, v) in &self.edge_sequence {
            for w in [u, v] {
                if !f.contains(&w) {
                    f.push(w);
                }
            }
        }
        f
    }
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// The uncolored jobs of virtual round `r` (1-based): one per virtual
/// edge k with `k + r` odd, mirroring the path strategy's parity rule.
pub fn jobs_for_round(c: &Contour, r: usize) -> Vec<SwapJob> {
    let n = c.tree().n();
    assert_eq!(c.marks().len(), n, "marks must be set before building jobs");
    assert!(r >= 1, "rounds are 1-based");
    let pos = c.positions();
    (0..n.saturating_sub(1))
        .filter(|k| (k + r) % 2 == 1)
        .map(|k| {
            let (lo, hi) = (c.marks()[k], c.marks()[k + 1]);
            let mut seq = Vec::with_capacity(2 * (hi - lo) - 1);
            for q in lo..hi {
                seq.push(norm(pos[q], pos[q + 1]));
            }
            for q in (lo + 1..hi).rev() {
                seq.push(norm(pos[q - 1], pos[q]));
            }
            debug_assert!(matches!(seq.len(), 1 | 3 | 5));
            SwapJob {
                virtual_index: k,
                gamma_interval: (lo, hi),
                edge_sequence: seq,
                color: None,
            }
        })
        .collect()
}

/// Greedy coloring of one round's jobs: jobs conflict iff their vertex
/// footprints intersect; in ascending virtual index, each job takes the
/// smallest color unused among earlier conflicting jobs.
///
/// Every vertex lies in at most `delta` of a round's disjoint Γ
/// intervals, so at most `4 * delta` colors can ever be needed;
/// exceeding that reports [`Error::ColorOverflow`].
pub fn conflict_color(jobs: Vec<SwapJob>, delta: usize) -> Result<Vec<SwapJob>> {
    let limit = 4 * delta;
    let footprints: Vec<Vec<usize>> = jobs.iter().map(SwapJob::footprint).collect();
    let mut colored = jobs;
    for i in 0..colored.len() {
        let mut used = vec![false; i.min(limit) + 1];
        for j in 0..i {
            let conflict = footprints[i]
                .iter()
                .any(|v| footprints[j].contains(v));
            if conflict {
                if let Some(cj) = colored[j].color {
                    if cj < used.len() {
                        used[cj] = true;
                    }
                }
            }
        }
        let color = used.iter().position(|&u| !u).expect("one slot is free");
        if color >= limit {
            return Err(Error::ColorOverflow {
                needed: color + 1,
                limit,
            });
        }
        colored[i].color = Some(color);
    }
    Ok(colored)
}

/// How many virtual path rounds to emulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathRounds {
    /// All n rounds; reverses the virtual order and provably acquaints
    /// every pair.
    #[default]
    Full,
    /// Only n-2 rounds. Enough on a literal path, but the virtual path's
    /// neighbors need not be graph-adjacent, so completeness is checked,
    /// not guaranteed.
    Short,
}

impl std::str::FromStr for PathRounds {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "n" | "full" => Ok(PathRounds::Full),
            "n-2" | "short" => Ok(PathRounds::Short),
            other => Err(format!("unknown round count `{other}` (use n or n-2)")),
        }
    }
}

/// A synthesized strategy together with the numbers the bound check needs.
#[derive(Debug, Clone, Serialize)]
pub struct SynthesisReport {
    #[serde(skip)]
    pub strategy: Strategy,
    #[serde(skip)]
    pub tree: SpanningTree,
    pub rounds_used: usize,
    /// `20 * tree_max_degree * n`; also valid with the graph degree in
    /// place of the tree degree, since the tree degree never exceeds it.
    pub bound: usize,
    pub tree_max_degree: usize,
    pub graph_max_degree: usize,
    pub completion_round: Option<usize>,
    pub max_colors: usize,
}

/// Emulates the full n-round path strategy on the contour of a spanning
/// tree of `g`. See [`synthesize_with`] for the short variant.
pub fn synthesize(g: &Graph, root: usize, policy: TreePolicy) -> Result<SynthesisReport> {
    synthesize_with(g, root, policy, PathRounds::Full)
}

/// Synthesis with an explicit virtual round count. The returned strategy
/// has been executed by the simulator: every round is a verified matching
/// and `completion_round` is measured, not assumed.
pub fn synthesize_with(
    g: &Graph,
    root: usize,
    policy: TreePolicy,
    rounds: PathRounds,
) -> Result<SynthesisReport> {
    let n = g.n();
    let tree = spanning_tree(g, root, policy)?;
    let contour = mark_positions(build_contour(&tree));
    let delta_t = tree.max_degree();
    let delta_g = max_degree(g);

    let virtual_rounds = match rounds {
        PathRounds::Full => n,
        PathRounds::Short => n.saturating_sub(2),
    };

    // Odd rounds all share one job set and coloring, even rounds the
    // other; index by r % 2.
    let colored_by_parity: [Vec<SwapJob>; 2] = [
        conflict_color(jobs_for_round(&contour, 2), delta_t)?,
        conflict_color(jobs_for_round(&contour, 1), delta_t)?,
    ];
    let expansion_by_parity: [Vec<Matching>; 2] = [
        expand_round(&colored_by_parity[0]),
        expand_round(&colored_by_parity[1]),
    ];

    let mut strategy_rounds: Vec<Matching> = Vec::new();
    let mut max_colors = 0usize;
    for r in 1..=virtual_rounds {
        let parity = r % 2;
        strategy_rounds.extend(expansion_by_parity[parity].iter().cloned());
        let colors = colored_by_parity[parity]
            .iter()
            .map(|j| j.color.expect("colored") + 1)
            .max()
            .unwrap_or(0);
        max_colors = max_colors.max(colors);
    }

    let strategy = Strategy {
        graph: g.clone(),
        rounds: strategy_rounds,
    };
    let rounds_used = strategy.num_rounds();
    let bound = contour_bound(n, delta_t);
    assert!(
        rounds_used <= bound,
        "emitted {rounds_used} rounds, bound is {bound}"
    );

    let run_report = simulate::run(g, &strategy)?;
    if matches!(rounds, PathRounds::Full) {
        assert!(
            run_report.all_acquainted,
            "full emulation must acquaint all pairs"
        );
    }

    Ok(SynthesisReport {
        strategy,
        tree,
        rounds_used,
        bound,
        tree_max_degree: delta_t,
        graph_max_degree: delta_g,
        completion_round: run_report.completion_round,
        max_colors,
    })
}

/// Sub-rounds for one virtual round: color classes in ascending order,
/// each playing its jobs in lockstep for as many steps as its longest
/// job. Same-color jobs have disjoint footprints, so every emitted edge
/// set is a matching; no emitted sub-round is empty.
fn expand_round(colored: &[SwapJob]) -> Vec<Matching> {
    let num_colors = colored
        .iter()
        .map(|j| j.color.expect("colored") + 1)
        .max()
        .unwrap_or(0);
    let mut out = Vec::new();
    for color in 0..num_colors {
        let class: Vec<&SwapJob> = colored
            .iter()
            .filter(|j| j.color == Some(color))
            .collect();
        let max_len = class
            .iter()
            .map(|j| j.edge_sequence.len())
            .max()
            .unwrap_or(0);
        for s in 0..max_len {
            out.push(Matching::new(
                class
                    .iter()
                    .filter(|j| s < j.edge_sequence.len())
                    .map(|j| j.edge_sequence[s]),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family, tree_from_pruefer, Family};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn contour_of(g: &Graph) -> Contour {
        let t = spanning_tree(g, 0, TreePolicy::Dfs).unwrap();
        mark_positions(build_contour(&t))
    }

    #[test]
    fn p3_round_one_job() {
        let c = contour_of(&family(Family::Path, 3).unwrap());
        let jobs = jobs_for_round(&c, 1);
        assert_eq!(jobs.len(), 1);
        assert_eq!(jobs[0].virtual_index, 0);
        assert_eq!(jobs[0].gamma_interval, (0, 2));
        assert_eq!(jobs[0].edge_sequence, vec![(0, 1), (1, 2), (0, 1)]);
    }

    #[test]
    fn star_round_one_jobs_and_colors() {
        let c = contour_of(&family(Family::Star, 4).unwrap());
        let jobs = jobs_for_round(&c, 1);
        assert_eq!(jobs.len(), 2);
        assert_eq!(jobs[0].gamma_interval, (0, 1));
        assert_eq!(jobs[1].gamma_interval, (3, 5));
        // Both footprints contain the center, so the colors must differ.
        let colored = conflict_color(jobs, 3).unwrap();
        assert_eq!(colored[0].color, Some(0));
        assert_eq!(colored[1].color, Some(1));
    }

    #[test]
    fn two_vertex_graph_has_one_single_edge_job() {
        let c = contour_of(&family(Family::Path, 2).unwrap());
        let jobs = jobs_for_round(&c, 1);
        assert_eq!(jobs.len(), 1);
        assert_eq!(jobs[0].edge_sequence, vec![(0, 1)]);
        assert!(jobs_for_round(&c, 2).is_empty());
    }

    #[test]
    fn disjoint_jobs_share_a_color() {
        let c = contour_of(&family(Family::Path, 5).unwrap());
        let jobs = jobs_for_round(&c, 1);
        assert_eq!(jobs.len(), 2);
        let colored = conflict_color(jobs, 2).unwrap();
        assert_eq!(colored[0].color, Some(0));
        assert_eq!(colored[1].color, Some(0));
    }

    #[test]
    fn p20_colors_stay_under_four_delta() {
        let c = contour_of(&family(Family::Path, 20).unwrap());
        for r in [1, 2] {
            let colored = conflict_color(jobs_for_round(&c, r), 2).unwrap();
            let max = colored.iter().filter_map(|j| j.color).max().unwrap();
            assert!(max < 8, "round {r} used color {max}");
        }
    }

    #[test]
    fn job_footprints_are_small_and_tree_edged() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..30 {
            let g = crate::random::random_tree(&mut rng, 24).unwrap();
            let t = spanning_tree(&g, 0, TreePolicy::Dfs).unwrap();
            let c = mark_positions(build_contour(&t));
            for r in [1, 2] {
                for job in jobs_for_round(&c, r) {
                    assert!(job.footprint().len() <= 4);
                    assert_eq!(
                        job.footprint().len(),
                        job.gamma_interval.1 - job.gamma_interval.0 + 1
                    );
                    for (u, v) in job.edge_sequence {
                        assert!(t.contains_edge(u, v));
                    }
                }
            }
        }
    }

    /// Running one job's swaps alone must exchange exactly the agents on
    /// the marked endpoints and leave every other vertex untouched.
    #[test]
    fn job_exchange_semantics() {
        let seqs: [[usize; 4]; 4] = [[0, 0, 0, 0], [1, 2, 3, 0], [5, 5, 1, 2], [0, 2, 4, 1]];
        for seq in seqs {
            let g = tree_from_pruefer(6, &seq).unwrap();
            let t = spanning_tree(&g, 0, TreePolicy::Dfs).unwrap();
            let c = mark_positions(build_contour(&t));
            for r in [1, 2] {
                for job in jobs_for_round(&c, r) {
                    let mut occupant: Vec<usize> = (0..6).collect();
                    for &(u, v) in &job.edge_sequence {
                        occupant.swap(u, v);
                    }
                    let a = c.vertex_at(job.gamma_interval.0);
                    let b = c.vertex_at(job.gamma_interval.1);
                    for v in 0..6 {
                        let expected = if v == a {
                            b
                        } else if v == b {
                            a
                        } else {
                            v
                        };
                        assert_eq!(occupant[v], expected, "vertex {v} of job {job:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn k3_synthesis_is_valid_and_bounded() {
        let g = family(Family::Complete, 3).unwrap();
        let report = synthesize(&g, 0, TreePolicy::Dfs).unwrap();
        assert!(report.rounds_used <= 120);
        assert_eq!(report.completion_round, Some(0));
        assert_eq!(report.graph_max_degree, 2);
    }

    #[test]
    fn p8_synthesis_completes_within_bound() {
        let g = family(Family::Path, 8).unwrap();
        let report = synthesize(&g, 0, TreePolicy::Dfs).unwrap();
        assert_eq!(report.tree_max_degree, 2);
        assert_eq!(report.bound, 320);
        assert!(report.rounds_used <= 320);
        assert!(report.completion_round.is_some());
    }

    #[test]
    fn random_tree_n100_within_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let g = crate::random::random_tree(&mut rng, 100).unwrap();
        let report = synthesize(&g, 0, TreePolicy::Dfs).unwrap();
        assert!(report.rounds_used <= report.bound);
        assert!(report.completion_round.is_some());
        assert!(report.max_colors <= 4 * report.tree_max_degree);
    }

    #[test]
    fn full_emulation_reverses_the_virtual_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(4242);
        for n in [2usize, 3, 5, 9, 17] {
            let g = crate::random::gnp_giant(&mut rng, n, 2.5 / n as f64);
            let n = g.n();
            let tree = spanning_tree(&g, 0, TreePolicy::Dfs).unwrap();
            let c = mark_positions(build_contour(&tree));
            let report = synthesize(&g, 0, TreePolicy::Dfs).unwrap();
            let (_, state) =
                simulate::run_to_state(&g, &report.strategy).unwrap();
            for k in 0..n {
                let started_at = c.marked_vertex(k);
                let ends_at = c.marked_vertex(n - 1 - k);
                assert_eq!(
                    state.agent_at(ends_at),
                    started_at,
                    "virtual position {k} of {n}"
                );
            }
        }
    }

    #[test]
    fn synthesized_rounds_use_only_tree_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g = crate::random::gnp_giant(&mut rng, 40, 3.0 / 40.0);
        let report = synthesize(&g, 0, TreePolicy::DegreeGreedy).unwrap();
        for m in &report.strategy.rounds {
            assert!(!m.is_empty(), "no empty sub-round is ever emitted");
            for &(u, v) in m.edges() {
                assert!(report.tree.contains_edge(u, v));
            }
        }
    }

    #[test]
    fn short_mode_is_honest() {
        let g = family(Family::Path, 5).unwrap();
        let report = synthesize_with(&g, 0, TreePolicy::Dfs, PathRounds::Short).unwrap();
        assert!(report.rounds_used <= report.bound);
        let rerun = simulate::run(&g, &report.strategy).unwrap();
        assert_eq!(report.completion_round, rerun.completion_round);
    }

    #[test]
    fn tiny_graphs_synthesize() {
        let g1 = family(Family::Path, 1).unwrap();
        let r1 = synthesize(&g1, 0, TreePolicy::Dfs).unwrap();
        assert_eq!(r1.rounds_used, 0);
        assert_eq!(r1.completion_round, Some(0));

        let g2 = family(Family::Path, 2).unwrap();
        let r2 = synthesize(&g2, 0, TreePolicy::Dfs).unwrap();
        assert!(r2.rounds_used <= 40);
        assert_eq!(r2.completion_round, Some(0));
    }

    #[test]
    fn disconnected_synthesis_fails() {
        let g = crate::graph::build_graph(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            synthesize(&g, 0, TreePolicy::Dfs),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn report_json_keys() {
        let g = family(Family::Path, 3).unwrap();
        let report = synthesize(&g, 0, TreePolicy::Dfs).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        let obj = json.as_object().unwrap();
        for key in [
            "rounds_used",
            "bound",
            "tree_max_degree",
            "graph_max_degree",
            "completion_round",
            "max_colors",
        ] {
            assert!(obj.contains_key(key), "missing {key}");
        }
        assert_eq!(obj.len(), 6);
    }
}
