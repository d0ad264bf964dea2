//! Strategy execution: track where every agent is, accumulate the
//! acquaintance relation, and certify completeness.

use serde::Serialize;

use crate::error::{Error, MatchingViolation, Result};
use crate::graph::{Graph, Matching};
use crate::path_strategy::Strategy;

/// Symmetric relation over agent pairs, stored as a triangular bitset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSet {
    n: usize,
    bits: Vec<u64>,
    count: usize,
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

impl PairSet {
    pub fn new(n: usize) -> Self {
        let total = n * n.saturating_sub(1) / 2;
        PairSet {
            n,
            bits: vec![0; total.div_ceil(64)],
            count: 0,
        }
    }

    /// Number of distinct unordered pairs over `n` elements.
    pub fn total(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    /// Marks `{a, b}`; returns true if the pair was new.
    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let idx = pair_index(self.n, a, b);
        let (word, bit) = (idx / 64, 1u64 << (idx % 64));
        if self.bits[word] & bit == 0 {
            self.bits[word] |= bit;
            self.count += 1;
            true
        } else {
            false
        }
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let idx = pair_index(self.n, a, b);
        self.bits[idx / 64] & (1 << (idx % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn is_complete(&self) -> bool {
        self.count == self.total()
    }
}

/// A snapshot of a running strategy: which agent sits on which vertex,
/// which agent pairs have met, and how many rounds have been played.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationState {
    arrangement: Vec<usize>,
    acquaintance: PairSet,
    round: usize,
}

impl SimulationState {
    /// `arrangement()[v]` is the agent currently on vertex `v`.
    pub fn arrangement(&self) -> &[usize] {
        &self.arrangement
    }

    pub fn agent_at(&self, v: usize) -> usize {
        self.arrangement[v]
    }

    pub fn acquaintance(&self) -> &PairSet {
        &self.acquaintance
    }

    pub fn round(&self) -> usize {
        self.round
    }
}

/// Agent `i` starts on vertex `i`; every pair on an edge is acquainted
/// from the start.
pub fn init_state(g: &Graph) -> SimulationState {
    let n = g.n();
    let mut acquaintance = PairSet::new(n);
    for &(u, v) in g.edges() {
        acquaintance.insert(u, v);
    }
    SimulationState {
        arrangement: (0..n).collect(),
        acquaintance,
        round: 0,
    }
}

/// Plays one round: agents on each matched edge swap, then every pair now
/// sharing an edge is acquainted.
///
/// Only the matched vertices' adjacencies are rescanned: a pair in which
/// neither agent moved was already adjacent (or not) before the round, so
/// it cannot become newly acquainted.
pub fn apply_matching(state: &mut SimulationState, g: &Graph, m: &Matching) -> Result<()> {
    let round = state.round + 1;
    let mut touched = Vec::with_capacity(2 * m.len());
    for &(u, v) in m.edges() {
        if !g.has_edge(u, v) {
            return Err(Error::InvalidMatching {
                round,
                reason: MatchingViolation::NonEdge { u, v },
            });
        }
        touched.push(u);
        touched.push(v);
    }
    touched.sort_unstable();
    if let Some(w) = touched.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidMatching {
            round,
            reason: MatchingViolation::SharedVertex { vertex: w[0] },
        });
    }
    for &(u, v) in m.edges() {
        state.arrangement.swap(u, v);
    }
    for &v in &touched {
        let agent = state.arrangement[v];
        for &w in g.neighbors(v) {
            state.acquaintance.insert(agent, state.arrangement[w]);
        }
    }
    state.round = round;
    Ok(())
}

/// Outcome of running a full strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub valid: bool,
    pub rounds_applied: usize,
    pub all_acquainted: bool,
    pub completion_round: Option<usize>,
    pub acquainted_pairs: usize,
    pub total_pairs: usize,
}

/// One entry of the per-round trace emitted by [`run_traced`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTrace {
    pub round: usize,
    pub new_pairs: usize,
    pub acquainted_pairs: usize,
}

fn run_inner(
    g: &Graph,
    strat: &Strategy,
    mut trace: Option<&mut Vec<RoundTrace>>,
) -> Result<(RunReport, SimulationState)> {
    if strat.graph != *g {
        return Err(Error::GraphMismatch);
    }
    let mut state = init_state(g);
    let mut completion_round = state.acquaintance.is_complete().then_some(0);
    for m in &strat.rounds {
        let before = state.acquaintance.len();
        apply_matching(&mut state, g, m)?;
        debug_assert!(is_permutation(&state.arrangement));
        if completion_round.is_none() && state.acquaintance.is_complete() {
            completion_round = Some(state.round);
        }
        if let Some(out) = trace.as_deref_mut() {
            out.push(RoundTrace {
                round: state.round,
                new_pairs: state.acquaintance.len() - before,
                acquainted_pairs: state.acquaintance.len(),
            });
        }
    }
    let report = RunReport {
        valid: true,
        rounds_applied: state.round,
        all_acquainted: state.acquaintance.is_complete(),
        completion_round,
        acquainted_pairs: state.acquaintance.len(),
        total_pairs: state.acquaintance.total(),
    };
    Ok((report, state))
}

fn is_permutation(arrangement: &[usize]) -> bool {
    let mut seen = vec![false; arrangement.len()];
    arrangement.iter().all(|&a| {
        a < seen.len() && !std::mem::replace(&mut seen[a], true)
    })
}

/// Applies every round of `strat` on `g` and reports the outcome.
/// `completion_round` is the first round after which all pairs were
/// acquainted (0 when the graph starts complete), if ever.
pub fn run(g: &Graph, strat: &Strategy) -> Result<RunReport> {
    run_inner(g, strat, None).map(|(report, _)| report)
}

/// Like [`run`], also returning the final state. Lets callers inspect the
/// closing arrangement.
pub fn run_to_state(g: &Graph, strat: &Strategy) -> Result<(RunReport, SimulationState)> {
    run_inner(g, strat, None)
}

/// Like [`run`], also collecting a per-round trace of acquaintance growth.
pub fn run_traced(g: &Graph, strat: &Strategy) -> Result<(RunReport, Vec<RoundTrace>)> {
    let mut trace = Vec::with_capacity(strat.rounds.len());
    let (report, _) = run_inner(g, strat, Some(&mut trace))?;
    Ok((report, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, family, Family};
    use crate::path_strategy::path_strategy;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn init_acquaints_adjacent_pairs() {
        let s = init_state(&family(Family::Path, 3).unwrap());
        assert!(s.acquaintance().contains(0, 1));
        assert!(s.acquaintance().contains(1, 2));
        assert!(!s.acquaintance().contains(0, 2));

        let k3 = init_state(&family(Family::Complete, 3).unwrap());
        assert!(k3.acquaintance().is_complete());

        let lonely = init_state(&build_graph(2, &[]).unwrap());
        assert_eq!(lonely.acquaintance().len(), 0);
    }

    #[test]
    fn one_swap_on_p3() {
        let g = family(Family::Path, 3).unwrap();
        let mut s = init_state(&g);
        apply_matching(&mut s, &g, &Matching::new([(0, 1)])).unwrap();
        assert_eq!(s.agent_at(1), 0);
        assert_eq!(s.agent_at(0), 1);
        assert!(s.acquaintance().contains(0, 2));
        assert_eq!(s.round(), 1);
    }

    #[test]
    fn non_edge_and_shared_vertex_are_rejected() {
        let g = family(Family::Path, 3).unwrap();
        let mut s = init_state(&g);
        assert_eq!(
            apply_matching(&mut s, &g, &Matching::new([(0, 2)])),
            Err(Error::InvalidMatching {
                round: 1,
                reason: MatchingViolation::NonEdge { u: 0, v: 2 },
            })
        );
        assert_eq!(
            apply_matching(&mut s, &g, &Matching::new([(0, 1), (1, 2)])),
            Err(Error::InvalidMatching {
                round: 1,
                reason: MatchingViolation::SharedVertex { vertex: 1 },
            })
        );
    }

    #[test]
    fn empty_round_only_ticks_the_clock() {
        let g = family(Family::Path, 3).unwrap();
        let mut s = init_state(&g);
        let before = s.arrangement().to_vec();
        apply_matching(&mut s, &g, &Matching::empty()).unwrap();
        assert_eq!(s.arrangement(), &before[..]);
        assert_eq!(s.round(), 1);
    }

    #[test]
    fn p4_short_strategy_completes_in_two() {
        let g = family(Family::Path, 4).unwrap();
        let report = run(&g, &path_strategy(4, false)).unwrap();
        assert!(report.valid && report.all_acquainted);
        assert_eq!(report.rounds_applied, 2);
        assert_eq!(report.completion_round, Some(2));
    }

    #[test]
    fn complete_graph_finishes_at_round_zero() {
        let g = family(Family::Complete, 5).unwrap();
        let strat = Strategy {
            graph: g.clone(),
            rounds: vec![],
        };
        let report = run(&g, &strat).unwrap();
        assert!(report.all_acquainted);
        assert_eq!(report.completion_round, Some(0));
    }

    #[test]
    fn invalid_round_reports_its_index() {
        let g = family(Family::Path, 4).unwrap();
        let strat = Strategy {
            graph: g.clone(),
            rounds: vec![Matching::new([(0, 1)]), Matching::new([(0, 2)])],
        };
        assert_eq!(
            run(&g, &strat),
            Err(Error::InvalidMatching {
                round: 2,
                reason: MatchingViolation::NonEdge { u: 0, v: 2 },
            })
        );
    }

    #[test]
    fn mismatched_graph_is_rejected() {
        let g = family(Family::Path, 4).unwrap();
        let strat = path_strategy(5, false);
        assert_eq!(run(&g, &strat), Err(Error::GraphMismatch));
    }

    #[test]
    fn path_completion_round_is_exactly_n_minus_2() {
        for n in 3..=256 {
            let g = family(Family::Path, n).unwrap();
            let report = run(&g, &path_strategy(n, false)).unwrap();
            assert!(report.all_acquainted, "n={n}");
            assert_eq!(report.completion_round, Some(n - 2), "n={n}");
        }
    }

    #[test]
    fn trace_is_monotone_and_consistent() {
        let g = family(Family::Path, 16).unwrap();
        let (report, trace) = run_traced(&g, &path_strategy(16, false)).unwrap();
        assert_eq!(trace.len(), report.rounds_applied);
        let mut last = init_state(&g).acquaintance().len();
        for entry in &trace {
            assert!(entry.acquainted_pairs >= last);
            assert_eq!(entry.acquainted_pairs - last, entry.new_pairs);
            last = entry.acquainted_pairs;
        }
        assert_eq!(last, report.acquainted_pairs);
    }

    /// Reference implementation: rescan the whole adjacency after every
    /// round instead of only the matched vertices.
    fn reference_run(g: &Graph, rounds: &[Matching]) -> PairSet {
        let n = g.n();
        let mut arrangement: Vec<usize> = (0..n).collect();
        let mut acq = PairSet::new(n);
        let scan = |arrangement: &[usize], acq: &mut PairSet| {
            for &(u, v) in g.edges() {
                acq.insert(arrangement[u], arrangement[v]);
            }
        };
        scan(&arrangement, &mut acq);
        for m in rounds {
            for &(u, v) in m.edges() {
                arrangement.swap(u, v);
            }
            scan(&arrangement, &mut acq);
        }
        acq
    }

    fn random_matching(rng: &mut impl Rng, g: &Graph) -> Matching {
        let mut edges: Vec<_> = g.edges().to_vec();
        edges.shuffle(rng);
        let mut used = vec![false; g.n()];
        let mut picked = Vec::new();
        for (u, v) in edges {
            if !used[u] && !used[v] && rng.gen_bool(0.7) {
                used[u] = true;
                used[v] = true;
                picked.push((u, v));
            }
        }
        Matching::new(picked)
    }

    #[test]
    fn incremental_update_matches_full_rescan() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..40 {
            let n = rng.gen_range(2..30);
            let g = crate::random::gnp_giant(&mut rng, n, 2.5 / n as f64);
            let rounds: Vec<_> = (0..rng.gen_range(0..25))
                .map(|_| random_matching(&mut rng, &g))
                .collect();
            let mut state = init_state(&g);
            for m in &rounds {
                apply_matching(&mut state, &g, m).unwrap();
            }
            let reference = reference_run(&g, &rounds);
            assert_eq!(state.acquaintance().len(), reference.len());
            for a in 0..g.n() {
                for b in a + 1..g.n() {
                    assert_eq!(
                        state.acquaintance().contains(a, b),
                        reference.contains(a, b),
                        "pair ({a},{b})"
                    );
                }
            }
        }
    }

    #[test]
    fn pair_set_basics() {
        let mut p = PairSet::new(5);
        assert_eq!(p.total(), 10);
        assert!(p.insert(3, 1));
        assert!(!p.insert(1, 3));
        assert!(p.contains(1, 3));
        assert!(!p.contains(1, 1));
        assert_eq!(p.len(), 1);

        let mut all = PairSet::new(4);
        for a in 0..4 {
            for b in a + 1..4 {
                all.insert(a, b);
            }
        }
        assert!(all.is_complete());
        assert!(PairSet::new(1).is_complete());
    }
}
