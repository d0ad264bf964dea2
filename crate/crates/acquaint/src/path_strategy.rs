//! The odd-even transposition strategy on a path, its reversal property,
//! and closed-form bounds on when two given agents first meet.
//!
//! Strategy rounds use 0-based vertex ids like everything else. The
//! analysis helpers [`trajectory`] and [`predicted_meeting_bound`] use
//! 1-based vertex labels `1..=n`, which keeps their parity cases and
//! closed forms readable; callers translate at the boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{family, Family, Graph, Matching};

/// An ordered list of matchings to play on a fixed graph, one per round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strategy {
    pub graph: Graph,
    pub rounds: Vec<Matching>,
}

impl Strategy {
    pub fn num_rounds(&self) -> usize {
        self.rounds.len()
    }
}

/// Odd-even transposition rounds on the path `0 - 1 - ... - n-1`.
///
/// Round `r` (1-based) swaps the edges whose 1-based index matches the
/// round parity: in 0-based terms, edge `(j, j+1)` is active in round `r`
/// iff `j + r` is odd. With `full = false` this stops after `n - 2` rounds,
/// which is enough to acquaint every pair; with `full = true` it runs `n`
/// rounds and ends with all agents in reversed order.
pub fn path_strategy(n: usize, full: bool) -> Strategy {
    let graph = family(Family::Path, n.max(1)).expect("paths exist for all n >= 1");
    let num_rounds = if full { n } else { n.saturating_sub(2) };
    let rounds = (1..=num_rounds)
        .map(|r| {
            Matching::new(
                (0..n.saturating_sub(1))
                    .filter(|j| (j + r) % 2 == 1)
                    .map(|j| (j, j + 1)),
            )
        })
        .collect();
    Strategy { graph, rounds }
}

/// Position (1-based) after `t` rounds of the full strategy of the agent
/// that starts on vertex `i` (1-based).
///
/// Agents at odd start ascend one vertex per round, pause one round at
/// `n`, then descend; even starts mirror this through vertex 1. The
/// closed forms are only meaningful while the strategy runs, so `t <= n`
/// is required.
pub fn trajectory(i: usize, t: usize, n: usize) -> usize {
    assert!((1..=n).contains(&i), "start vertex {i} not in 1..={n}");
    assert!(t <= n, "trajectory is defined for the strategy's n rounds");
    if i % 2 == 1 {
        let up = n - i;
        if t <= up {
            i + t
        } else if t == up + 1 {
            n
        } else {
            2 * n + 1 - i - t
        }
    } else {
        let down = i - 1;
        if t <= down {
            i - t
        } else if t == down + 1 {
            1
        } else {
            t - i + 1
        }
    }
}

/// Upper bound on the first round at which the agents starting on the
/// 1-based vertices `i < j` of a path occupy adjacent vertices.
///
/// Four parity cases. Both-odd agents meet while the lower one is still
/// ascending; both-even is the same situation reflected through the other
/// end of the path; odd-even agents walk straight at each other; even-odd
/// agents meet high on the path after the lower one has turned around.
/// Every bound is at most `n - 2`. Pairs with `j - i < 2` start adjacent
/// and have no bound to compute.
pub fn predicted_meeting_bound(i: usize, j: usize, n: usize) -> Result<usize> {
    assert!(
        1 <= i && i < j && j <= n,
        "need 1 <= i < j <= n, got i={i} j={j} n={n}"
    );
    if j - i < 2 {
        return Err(Error::DegenerateAdjacent { i, j });
    }
    let bound = match (i % 2 == 1, j % 2 == 1) {
        (true, true) => n - i - 1,
        (false, false) => j - 2,
        (true, false) => j - i - 2,
        (false, true) => n - (j - i + 1) / 2,
    };
    debug_assert!(bound <= n - 2);
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_short_is_one_round() {
        let s = path_strategy(3, false);
        assert_eq!(s.num_rounds(), 1);
        assert_eq!(s.rounds[0].edges(), &[(0, 1)]);
    }

    #[test]
    fn p2_short_is_empty() {
        assert_eq!(path_strategy(2, false).num_rounds(), 0);
        assert_eq!(path_strategy(1, false).num_rounds(), 0);
    }

    #[test]
    fn p5_short_rounds() {
        let s = path_strategy(5, false);
        let rounds: Vec<_> = s.rounds.iter().map(|m| m.edges().to_vec()).collect();
        assert_eq!(
            rounds,
            vec![
                vec![(0, 1), (2, 3)],
                vec![(1, 2), (3, 4)],
                vec![(0, 1), (2, 3)],
            ]
        );
    }

    #[test]
    fn rounds_never_exceed_half_n_edges() {
        for n in 2..=256 {
            for s in [path_strategy(n, false), path_strategy(n, true)] {
                for m in &s.rounds {
                    assert!(m.len() <= n / 2);
                }
            }
        }
    }

    /// Independent reference: apply the matchings to an explicit
    /// arrangement, returning agent positions (1-based) after each round.
    fn simulate_positions(n: usize, rounds: &[Matching]) -> Vec<Vec<usize>> {
        let mut occupant: Vec<usize> = (0..n).collect();
        let mut history = Vec::with_capacity(rounds.len() + 1);
        let snapshot = |occupant: &[usize]| {
            let mut pos = vec![0usize; n];
            for (vertex, &agent) in occupant.iter().enumerate() {
                pos[agent] = vertex + 1;
            }
            pos
        };
        history.push(snapshot(&occupant));
        for m in rounds {
            for &(u, v) in m.edges() {
                occupant.swap(u, v);
            }
            history.push(snapshot(&occupant));
        }
        history
    }

    #[test]
    fn trajectory_no_rounds_is_identity() {
        for n in 1..=10 {
            for i in 1..=n {
                assert_eq!(trajectory(i, 0, n), i);
            }
        }
    }

    #[test]
    fn trajectory_examples() {
        assert_eq!(trajectory(2, 1, 5), 1);
        for n in 2..=12 {
            assert_eq!(trajectory(1, n - 1, n), n);
        }
    }

    #[test]
    fn trajectory_matches_simulation() {
        for n in 1..=32 {
            let s = path_strategy(n, true);
            let history = simulate_positions(n, &s.rounds);
            for t in 0..=n {
                for i in 1..=n {
                    assert_eq!(
                        trajectory(i, t, n),
                        history[t][i - 1],
                        "agent {i}, round {t}, n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn full_strategy_reverses() {
        for n in 2..=64 {
            let s = path_strategy(n, true);
            assert_eq!(s.num_rounds(), n);
            let end = simulate_positions(n, &s.rounds).pop().unwrap();
            for i in 1..=n {
                assert_eq!(end[i - 1], n + 1 - i, "agent {i}, n={n}");
            }
        }
    }

    #[test]
    fn meeting_bound_examples() {
        assert_eq!(predicted_meeting_bound(1, 4, 6), Ok(1));
        assert_eq!(predicted_meeting_bound(2, 5, 6), Ok(4));
        assert_eq!(predicted_meeting_bound(1, 3, 5), Ok(3));
        assert_eq!(
            predicted_meeting_bound(3, 4, 9),
            Err(Error::DegenerateAdjacent { i: 3, j: 4 })
        );
    }

    #[test]
    fn meeting_bounds_hold_under_simulation() {
        for n in 3..=64 {
            let s = path_strategy(n, false);
            let history = simulate_positions(n, &s.rounds);
            for i in 1..=n {
                for j in i + 2..=n {
                    let bound = predicted_meeting_bound(i, j, n).unwrap();
                    assert!(bound <= n - 2, "bound {bound} > n-2 for ({i},{j},{n})");
                    let met = (0..history.len())
                        .position(|t| history[t][i - 1].abs_diff(history[t][j - 1]) == 1)
                        .unwrap_or_else(|| panic!("({i},{j}) never met on P_{n}"));
                    assert!(
                        met <= bound,
                        "({i},{j}) on P_{n}: met at {met}, bound {bound}"
                    );
                }
            }
        }
    }

    #[test]
    fn strategy_json_shape() {
        let s = path_strategy(3, false);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"graph":{"n":3,"edges":[[0,1],[1,2]]},"rounds":[[[0,1]]]}"#
        );
        let back: Strategy = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
