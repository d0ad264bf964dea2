//! Brute-force minimum-round search for small graphs: a breadth-first
//! solver over (arrangement, acquaintance) states, and a deliberately
//! separate iterative-deepening solver used to cross-check it.

use std::collections::HashMap;

use serde::Serialize;

use crate::bounds::contour_bound;
use crate::error::{Error, Result};
use crate::graph::{is_connected, max_degree, Graph, Matching};

/// Largest n the packed search state supports (4 bits per vertex).
pub const MAX_EXACT_VERTICES: usize = 16;

/// Search knobs for [`exact_ac`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    /// Abort with [`Error::BudgetExceeded`] after this many distinct
    /// states have been accepted.
    pub max_states: u64,
    /// Drop a state when an already-seen state has the same arrangement
    /// and at least its acquaintances. Never changes the answer, only the
    /// work done.
    pub domination_pruning: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            max_states: 50_000_000,
            domination_pruning: true,
        }
    }
}

/// Result of an exact search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub ac: usize,
    pub states_explored: u64,
}

/// All non-empty matchings of `g`, in depth-first order over sorted edge
/// indices. Deterministic for a given graph.
pub fn enumerate_matchings(g: &Graph) -> Vec<Matching> {
    let edges = g.edges();
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; g.n()];
    fn grow(
        edges: &[(usize, usize)],
        from: usize,
        used: &mut [bool],
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Matching>,
    ) {
        for i in from..edges.len() {
            let (u, v) = edges[i];
            if used[u] || used[v] {
                continue;
            }
            used[u] = true;
            used[v] = true;
            chosen.push((u, v));
            out.push(Matching::new(chosen.iter().copied()));
            grow(edges, i + 1, used, chosen, out);
            chosen.pop();
            used[u] = false;
            used[v] = false;
        }
    }
    grow(edges, 0, &mut used, &mut chosen, &mut out);
    out
}

/// Minimum number of rounds to acquaint all agent pairs on connected `g`,
/// by breadth-first search over (arrangement, acquaintance) states.
pub fn exact_ac(g: &Graph, options: &ExactOptions) -> Result<ExactResult> {
    let n = g.n();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: MAX_EXACT_VERTICES,
        });
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }

    let full = full_mask(n);
    let start_arr = pack_identity(n);
    let start_acq = acquaintances_of(g, start_arr);
    if start_acq == full {
        return Ok(ExactResult {
            ac: 0,
            states_explored: 1,
        });
    }

    let moves: Vec<Vec<(usize, usize)>> = enumerate_matchings(g)
        .into_iter()
        .map(|m| m.edges().to_vec())
        .collect();

    let mut seen = Dedup::new(options.domination_pruning);
    let mut states: u64 = 1;
    seen.accept(start_arr, start_acq);
    let mut frontier = vec![(start_arr, start_acq)];
    let mut depth = 0usize;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &(arr, acq) in &frontier {
            for m in &moves {
                let new_arr = apply_swaps(arr, m);
                let new_acq = acq | acquaintances_of(g, new_arr);
                if new_acq == full {
                    return Ok(ExactResult {
                        ac: depth,
                        states_explored: states,
                    });
                }
                if seen.accept(new_arr, new_acq) {
                    states += 1;
                    if states > options.max_states {
                        return Err(Error::BudgetExceeded {
                            states_explored: states,
                        });
                    }
                    next.push((new_arr, new_acq));
                }
            }
        }
        frontier = next;
    }
    unreachable!("a connected graph always admits a finite strategy");
}

/// Independent oracle: iterative-deepening depth-first search with its own
/// matching enumeration (edge-subset filtering) and no deduplication.
/// Only intended for tiny graphs; the edge count must stay below 21.
pub fn exact_ac_iddfs(g: &Graph, options: &ExactOptions) -> Result<ExactResult> {
    let n = g.n();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: MAX_EXACT_VERTICES,
        });
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let edges = g.edges();
    assert!(
        edges.len() <= 20,
        "the iddfs oracle enumerates edge subsets and is for tiny graphs only"
    );

    // Matchings found by brute subset filtering, deliberately not sharing
    // code with enumerate_matchings.
    let mut moves: Vec<Vec<(usize, usize)>> = Vec::new();
    for mask in 1u32..(1u32 << edges.len()) {
        let mut vertex_use = 0u32;
        let mut ok = true;
        let mut picked = Vec::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let bits = (1u32 << u) | (1u32 << v);
                if vertex_use & bits != 0 {
                    ok = false;
                    break;
                }
                vertex_use |= bits;
                picked.push((u, v));
            }
        }
        if ok {
            moves.push(picked);
        }
    }

    let full = full_mask(n);
    let start_arr = pack_identity(n);
    let start_acq = acquaintances_of(g, start_arr);
    let cap = contour_bound(n, max_degree(g)) + 2;
    let mut nodes: u64 = 0;

    fn dfs(
        g: &Graph,
        moves: &[Vec<(usize, usize)>],
        full: u128,
        arr: u64,
        acq: u128,
        limit: usize,
        nodes: &mut u64,
        max_nodes: u64,
    ) -> Result<bool> {
        if acq == full {
            return Ok(true);
        }
        if limit == 0 {
            return Ok(false);
        }
        for m in moves {
            *nodes += 1;
            if *nodes > max_nodes {
                return Err(Error::BudgetExceeded {
                    states_explored: *nodes,
                });
            }
            let new_arr = apply_swaps(arr, m);
            let new_acq = acq | acquaintances_of(g, new_arr);
            if dfs(g, moves, full, new_arr, new_acq, limit - 1, nodes, max_nodes)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    for limit in 0..=cap {
        if dfs(
            g,
            &moves,
            full,
            start_arr,
            start_acq,
            limit,
            &mut nodes,
            options.max_states,
        )? {
            return Ok(ExactResult {
                ac: limit,
                states_explored: nodes.max(1),
            });
        }
    }
    unreachable!("the 20Δn strategy bounds the answer below the cap");
}

fn full_mask(n: usize) -> u128 {
    let pairs = n * n.saturating_sub(1) / 2;
    if pairs == 0 {
        0
    } else {
        (1u128 << pairs) - 1
    }
}

fn pack_identity(n: usize) -> u64 {
    let mut arr = 0u64;
    for v in 0..n {
        arr |= (v as u64) << (4 * v);
    }
    arr
}

fn agent_at(arr: u64, v: usize) -> usize {
    ((arr >> (4 * v)) & 0xF) as usize
}

fn apply_swaps(mut arr: u64, m: &[(usize, usize)]) -> u64 {
    for &(u, v) in m {
        let a = (arr >> (4 * u)) & 0xF;
        let b = (arr >> (4 * v)) & 0xF;
        arr &= !((0xFu64 << (4 * u)) | (0xFu64 << (4 * v)));
        arr |= (a << (4 * v)) | (b << (4 * u));
    }
    arr
}

fn acquaintances_of(g: &Graph, arr: u64) -> u128 {
    let n = g.n();
    let mut acq = 0u128;
    for &(u, v) in g.edges() {
        let (a, b) = (agent_at(arr, u), agent_at(arr, v));
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        acq |= 1u128 << (a * (2 * n - a - 1) / 2 + (b - a - 1));
    }
    acq
}

enum Dedup {
    Exact(std::collections::HashSet<(u64, u128)>),
    Dominating(HashMap<u64, Vec<u128>>),
}

impl Dedup {
    fn new(domination: bool) -> Self {
        if domination {
            Dedup::Dominating(HashMap::new())
        } else {
            Dedup::Exact(std::collections::HashSet::new())
        }
    }

    /// Returns true if the state is new (and records it).
    fn accept(&mut self, arr: u64, acq: u128) -> bool {
        match self {
            Dedup::Exact(set) => set.insert((arr, acq)),
            Dedup::Dominating(map) => {
                let entry = map.entry(arr).or_default();
                if entry.iter().any(|&prev| prev & acq == acq) {
                    return false;
                }
                // Dropping dominated entries keeps the antichain small;
                // the new superset rejects anything they would reject.
                entry.retain(|&prev| prev & acq != prev);
                entry.push(acq);
                true
            }
        }
    }
}
