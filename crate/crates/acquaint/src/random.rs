//! Seeded random graph generation: G(n, p), giant-component extraction,
//! and uniform labeled trees.

use rand::Rng;
use rand_distr::{Distribution, Geometric};

use crate::error::Result;
use crate::graph::{build_graph, tree_from_pruefer, Graph};

/// Erdős–Rényi G(n, p). Skips between present edges with geometric jumps,
/// so the cost is proportional to the number of edges drawn rather than
/// to n².
pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    if n >= 2 && p > 0.0 {
        if p >= 1.0 {
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
        } else {
            // Walk the u < v cells in row-major flat order; each geometric
            // draw counts the absent edges skipped before the next present
            // one, so only present edges cost RNG time.
            let total = (n * (n - 1) / 2) as u64;
            let geo = Geometric::new(p).expect("0 < p < 1");
            let mut idx: u64 = geo.sample(rng);
            let mut row_start: u64 = 0; // flat index of (u, u + 1)
            let mut u = 0usize;
            while idx < total {
                loop {
                    let len = (n - 1 - u) as u64;
                    if idx < row_start + len {
                        break;
                    }
                    row_start += len;
                    u += 1;
                }
                let v = u + 1 + (idx - row_start) as usize;
                edges.push((u, v));
                idx += 1 + geo.sample(rng);
            }
        }
    }
    build_graph(n, &edges).expect("generated edges are valid by construction")
}

/// Largest connected component of `g`, relabeled to `0..k` preserving the
/// original vertex order. Ties between equal-size components go to the one
/// containing the smallest vertex id.
pub fn giant_component(g: &Graph) -> Graph {
    let n = g.n();
    if n == 0 {
        return build_graph(0, &[]).unwrap();
    }
    let mut comp = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0usize;
        let mut stack = vec![start];
        comp[start] = id;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in g.neighbors(v) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    // max_by_key keeps the later element on ties, so scan in reverse to
    // favor the component discovered first (smallest min vertex).
    let best = (0..sizes.len())
        .rev()
        .max_by_key(|&id| sizes[id])
        .unwrap();
    let mut new_id = vec![usize::MAX; n];
    let mut k = 0usize;
    for v in 0..n {
        if comp[v] == best {
            new_id[v] = k;
            k += 1;
        }
    }
    let edges: Vec<_> = g
        .edges()
        .iter()
        .filter(|&&(u, v)| comp[u] == best && comp[v] == best)
        .map(|&(u, v)| (new_id[u], new_id[v]))
        .collect();
    build_graph(k, &edges).unwrap()
}

/// G(n, p) followed by giant-component extraction; always connected and
/// non-empty for n >= 1.
pub fn gnp_giant(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    giant_component(&gnp(rng, n, p))
}

/// Uniform labeled tree on `n` vertices via a random Prüfer sequence.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Result<Graph> {
    let seq: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(0..n))
        .collect();
    tree_from_pruefer(n, &seq)
}
