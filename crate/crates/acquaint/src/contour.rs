//! Contour walk of a rooted spanning tree.
//!
//! The contour Γ is the closed DFS walk that crosses every tree edge twice,
//! linearized by dropping the final edge back to the root. Positions along
//! Γ form a path; `positions[p]` is the projection π of position `p` to a
//! tree vertex. Each vertex then gets one marked position (first occurrence
//! at even depth, last at odd), and consecutive marks are at most 3 apart.

use std::fmt::Write as _;

use crate::graph::SpanningTree;

/// The linearized contour walk of a spanning tree, plus the marked
/// positions once [`mark_positions`] has run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contour {
    tree: SpanningTree,
    positions: Vec<usize>,
    marks: Vec<usize>,
}

impl Contour {
    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    /// The walk Γ: `positions[p]` is the vertex visited at position `p`.
    /// Length `2n - 2` for `n >= 2`, a single entry for `n = 1`.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Projection π of a contour position to its tree vertex.
    pub fn vertex_at(&self, p: usize) -> usize {
        self.positions[p]
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Marked positions in ascending order, one per vertex. Empty until
    /// [`mark_positions`] has run.
    pub fn marks(&self) -> &[usize] {
        &self.marks
    }

    /// Vertex owning the k-th mark.
    pub fn marked_vertex(&self, k: usize) -> usize {
        self.positions[self.marks[k]]
    }

    /// How often each vertex occurs in the walk; equals its tree degree
    /// for `n >= 2`.
    pub fn visit_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.tree.n()];
        for &v in &self.positions {
            counts[v] += 1;
        }
        counts
    }
}

/// Builds the linearized contour walk. Children are visited in ascending
/// id order, so the walk is deterministic. Marks are left unset.
pub fn build_contour(tree: &SpanningTree) -> Contour {
    let n = tree.n();
    let mut positions = Vec::with_capacity(2 * n.max(1) - 1);
    positions.push(tree.root());
    let mut stack: Vec<(usize, usize)> = vec![(tree.root(), 0)];
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        let kids = tree.children(v);
        if i < kids.len() {
            top.1 += 1;
            let c = kids[i];
            positions.push(c);
            stack.push((c, 0));
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                positions.push(p);
            }
        }
    }
    if n >= 2 {
        // Drop the final edge returning to the root; Γ then starts at the
        // root and has 2n - 2 positions.
        let last = positions.pop();
        debug_assert_eq!(last, Some(tree.root()));
    }
    debug_assert_eq!(positions.len(), if n <= 1 { 1 } else { 2 * n - 2 });
    Contour {
        tree: tree.clone(),
        positions,
        marks: Vec::new(),
    }
}

/// Selects one marked position per vertex: the first occurrence when the
/// vertex sits at even depth, the last when odd.
///
/// Panics if the selection ever violates its guarantees (marks must be
/// bijective, start at position 0, and have consecutive gaps of at most 3).
pub fn mark_positions(mut c: Contour) -> Contour {
    let n = c.tree.n();
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0usize; n];
    for (p, &v) in c.positions.iter().enumerate() {
        if first[v] == usize::MAX {
            first[v] = p;
        }
        last[v] = p;
    }
    let mut marks: Vec<usize> = (0..n)
        .map(|v| {
            assert!(first[v] != usize::MAX, "vertex {v} missing from the walk");
            if c.tree.level(v) % 2 == 0 {
                first[v]
            } else {
                last[v]
            }
        })
        .collect();
    marks.sort_unstable();
    assert_eq!(marks.len(), n);
    assert_eq!(marks.first().copied(), Some(0), "root must own position 0");
    for w in marks.windows(2) {
        assert!(w[1] > w[0], "two vertices marked the same position");
        assert!(
            w[1] - w[0] <= 3,
            "mark gap {} exceeds 3 between positions {} and {}",
            w[1] - w[0],
            w[0],
            w[1]
        );
    }
    c.marks = marks;
    c
}

/// DOT rendering of the tree with each edge labeled by the walk steps that
/// traverse it and each vertex labeled with its marked position. Debugging
/// aid only.
pub fn to_dot(c: &Contour) -> String {
    let n = c.tree.n();
    let mut mark_of = vec![None; n];
    for (k, &m) in c.marks.iter().enumerate() {
        mark_of[c.positions[m]] = Some((k, m));
    }
    let mut out = String::from("graph contour {\n");
    for v in 0..n {
        match mark_of[v] {
            Some((k, m)) => {
                let _ = writeln!(
                    out,
                    "  v{v} [label=\"{v}\\nmark {k} @ pos {m}\", style=filled, fillcolor=lightgray];"
                );
            }
            None => {
                let _ = writeln!(out, "  v{v} [label=\"{v}\"];");
            }
        }
    }
    let mut steps: std::collections::BTreeMap<(usize, usize), Vec<usize>> =
        std::collections::BTreeMap::new();
    for (t, w) in c.positions.windows(2).enumerate() {
        let key = (w[0].min(w[1]), w[0].max(w[1]));
        steps.entry(key).or_default().push(t + 1);
    }
    for &(u, v) in c.tree.edges() {
        let label = steps
            .get(&(u, v))
            .map(|ts| {
                ts.iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .unwrap_or_default();
        let _ = writeln!(out, "  v{u} -- v{v} [label=\"{label}\"];");
    }
    out.push_str("}\n");
    out
}
