//! Undirected simple graphs, standard families, spanning trees, and
//! matching validation.
//!
//! Vertices are ids `0..n` everywhere; edges are unordered pairs stored
//! normalized as `(u, v)` with `u < v`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n`.
///
/// No self-loops, no duplicate edges. Adjacency lists are kept sorted and
/// consistent with the edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges, normalized `u < v` and sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Builds a graph from an edge list, rejecting self-loops and out-of-range
/// endpoints. Duplicate edges (in either orientation) are collapsed.
pub fn build_graph(n: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
    let mut edges = Vec::with_capacity(pairs.len());
    for &(u, v) in pairs {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        edges.push(normalize(u, v));
    }
    edges.sort_unstable();
    edges.dedup();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph { n, edges, adj })
}

/// The deterministic graph families the toolkit knows how to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    Barbell,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::Barbell => "barbell",
        };
        f.write_str(name)
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            "complete" => Ok(Family::Complete),
            "star" => Ok(Family::Star),
            "barbell" => Ok(Family::Barbell),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}

/// Canonical constructor for the named families.
///
/// Labeling: paths and cycles in id order, stars centered at 0, barbells
/// as a clique on `0..ceil(n/2)`, a clique on the rest, and the single
/// bridge edge between vertices `ceil(n/2)-1` and `ceil(n/2)`.
pub fn family(kind: Family, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::TooSmall {
            what: "every family",
            n,
            min: 1,
        });
    }
    let mut edges = Vec::new();
    match kind {
        Family::Path => {
            for i in 0..n.saturating_sub(1) {
                edges.push((i, i + 1));
            }
        }
        Family::Cycle => {
            if n < 3 {
                return Err(Error::TooSmall {
                    what: "cycle",
                    n,
                    min: 3,
                });
            }
            for i in 0..n - 1 {
                edges.push((i, i + 1));
            }
            edges.push((0, n - 1));
        }
        Family::Complete => {
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
        }
        Family::Star => {
            for v in 1..n {
                edges.push((0, v));
            }
        }
        Family::Barbell => {
            let a = n.div_ceil(2);
            for u in 0..a {
                for v in u + 1..a {
                    edges.push((u, v));
                }
            }
            for u in a..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            if n >= 2 {
                edges.push((a - 1, a));
            }
        }
    }
    build_graph(n, &edges)
}

/// True iff the graph has a single connected component (`n <= 1` counts
/// as connected).
pub fn is_connected(g: &Graph) -> bool {
    if g.n <= 1 {
        return true;
    }
    let mut seen = vec![false; g.n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == g.n
}

/// Maximum vertex degree; 0 for edgeless graphs.
pub fn max_degree(g: &Graph) -> usize {
    (0..g.n).map(|v| g.degree(v)).max().unwrap_or(0)
}

/// How `spanning_tree` picks its edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TreePolicy {
    /// Depth-first tree, children explored in ascending id order.
    #[default]
    Dfs,
    /// Grow the tree by always attaching the frontier edge whose tree-side
    /// endpoint currently has minimum tree degree (ties broken by smaller
    /// tree-side id, then smaller outside id). A cheap heuristic for
    /// low-degree trees, with no optimality claim.
    DegreeGreedy,
}

impl FromStr for TreePolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dfs" => Ok(TreePolicy::Dfs),
            "degree-greedy" | "degree_greedy" => Ok(TreePolicy::DegreeGreedy),
            other => Err(format!("unknown tree policy `{other}`")),
        }
    }
}

/// A rooted spanning tree of some source graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    root: usize,
    parent: Vec<usize>,
    level: Vec<usize>,
    edges: Vec<(usize, usize)>,
    children: Vec<Vec<usize>>,
}

impl SpanningTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Parent of `v`; the root maps to itself.
    pub fn parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    /// Depth of `v`; the root has level 0.
    pub fn level(&self, v: usize) -> usize {
        self.level[v]
    }

    /// The `n - 1` tree edges, normalized and sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Children of `v` in ascending id order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Degree of `v` within the tree.
    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(v != self.root)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        let (u, v) = normalize(u, v);
        self.edges.binary_search(&(u, v)).is_ok()
    }

    /// Re-checks the structural invariants against the source graph.
    /// Intended for tests and debugging.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = self.n();
        if n != g.n() {
            return Err(Error::GraphMismatch);
        }
        if n == 0 {
            return Ok(());
        }
        if self.edges.len() + 1 != n {
            return Err(Error::Disconnected);
        }
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidMatching {
                    round: 0,
                    reason: crate::error::MatchingViolation::NonEdge { u, v },
                });
            }
        }
        if self.parent[self.root] != self.root || self.level[self.root] != 0 {
            return Err(Error::Disconnected);
        }
        for v in 0..n {
            if v == self.root {
                continue;
            }
            let p = self.parent[v];
            if !self.contains_edge(p, v) || self.level[v] != self.level[p] + 1 {
                return Err(Error::Disconnected);
            }
        }
        Ok(())
    }
}

/// Spanning tree of a connected graph rooted at `root`.
pub fn spanning_tree(g: &Graph, root: usize, policy: TreePolicy) -> Result<SpanningTree> {
    let n = g.n();
    if root >= n {
        return Err(Error::VertexOutOfRange { vertex: root, n });
    }
    let mut parent = vec![usize::MAX; n];
    parent[root] = root;
    let mut reached = 1usize;
    match policy {
        TreePolicy::Dfs => {
            // Neighbors are pushed in reverse so the smallest id pops first;
            // the first pop of a vertex matches its recursive discovery.
            let mut stack: Vec<(usize, usize)> = g
                .neighbors(root)
                .iter()
                .rev()
                .map(|&w| (w, root))
                .collect();
            while let Some((v, from)) = stack.pop() {
                if parent[v] != usize::MAX {
                    continue;
                }
                parent[v] = from;
                reached += 1;
                for &w in g.neighbors(v).iter().rev() {
                    if parent[w] == usize::MAX {
                        stack.push((w, v));
                    }
                }
            }
        }
        TreePolicy::DegreeGreedy => {
            let mut tree_deg = vec![0usize; n];
            // Lazily invalidated min-heap of frontier edges keyed by the
            // tree-side degree at push time.
            let mut heap = BinaryHeap::new();
            for &w in g.neighbors(root) {
                heap.push(Reverse((0usize, root, w)));
            }
            while let Some(Reverse((deg, u, v))) = heap.pop() {
                if parent[v] != usize::MAX {
                    continue;
                }
                if tree_deg[u] != deg {
                    heap.push(Reverse((tree_deg[u], u, v)));
                    continue;
                }
                parent[v] = u;
                reached += 1;
                tree_deg[u] += 1;
                tree_deg[v] = 1;
                for &w in g.neighbors(v) {
                    if parent[w] == usize::MAX {
                        heap.push(Reverse((1usize, v, w)));
                    }
                }
            }
        }
    }
    if reached != n {
        return Err(Error::Disconnected);
    }

    let mut children = vec![Vec::new(); n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 0..n {
        if v != root {
            children[parent[v]].push(v);
            edges.push(normalize(parent[v], v));
        }
    }
    for list in &mut children {
        list.sort_unstable();
    }
    edges.sort_unstable();

    let mut level = vec![0usize; n];
    let mut order = vec![root];
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &c in &children[v] {
            level[c] = level[v] + 1;
            order.push(c);
        }
    }

    Ok(SpanningTree {
        root,
        parent,
        level,
        edges,
        children,
    })
}

/// A set of vertex-disjoint edges. May be empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    /// Normalizes pair orientation and edge order. Disjointness is not
    /// checked here; see [`is_matching`].
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<_> = pairs.into_iter().map(|(u, v)| normalize(u, v)).collect();
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }
}

impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.edges.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(usize, usize)>::deserialize(deserializer)?;
        Ok(Matching::new(pairs))
    }
}

/// True iff every pair is an edge of `g` and no vertex is matched twice.
pub fn is_matching(g: &Graph, m: &Matching) -> bool {
    let mut used = vec![false; g.n()];
    for &(u, v) in m.edges() {
        if !g.has_edge(u, v) {
            return false;
        }
        if used[u] || used[v] {
            return false;
        }
        used[u] = true;
        used[v] = true;
    }
    true
}

/// Labeled tree on `n` vertices decoded from a Prüfer sequence of length
/// `n - 2` (empty for `n <= 2`).
pub fn tree_from_pruefer(n: usize, seq: &[usize]) -> Result<Graph> {
    if n == 0 {
        return Err(Error::TooSmall {
            what: "a tree",
            n,
            min: 1,
        });
    }
    let expected = n.saturating_sub(2);
    assert_eq!(
        seq.len(),
        expected,
        "a tree on {n} vertices needs a sequence of length {expected}"
    );
    if n == 1 {
        return build_graph(1, &[]);
    }
    for &s in seq {
        if s >= n {
            return Err(Error::VertexOutOfRange { vertex: s, n });
        }
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let Reverse(leaf) = leaves.pop().expect("a tree sequence always has a leaf");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    build_graph(n, &edges)
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        build_graph(repr.n, &repr.edges).map_err(D::Error::custom)
    }
}
