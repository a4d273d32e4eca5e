//! Rooted spanning trees with Euler tours, shores of cuts crossing at most
//! two tree edges, exact evaluation of their weights, and batched
//! subtree additions.
//!
//! A tree edge is named by its lower endpoint (the child), so tree edges are
//! exactly the non-root vertices.

use crate::graph::{Shore, WeightedGraph};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("edge list is not a spanning tree on {0} vertices")]
    NotATree(usize),
    #[error("root {0} out of range")]
    BadRoot(usize),
    #[error("{0:?} does not name tree edges of this tree")]
    InvalidId(TwoRespectId),
}

/// Rooted tree with an Euler tour.
///
/// Tour positions run over `[0, 2n)`: the root enters at 0 and leaves at
/// `2n - 1`, and every other vertex `u` enters at `first(u)` (one past the
/// index of its downward tour edge) and leaves at `last(u)`. The subtree of
/// `u` is the set of vertices whose entry lies in `[first(u), last(u)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<usize>,
    depth: Vec<usize>,
    /// Directed tree edges in tour order, `2(n - 1)` entries.
    tour: Vec<(usize, usize)>,
    first: Vec<usize>,
    last: Vec<usize>,
    /// Vertex entering at each even-or-odd position, `usize::MAX` for exits.
    order: Vec<usize>,
}

impl RootedTree {
    /// Roots the tree given by `edges` at `root`.
    pub fn new(n: usize, edges: &[(usize, usize)], root: usize) -> Result<Self, TreeError> {
        if root >= n {
            return Err(TreeError::BadRoot(root));
        }
        if edges.len() + 1 != n {
            return Err(TreeError::NotATree(n));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(TreeError::NotATree(n));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        let mut first = vec![usize::MAX; n];
        let mut last = vec![0; n];
        let mut tour = Vec::with_capacity(2 * n.saturating_sub(1));
        let mut order = vec![usize::MAX; 2 * n];
        first[root] = 0;
        order[0] = root;
        // Iterative DFS: (vertex, next neighbor slot).
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (u, ref mut slot)) = stack.last_mut() {
            if let Some(&v) = adj[u].get(*slot) {
                *slot += 1;
                if v == parent[u] && u != root {
                    continue;
                }
                if first[v] != usize::MAX {
                    return Err(TreeError::NotATree(n));
                }
                parent[v] = u;
                depth[v] = depth[u] + 1;
                tour.push((u, v));
                first[v] = tour.len();
                order[first[v]] = v;
                stack.push((v, 0));
            } else {
                stack.pop();
                if u != root {
                    tour.push((u, parent[u]));
                    last[u] = tour.len();
                }
            }
        }
        if first.contains(&usize::MAX) {
            return Err(TreeError::NotATree(n));
        }
        last[root] = 2 * n - 1;
        Ok(Self {
            root,
            parent,
            depth,
            tour,
            first,
            last,
            order,
        })
    }

    /// Roots a spanning tree given as edge indices of `g`.
    pub fn from_graph_edges(g: &WeightedGraph, tree: &[usize], root: usize) -> Result<Self, TreeError> {
        let pairs: Vec<(usize, usize)> = tree
            .iter()
            .map(|&e| {
                let ed = g.edge(e);
                (ed.u, ed.v)
            })
            .collect();
        Self::new(g.n(), &pairs, root)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Parent of `u`; `None` at the root.
    pub fn parent(&self, u: usize) -> Option<usize> {
        (u != self.root).then(|| self.parent[u])
    }

    pub fn depth(&self, u: usize) -> usize {
        self.depth[u]
    }

    pub fn tour(&self) -> &[(usize, usize)] {
        &self.tour
    }

    pub fn first(&self, u: usize) -> usize {
        self.first[u]
    }

    pub fn last(&self, u: usize) -> usize {
        self.last[u]
    }

    /// True iff `u` is an ancestor of `v` (or `u == v`).
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        self.first[u] <= self.first[v] && self.last[v] <= self.last[u]
    }

    pub fn subtree_size(&self, u: usize) -> usize {
        (self.last[u] - self.first[u]).div_ceil(2)
    }

    /// Vertices of the subtree of `u`.
    pub fn subtree(&self, u: usize) -> Shore {
        Shore::from_vertices(
            self.n(),
            (self.first[u]..=self.last[u])
                .map(|p| self.order[p])
                .filter(|&v| v != usize::MAX),
        )
    }

    /// Tree edges, named by their child endpoint.
    pub fn tree_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&u| u != self.root)
    }

    fn valid_edge(&self, c: usize) -> bool {
        c < self.n() && c != self.root
    }

    /// Size of `shore_of(id)` without materializing it.
    pub fn shore_size(&self, id: TwoRespectId) -> usize {
        match id {
            TwoRespectId::One(c) => self.subtree_size(c),
            TwoRespectId::Two(a, b) => {
                if self.is_ancestor(a, b) {
                    self.subtree_size(a) - self.subtree_size(b)
                } else if self.is_ancestor(b, a) {
                    self.subtree_size(b) - self.subtree_size(a)
                } else {
                    self.subtree_size(a) + self.subtree_size(b)
                }
            }
        }
    }

    /// Every element of `N(T)`: single tree edges, then unordered pairs.
    pub fn all_ids(&self) -> Vec<TwoRespectId> {
        let edges: Vec<usize> = self.tree_edges().collect();
        let mut out: Vec<TwoRespectId> = edges.iter().map(|&c| TwoRespectId::One(c)).collect();
        for (i, &a) in edges.iter().enumerate() {
            for &b in &edges[i + 1..] {
                out.push(TwoRespectId::Two(a, b));
            }
        }
        out
    }
}

/// One tree edge, or an unordered pair of distinct tree edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwoRespectId {
    One(usize),
    Two(usize, usize),
}

impl TwoRespectId {
    /// Pair with endpoints normalized to ascending order.
    pub fn pair(a: usize, b: usize) -> Self {
        TwoRespectId::Two(a.min(b), a.max(b))
    }

    pub fn edge_count(&self) -> usize {
        match self {
            TwoRespectId::One(_) => 1,
            TwoRespectId::Two(..) => 2,
        }
    }
}

/// The shore whose tree cut is exactly `id`, chosen to exclude the root.
pub fn shore_of(t: &RootedTree, id: TwoRespectId) -> Result<Shore, TreeError> {
    match id {
        TwoRespectId::One(c) if t.valid_edge(c) => Ok(t.subtree(c)),
        TwoRespectId::Two(a, b) if a != b && t.valid_edge(a) && t.valid_edge(b) => {
            let (sa, sb) = (t.subtree(a), t.subtree(b));
            Ok(if t.is_ancestor(a, b) {
                sa.difference(&sb)
            } else if t.is_ancestor(b, a) {
                sb.difference(&sa)
            } else {
                sa.union(&sb)
            })
        }
        _ => Err(TreeError::InvalidId(id)),
    }
}

/// Constant-time weights of every cut that crosses one or two edges of a
/// fixed tree.
#[derive(Clone, Debug)]
pub struct CutEvaluator {
    tree: RootedTree,
    n: usize,
    /// Weighted degree summed over each subtree.
    degree_sum: Vec<u64>,
    /// `cross[a * n + b]`: weight of ordered pairs `(x, y)` with `x` in the
    /// subtree of `a` and `y` in the subtree of `b`.
    cross: Vec<u64>,
}

impl CutEvaluator {
    /// Fills the table from one pass over the edges followed by two subtree
    /// aggregations; `O(n^2 + m)` time and `O(n^2)` memory.
    pub fn build(g: &WeightedGraph, t: &RootedTree) -> Self {
        let n = g.n();
        assert_eq!(n, t.n(), "tree must span the graph");
        let mut cross = vec![0u64; n * n];
        for e in g.edges() {
            cross[e.u * n + e.v] += e.w;
            cross[e.v * n + e.u] += e.w;
        }
        // Children before parents: descending entry position.
        let mut post: Vec<usize> = (0..n).collect();
        post.sort_unstable_by_key(|&v| std::cmp::Reverse(t.first(v)));
        // Rows: aggregate the first coordinate over subtrees.
        for &v in &post {
            if let Some(p) = t.parent(v) {
                for y in 0..n {
                    cross[p * n + y] += cross[v * n + y];
                }
            }
        }
        // Columns: aggregate the second coordinate over subtrees.
        for row in cross.chunks_exact_mut(n) {
            for &v in &post {
                if let Some(p) = t.parent(v) {
                    row[p] += row[v];
                }
            }
        }
        let mut degree_sum: Vec<u64> = (0..n).map(|v| g.weighted_degree(v)).collect();
        for &v in &post {
            if let Some(p) = t.parent(v) {
                degree_sum[p] += degree_sum[v];
            }
        }
        Self {
            tree: t.clone(),
            n,
            degree_sum,
            cross,
        }
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    fn single(&self, c: usize) -> u64 {
        self.degree_sum[c] - self.cross[c * self.n + c]
    }

    /// Weight of the cut with shore `shore_of(id)`; `id` must be valid.
    pub fn eval(&self, id: TwoRespectId) -> u64 {
        match id {
            TwoRespectId::One(c) => self.single(c),
            TwoRespectId::Two(a, b) => {
                let t = &self.tree;
                let (sa, sb) = (self.single(a), self.single(b));
                if t.is_ancestor(a, b) {
                    sa + sb - 2 * (self.degree_sum[b] - self.cross[b * self.n + a])
                } else if t.is_ancestor(b, a) {
                    sa + sb - 2 * (self.degree_sum[a] - self.cross[a * self.n + b])
                } else {
                    sa + sb - 2 * self.cross[a * self.n + b]
                }
            }
        }
    }
}

/// Key of each vertex: the sum modulo `modulus` of the deltas of every
/// operation whose subtree contains it.
///
/// Adds each delta at the subtree's entry position and subtracts it one past
/// its exit, then takes prefix sums along the tour.
pub fn subtree_add_batch(t: &RootedTree, ops: &[(usize, u64)], modulus: u64) -> Vec<u64> {
    assert!(modulus >= 1);
    let m = modulus as u128;
    let mut diff = vec![0u128; 2 * t.n() + 1];
    for &(u, delta) in ops {
        let d = delta as u128 % m;
        diff[t.first(u)] = (diff[t.first(u)] + d) % m;
        let end = t.last(u) + 1;
        diff[end] = (diff[end] + m - d) % m;
    }
    let mut acc = 0u128;
    let mut at = vec![0u128; 2 * t.n()];
    for (p, slot) in at.iter_mut().enumerate() {
        acc = (acc + diff[p]) % m;
        *slot = acc;
    }
    (0..t.n()).map(|v| at[t.first(v)] as u64).collect()
}
