//! Constant-factor min-cut estimates, sparse certificates, skeleton sampling,
//! spanning-tree packings, and tree sets that 2-respect every near-minimum cut.

use num_rational::Ratio;
use rand::Rng as _;

use crate::graph::{GraphError, Shore, WeightedGraph};
use crate::pipeline::reference::stoer_wagner;
use crate::rng::{self, tag};

/// Upper bound on `matula_estimate / lambda`.
pub const MATULA_RATIO: u64 = 3;

/// Certificates at threshold `c` weigh at most `NI_WEIGHT_FACTOR * c * (n - 1)`.
pub const NI_WEIGHT_FACTOR: u64 = 1;

/// Skeleton rate for tree packing is `SKELETON_RATE * ln(n) / estimate`.
pub const SKELETON_RATE: u64 = 8;

/// Near-minimum cuts of the rounded graph survive certification when the
/// threshold is `(1 + 1/12)` times the estimate.
const CERTIFY_SLACK: (u64, u64) = (13, 12);

/// Tree sets from `karger_trees` have at most `KARGER_TREES_PER_LN * ln(n)`
/// trees (plus one for rounding at tiny `n`).
pub const KARGER_TREES_PER_LN: u64 = 2 * SKELETON_RATE;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TreePackError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("need at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("sampling rate must lie in (0, 1]")]
    BadRate,
    #[error("weight below 1 cannot be rounded")]
    WeightBelowOne,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn require_connected(g: &WeightedGraph) -> Result<(), TreePackError> {
    if g.n() < 2 {
        return Err(TreePackError::TooFewVertices(g.n()));
    }
    if !g.is_connected() {
        return Err(TreePackError::Disconnected);
    }
    Ok(())
}

/// Forest interval `(start, end]` of each edge in a maximum-adjacency scan.
///
/// Edge `e = (u, v)` with `v` scanned after `u` occupies the forest indices
/// `attach(v) + 1 ..= attach(v) + w(e)`, where `attach(v)` is the weight
/// joining `v` to the scanned set just before `e` is processed. Its endpoints
/// are at least `end`-connected.
pub fn scan_intervals(g: &WeightedGraph) -> Vec<(u64, u64)> {
    use std::collections::BinaryHeap;
    let n = g.n();
    let mut attach = vec![0u64; n];
    let mut scanned = vec![false; n];
    let mut out = vec![(0u64, 0u64); g.m()];
    let mut heap = BinaryHeap::new();
    for s in 0..n {
        if scanned[s] {
            continue;
        }
        heap.push((0u64, std::cmp::Reverse(s)));
        while let Some((r, std::cmp::Reverse(u))) = heap.pop() {
            if scanned[u] || r != attach[u] {
                continue;
            }
            scanned[u] = true;
            for &(v, e) in g.neighbors(u) {
                if scanned[v] {
                    continue;
                }
                let w = g.edge(e).w;
                out[e] = (attach[v], attach[v] + w);
                attach[v] += w;
                heap.push((attach[v], std::cmp::Reverse(v)));
            }
        }
    }
    out
}

/// Sparse certificate: keeps every cut of weight at most `c` edge for edge,
/// with total weight at most `c * (n - 1)`.
pub fn ni_certificate(g: &WeightedGraph, c: u64) -> WeightedGraph {
    let iv = scan_intervals(g);
    let mut idx = 0;
    g.map_weights(|e| {
        let (start, _) = iv[idx];
        idx += 1;
        e.w.min(c.saturating_sub(start))
    })
    .expect("certificate weights never exceed the source weights")
}

/// Min-cut estimate with `lambda <= estimate <= 3 * lambda`.
///
/// Each round records the minimum weighted degree `d` and contracts every
/// edge whose scan interval ends above `d / 3`; those endpoints are more than
/// `d / 3` connected, so all cuts of weight at most `d / 3` survive.
pub fn matula_estimate(g: &WeightedGraph) -> Result<u64, TreePackError> {
    require_connected(g)?;
    let mut cur = g.clone();
    let mut best = u64::MAX;
    while cur.n() > 1 {
        let d = (0..cur.n())
            .map(|v| cur.weighted_degree(v))
            .min()
            .expect("nonempty");
        best = best.min(d);
        let keep = d / MATULA_RATIO;
        let iv = scan_intervals(&cur);
        let mut uf = UnionFind::new(cur.n());
        for (e, &(_, end)) in cur.edges().iter().zip(&iv) {
            if end > keep {
                uf.union(e.u, e.v);
            }
        }
        let labels: Vec<usize> = (0..cur.n()).map(|v| uf.find(v)).collect();
        let p = crate::graph::Partition::from_labels(&labels);
        debug_assert!(p.block_count() < cur.n(), "each round contracts an edge");
        cur = crate::graph::contract(&cur, &p);
    }
    Ok(best)
}

/// `ceil(p * total)` draws with replacement from the multigraph view of `g`,
/// where edge weights are multiplicities. The result's weights are draw counts.
pub fn skeleton_sample(
    g: &WeightedGraph,
    p: Ratio<u64>,
    seed: u64,
) -> Result<WeightedGraph, TreePackError> {
    if *p.numer() == 0 || p > Ratio::from_integer(1) {
        return Err(TreePackError::BadRate);
    }
    let total = crate::graph::total_weight(g) as u128;
    let draws = (total * *p.numer() as u128).div_ceil(*p.denom() as u128);
    let mut prefix = Vec::with_capacity(g.m());
    let mut acc = 0u64;
    for e in g.edges() {
        acc += e.w;
        prefix.push(acc);
    }
    let mut counts = vec![0u64; g.m()];
    let mut rng = rng::stream(seed, tag::SKELETON);
    if total > 0 {
        for _ in 0..draws {
            let r = rng.gen_range(0..acc);
            let idx = prefix.partition_point(|&x| x <= r);
            counts[idx] += 1;
        }
    }
    let edges = g.edges().iter().zip(&counts).map(|(e, &c)| (e.u, e.v, c));
    Ok(WeightedGraph::from_multi(g.n(), edges)?)
}

/// Integer graph with weights `round(100 * w)`; integer inputs scale exactly.
pub fn round_weights(g: &WeightedGraph) -> Result<WeightedGraph, TreePackError> {
    Ok(g.scaled(100)?)
}

/// Rounds rational weights `w >= 1` to `round(100 * w)`, halves rounding up.
pub fn round_rational_weights(
    n: usize,
    edges: &[(usize, usize, Ratio<u64>)],
) -> Result<WeightedGraph, TreePackError> {
    let mut out = Vec::with_capacity(edges.len());
    for &(u, v, w) in edges {
        let (num, den) = (*w.numer() as u128, *w.denom() as u128);
        if num < den {
            return Err(TreePackError::WeightBelowOne);
        }
        let r = (200 * num + den) / (2 * den);
        out.push((u, v, u64::try_from(r).map_err(|_| GraphError::TotalWeightOverflow)?));
    }
    Ok(WeightedGraph::new(n, out)?)
}

/// Spanning trees with positive weights; trees are edge-index lists into the
/// host graph and may repeat an edge index when it has spare capacity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePacking {
    pub trees: Vec<Vec<usize>>,
    pub weights: Vec<Ratio<u64>>,
}

impl TreePacking {
    pub fn value(&self) -> Ratio<u64> {
        self.weights.iter().copied().sum()
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Per-edge load never exceeds capacity and every tree spans the host.
    pub fn is_feasible(&self, host: &WeightedGraph) -> bool {
        let mut load = vec![Ratio::from_integer(0u64); host.m()];
        for (t, &w) in self.trees.iter().zip(&self.weights) {
            if !is_spanning_tree(host, t) {
                return false;
            }
            for &e in t {
                load[e] += w;
            }
        }
        load.iter()
            .zip(host.edges())
            .all(|(l, e)| *l <= Ratio::from_integer(e.w))
    }
}

/// True iff `tree` (edge indices of `g`) is a spanning tree of `g`.
pub fn is_spanning_tree(g: &WeightedGraph, tree: &[usize]) -> bool {
    if tree.len() + 1 != g.n() {
        return false;
    }
    let mut uf = UnionFind::new(g.n());
    tree.iter().all(|&e| {
        let ed = g.edge(e);
        uf.union(ed.u, ed.v)
    })
}

/// Number of tree edges crossing `x`.
pub fn tree_crossings(g: &WeightedGraph, tree: &[usize], x: &Shore) -> usize {
    tree.iter()
        .filter(|&&e| {
            let ed = g.edge(e);
            x.separates(ed.u, ed.v)
        })
        .count()
}

/// Edge-disjoint spanning trees of the multigraph view of `h` after clamping
/// weights to the min-cut estimate: `ceil(lambda(h) / 2)` of them when that
/// many fit, else `floor(lambda(h) / 2)` (at least one). Each tree has weight 1.
pub fn pack_trees(h: &WeightedGraph) -> Result<TreePacking, TreePackError> {
    require_connected(h)?;
    let cap = matula_estimate(h)?;
    let mut copies = Vec::new();
    for (i, e) in h.edges().iter().enumerate() {
        for _ in 0..e.w.min(cap) {
            copies.push(i);
        }
    }
    let ends: Vec<(usize, usize)> = copies
        .iter()
        .map(|&i| (h.edge(i).u, h.edge(i).v))
        .collect();
    let n = h.n();
    let min_degree = (0..n)
        .map(|v| {
            h.neighbors(v)
                .iter()
                .map(|&(_, e)| h.edge(e).w.min(cap))
                .sum::<u64>()
        })
        .min()
        .unwrap_or(0);
    let upper = (min_degree as usize).min(copies.len() / (n - 1)).max(1);
    // Clamping at cap >= lambda keeps lambda, and a lambda-connected
    // multigraph holds floor(lambda / 2) disjoint spanning trees, so the
    // search starts there.
    let (lambda, _) = stoer_wagner(h).map_err(|_| TreePackError::TooFewVertices(n))?;
    let start = ((lambda / 2) as usize).clamp(1, upper);
    let mut first = ForestSet::new(n, start, copies.len());
    let filled = first.fill(&ends);
    debug_assert!(filled, "Nash-Williams bound guarantees {start} trees");
    let mut best = first;
    // One more level reaches value >= lambda / 2 when lambda is odd; deeper
    // levels only add trees the contract does not need.
    let target = (lambda.div_ceil(2) as usize).clamp(1, upper);
    while best.forest_count() < target {
        let mut fs = best.with_extra_forest();
        if !fs.fill(&ends) {
            break;
        }
        best = fs;
    }
    let fs = best;
    let trees: Vec<Vec<usize>> = fs
        .forests()
        .into_iter()
        .map(|f| {
            let mut t: Vec<usize> = f.into_iter().map(|c| copies[c]).collect();
            t.sort_unstable();
            t
        })
        .collect();
    let weights = vec![Ratio::from_integer(1); trees.len()];
    Ok(TreePacking { trees, weights })
}

/// `O(log n)` spanning trees of `g` (edge-index lists) such that, with high
/// probability, every `(1 + 1/16)`-near-minimum cut 2-respects a quarter of
/// them.
///
/// Normalizes by the minimum weight, rounds to integers, certifies near-min
/// cuts, samples a skeleton whose min cut is `O(log n)`, and packs it.
pub fn karger_trees(g: &WeightedGraph, seed: u64) -> Result<Vec<Vec<usize>>, TreePackError> {
    require_connected(g)?;
    let alpha = g.min_edge_weight().expect("connected with n >= 2");
    let rounded = g
        .map_weights(|e| ((200 * e.w as u128 + alpha as u128) / (2 * alpha as u128)) as u64)?;
    let estimate = matula_estimate(&rounded)?;
    let threshold = (estimate as u128 * CERTIFY_SLACK.0 as u128).div_ceil(CERTIFY_SLACK.1 as u128);
    let certified = ni_certificate(&rounded, threshold.min(u64::MAX as u128) as u64);
    let ln_n = (g.n() as f64).ln();
    // Rate as a rational with three decimal digits of ln(n), rounded up.
    let num = ((SKELETON_RATE as f64 * ln_n * 1000.0).ceil() as u64).max(1);
    let mut den = estimate.saturating_mul(1000);
    let mut attempt = 0u64;
    let skeleton = loop {
        if num >= den {
            break certified.clone();
        }
        let s = skeleton_sample(&certified, Ratio::new(num, den), rng::derive(seed, attempt))?;
        if s.is_connected() {
            break s;
        }
        // A disconnected skeleton carries no spanning tree; resample denser.
        attempt += 1;
        den /= 2;
    };
    let packing = pack_trees(&skeleton)?;
    Ok(packing
        .trees
        .into_iter()
        .map(|t| {
            let mut mapped: Vec<usize> = t
                .into_iter()
                .map(|e| {
                    let ed = skeleton.edge(e);
                    g.edge_index(ed.u, ed.v).expect("skeleton edges come from g")
                })
                .collect();
            mapped.sort_unstable();
            mapped
        })
        .collect())
}

/// Tree list as JSON edge-index lists against the canonical edge order.
pub fn trees_to_json(trees: &[Vec<usize>]) -> String {
    serde_json::to_string(trees).expect("index lists serialize")
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if already merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

const UNASSIGNED: usize = usize::MAX;

/// `k` edge-disjoint forests over multigraph copies, grown by matroid-union
/// augmenting paths. Every forest is kept rooted so a path query walks only
/// the path itself.
#[derive(Clone)]
struct ForestSet {
    n: usize,
    /// Forest holding each copy, or `UNASSIGNED`.
    owner: Vec<usize>,
    /// Per forest: adjacency `(neighbor, copy)` lists.
    adj: Vec<Vec<Vec<(usize, usize)>>>,
    sizes: Vec<usize>,
    rooted: Vec<Rooting>,
}

/// BFS rooting of one forest: `up[v] = (parent, copy)`, with the root of each
/// tree pointing at itself through `UNASSIGNED`.
#[derive(Clone)]
struct Rooting {
    up: Vec<(usize, usize)>,
    depth: Vec<usize>,
    tree: Vec<usize>,
}

impl Rooting {
    fn build(adj: &[Vec<(usize, usize)>]) -> Self {
        let n = adj.len();
        let mut r = Rooting {
            up: vec![(0, UNASSIGNED); n],
            depth: vec![0; n],
            tree: vec![UNASSIGNED; n],
        };
        let mut queue = Vec::with_capacity(n);
        for s in 0..n {
            if r.tree[s] != UNASSIGNED {
                continue;
            }
            r.tree[s] = s;
            r.up[s] = (s, UNASSIGNED);
            queue.clear();
            queue.push(s);
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for &(y, c) in &adj[x] {
                    if r.tree[y] == UNASSIGNED {
                        r.tree[y] = s;
                        r.up[y] = (x, c);
                        r.depth[y] = r.depth[x] + 1;
                        queue.push(y);
                    }
                }
            }
        }
        r
    }

    /// Calls `visit` on each copy of the tree path between `a` and `b`;
    /// false, without visiting, when they lie in different trees.
    fn walk_path(&self, mut a: usize, mut b: usize, mut visit: impl FnMut(usize)) -> bool {
        if self.tree[a] != self.tree[b] {
            return false;
        }
        while a != b {
            if self.depth[a] < self.depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            let (parent, copy) = self.up[a];
            visit(copy);
            a = parent;
        }
        true
    }
}

impl ForestSet {
    fn new(n: usize, k: usize, copies: usize) -> Self {
        let adj = vec![vec![Vec::new(); n]; k];
        let rooted = adj.iter().map(|a: &Vec<Vec<(usize, usize)>>| Rooting::build(a)).collect();
        Self {
            n,
            owner: vec![UNASSIGNED; copies],
            adj,
            sizes: vec![0; k],
            rooted,
        }
    }

    fn with_extra_forest(&self) -> Self {
        let mut next = self.clone();
        next.adj.push(vec![Vec::new(); self.n]);
        next.rooted.push(Rooting::build(&next.adj[next.adj.len() - 1]));
        next.sizes.push(0);
        next
    }

    fn forest_count(&self) -> usize {
        self.adj.len()
    }

    fn forests(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.forest_count()];
        for (c, &f) in self.owner.iter().enumerate() {
            if f != UNASSIGNED {
                out[f].push(c);
            }
        }
        out
    }

    fn insert(&mut self, f: usize, c: usize, (a, b): (usize, usize)) {
        self.adj[f][a].push((b, c));
        self.adj[f][b].push((a, c));
        self.owner[c] = f;
        self.sizes[f] += 1;
    }

    fn remove(&mut self, c: usize, (a, b): (usize, usize)) {
        let f = self.owner[c];
        self.adj[f][a].retain(|&(_, x)| x != c);
        self.adj[f][b].retain(|&(_, x)| x != c);
        self.owner[c] = UNASSIGNED;
        self.sizes[f] -= 1;
    }

    /// Tries to add every unassigned copy; true iff all forests end spanning.
    fn fill(&mut self, ends: &[(usize, usize)]) -> bool {
        let k = self.forest_count();
        let target = k * (self.n - 1);
        let mut clumps = UnionFind::new(self.n);
        let mut label = vec![UNASSIGNED; ends.len()];
        let mut touched = Vec::new();
        let mut total: usize = self.sizes.iter().sum();
        for c in 0..ends.len() {
            if total == target {
                return true;
            }
            if self.owner[c] != UNASSIGNED {
                continue;
            }
            let (a, b) = ends[c];
            if clumps.find(a) == clumps.find(b) {
                continue;
            }
            if self.augment(c, ends, &mut label, &mut touched) {
                total += 1;
            } else {
                // Every forest spans the labelled region; edges inside it
                // can never join the union.
                for &t in &touched {
                    let (x, y) = ends[t];
                    clumps.union(x, y);
                }
            }
            for &t in &touched {
                label[t] = UNASSIGNED;
            }
            touched.clear();
        }
        total == target
    }

    /// Breadth-first augmenting search from unassigned copy `start`.
    /// `label[x] = y` records that `y` may take `x`'s place in `x`'s forest.
    fn augment(&mut self, start: usize, ends: &[(usize, usize)], label: &mut [usize], touched: &mut Vec<usize>) -> bool {
        let k = self.forest_count();
        touched.push(start);
        label[start] = start;
        let mut head = 0;
        while head < touched.len() {
            let x = touched[head];
            head += 1;
            let (a, b) = ends[x];
            for f in 0..k {
                if self.owner[x] == f {
                    continue;
                }
                let joined = self.rooted[f].walk_path(a, b, |y| {
                    if label[y] == UNASSIGNED {
                        label[y] = x;
                        touched.push(y);
                    }
                });
                if !joined {
                    self.apply(x, f, ends, label);
                    return true;
                }
            }
        }
        false
    }

    /// Moves `x` into forest `f`, then shifts each predecessor into the
    /// forest its successor vacated, back to the start copy. Re-roots every
    /// forest that changed.
    fn apply(&mut self, mut x: usize, mut f: usize, ends: &[(usize, usize)], label: &[usize]) {
        let mut dirty = vec![false; self.forest_count()];
        loop {
            let vacated = self.owner[x];
            if vacated != UNASSIGNED {
                self.remove(x, ends[x]);
                dirty[vacated] = true;
            }
            self.insert(f, x, ends[x]);
            dirty[f] = true;
            if vacated == UNASSIGNED {
                break;
            }
            x = label[x];
            f = vacated;
        }
        for (g, d) in dirty.into_iter().enumerate() {
            if d {
                self.rooted[g] = Rooting::build(&self.adj[g]);
            }
        }
    }
}
