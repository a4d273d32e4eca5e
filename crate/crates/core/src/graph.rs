//! Exact integer-weighted undirected graphs, cut shores, partitions and atoms.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest total edge weight accepted at ingestion.
pub const MAX_TOTAL_WEIGHT: u128 = i64::MAX as u128;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{0}, {1}}} has zero weight")]
    ZeroWeight(usize, usize),
    #[error("total edge weight exceeds 2^63 - 1")]
    TotalWeightOverflow,
    #[error("shore is empty or contains every vertex")]
    TrivialShore,
    #[error("vertex counts differ: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("malformed graph input: {0}")]
    Parse(String),
}

/// One undirected edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: u64,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected graph with positive integer weights.
///
/// Edges are stored sorted by `(u, v)` with `u < v`; edge indices refer to
/// this canonical order. Each adjacency array lists `(neighbor, edge index)`
/// sorted by neighbor, which is the fixed array order used by the array oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, usize)>>,
    total: u64,
}

impl WeightedGraph {
    /// Builds a graph, rejecting self-loops, duplicate pairs and zero weights.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut list = Vec::new();
        for (a, b, w) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if w == 0 {
                return Err(GraphError::ZeroWeight(a.min(b), a.max(b)));
            }
            list.push(Edge { u: a.min(b), v: a.max(b), w });
        }
        list.sort_unstable();
        for pair in list.windows(2) {
            if pair[0].u == pair[1].u && pair[0].v == pair[1].v {
                return Err(GraphError::DuplicateEdge(pair[0].u, pair[0].v));
            }
        }
        Self::from_sorted(n, list)
    }

    /// Builds a graph from a multigraph description: parallel pairs are merged
    /// by summing weights, self-loops and zero weights are dropped.
    pub fn from_multi<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut merged: HashMap<(usize, usize), u128> = HashMap::new();
        for (a, b, w) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b || w == 0 {
                continue;
            }
            *merged.entry((a.min(b), a.max(b))).or_insert(0) += w as u128;
        }
        let mut list = Vec::with_capacity(merged.len());
        for ((u, v), w) in merged {
            if w > MAX_TOTAL_WEIGHT {
                return Err(GraphError::TotalWeightOverflow);
            }
            list.push(Edge { u, v, w: w as u64 });
        }
        list.sort_unstable();
        Self::from_sorted(n, list)
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let total: u128 = edges.iter().map(|e| e.w as u128).sum();
        if total > MAX_TOTAL_WEIGHT {
            return Err(GraphError::TotalWeightOverflow);
        }
        let mut adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
        }
        // Second pass keeps every list sorted by neighbor: smaller ids were
        // pushed above only for vertices acting as `u`.
        let mut lower: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            lower[e.v].push((e.u, i));
        }
        for (v, mut low) in lower.into_iter().enumerate() {
            low.append(&mut adj[v]);
            adj[v] = low;
        }
        Ok(Self {
            n,
            edges,
            adj,
            total: total as u64,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    /// `(neighbor, edge index)` pairs in array order.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn weighted_degree(&self, v: usize) -> u64 {
        self.adj[v].iter().map(|&(_, i)| self.edges[i].w).sum()
    }

    /// Index of edge `{a, b}`, if present.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        if a >= self.n || b >= self.n || a == b {
            return None;
        }
        let list = &self.adj[a];
        list.binary_search_by_key(&b, |&(x, _)| x)
            .ok()
            .map(|pos| list[pos].1)
    }

    /// Weight of `{a, b}`, zero for non-edges.
    pub fn weight(&self, a: usize, b: usize) -> u64 {
        self.edge_index(a, b).map_or(0, |i| self.edges[i].w)
    }

    pub fn min_edge_weight(&self) -> Option<u64> {
        self.edges.iter().map(|e| e.w).min()
    }

    pub fn max_edge_weight(&self) -> Option<u64> {
        self.edges.iter().map(|e| e.w).max()
    }

    /// Component label per vertex, labels dense in first-appearance order.
    pub fn components(&self) -> Partition {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &(y, _) in &self.adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        Partition::from_labels(&label)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().block_count() == 1
    }

    /// Same graph with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(self.m());
        for e in &self.edges {
            let w = (e.w as u128) * factor as u128;
            if w > MAX_TOTAL_WEIGHT {
                return Err(GraphError::TotalWeightOverflow);
            }
            edges.push(Edge { w: w as u64, ..*e });
        }
        Self::from_sorted(self.n, edges)
    }

    /// Same graph with each weight replaced by `f(edge)`; zero drops the edge.
    pub fn map_weights(&self, mut f: impl FnMut(&Edge) -> u64) -> Result<Self, GraphError> {
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                let w = f(e);
                (w > 0).then_some(Edge { w, ..*e })
            })
            .collect();
        Self::from_sorted(self.n, edges)
    }
}

/// Subset of `[0, n)` stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Shore {
    n: usize,
    words: Vec<u64>,
}

impl Shore {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Self {
        let mut s = Self::empty(n);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    /// Shore from the low `n` bits of `mask`; requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        let mut s = Self::empty(n);
        if n > 0 {
            let keep = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} outside shore universe {}", self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Empty or full.
    pub fn is_trivial(&self) -> bool {
        let k = self.len();
        k == 0 || k == self.n
    }

    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        for w in &mut s.words {
            *w = !*w;
        }
        let tail = self.n % 64;
        if tail != 0 {
            if let Some(last) = s.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        s
    }

    /// True iff exactly one of `a`, `b` is in the shore.
    pub fn separates(&self, a: usize, b: usize) -> bool {
        self.contains(a) != self.contains(b)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Shore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Dense block assignment of `[0, n)`.
///
/// Block ids are numbered in order of first appearance, so two partitions
/// with the same blocks compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    assignment: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// Partition induced by equal labels.
    pub fn from_labels<K: Eq + std::hash::Hash + Clone>(labels: &[K]) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let assignment = labels
            .iter()
            .map(|k| {
                let next = ids.len();
                *ids.entry(k.clone()).or_insert(next)
            })
            .collect();
        Self {
            assignment,
            blocks: ids.len(),
        }
    }

    pub fn single_block(n: usize) -> Self {
        Self {
            assignment: vec![0; n],
            blocks: usize::from(n > 0),
        }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            assignment: (0..n).collect(),
            blocks: n,
        }
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (v, &b) in self.assignment.iter().enumerate() {
            out[b].push(v);
        }
        out
    }

    /// Common refinement: vertices share a block iff they do in both.
    pub fn meet(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        let labels: Vec<(usize, usize)> = self
            .assignment
            .iter()
            .zip(&other.assignment)
            .map(|(&a, &b)| (a, b))
            .collect();
        Self::from_labels(&labels)
    }

    /// True iff every block of `self` lies inside one block of `other`.
    pub fn refines(&self, other: &Self) -> bool {
        self.meet(other).block_count() == self.block_count()
    }

    /// Union of the listed blocks as a shore.
    pub fn union_of_blocks(&self, blocks: impl IntoIterator<Item = usize>) -> Shore {
        let mut pick = vec![false; self.blocks];
        for b in blocks {
            pick[b] = true;
        }
        Shore::from_vertices(
            self.n(),
            (0..self.n()).filter(|&v| pick[self.assignment[v]]),
        )
    }
}

/// List of shores over a common vertex count.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShoreFamily {
    pub shores: Vec<Shore>,
}

impl ShoreFamily {
    pub fn new(shores: Vec<Shore>) -> Self {
        Self { shores }
    }

    pub fn len(&self) -> usize {
        self.shores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shores.is_empty()
    }
}

/// Total weight of edges with exactly one endpoint in `x`.
pub fn cut_weight(g: &WeightedGraph, x: &Shore) -> Result<u64, GraphError> {
    if x.n() != g.n() {
        return Err(GraphError::VertexCountMismatch(x.n(), g.n()));
    }
    if x.is_trivial() {
        return Err(GraphError::TrivialShore);
    }
    Ok(g.edges()
        .iter()
        .filter(|e| x.separates(e.u, e.v))
        .map(|e| e.w)
        .sum())
}

/// Coarsest partition in which no shore of `fam` separates two vertices of a block.
///
/// Refines one shore at a time; each step is linear in `v_count`.
pub fn atoms(v_count: usize, fam: &ShoreFamily) -> Partition {
    let mut label = vec![0usize; v_count];
    let mut blocks = usize::from(v_count > 0);
    let mut remap = Vec::new();
    for s in &fam.shores {
        remap.clear();
        remap.resize(2 * blocks, usize::MAX);
        let mut next = 0;
        for (v, l) in label.iter_mut().enumerate() {
            let key = 2 * *l + usize::from(s.contains(v));
            if remap[key] == usize::MAX {
                remap[key] = next;
                next += 1;
            }
            *l = remap[key];
        }
        blocks = next;
    }
    Partition::from_labels(&label)
}

/// Concatenation of two families over the same vertex count.
pub fn union_generating(
    fam1: &ShoreFamily,
    fam2: &ShoreFamily,
) -> Result<ShoreFamily, GraphError> {
    if let (Some(a), Some(b)) = (fam1.shores.first(), fam2.shores.first()) {
        if a.n() != b.n() {
            return Err(GraphError::VertexCountMismatch(a.n(), b.n()));
        }
    }
    let mut shores = fam1.shores.clone();
    shores.extend(fam2.shores.iter().cloned());
    Ok(ShoreFamily { shores })
}

/// Quotient graph: one vertex per block, crossing weights summed.
pub fn contract(g: &WeightedGraph, p: &Partition) -> WeightedGraph {
    assert_eq!(p.n(), g.n(), "partition must cover the graph's vertices");
    WeightedGraph::from_multi(
        p.block_count(),
        g.edges()
            .iter()
            .map(|e| (p.block_of(e.u), p.block_of(e.v), e.w)),
    )
    .expect("contraction cannot exceed the source graph's total weight")
}

pub fn total_weight(g: &WeightedGraph) -> u64 {
    g.total
}

/// Graph interchange format: weights are decimal strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize, String)>,
}

/// A parsed graph together with its fixed-point scale: input weights equal
/// stored weights divided by `10^decimals`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledGraph {
    pub graph: WeightedGraph,
    pub decimals: u32,
}

impl ScaledGraph {
    /// Renders a stored integer weight in input units.
    pub fn format_weight(&self, w: u128) -> String {
        format_fixed(w, self.decimals)
    }
}

/// Decimal rendering of `w / 10^decimals` without trailing zeros.
pub fn format_fixed(w: u128, decimals: u32) -> String {
    if decimals == 0 {
        return w.to_string();
    }
    let base = 10u128.pow(decimals);
    let (int, frac) = (w / base, w % base);
    if frac == 0 {
        return int.to_string();
    }
    let digits = format!("{:0width$}", frac, width = decimals as usize);
    format!("{int}.{}", digits.trim_end_matches('0'))
}

fn split_decimal(s: &str) -> Result<(String, String), GraphError> {
    let bad = || GraphError::Parse(format!("weight {s:?} is not a nonnegative decimal"));
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    Ok((int.to_string(), frac.trim_end_matches('0').to_string()))
}

/// Parses graph JSON, scaling decimal weights to integers by the smallest
/// power of ten that makes every weight integral.
pub fn parse_graph_json(text: &str) -> Result<ScaledGraph, GraphError> {
    let raw: GraphJson =
        serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
    let parts = raw
        .edges
        .iter()
        .map(|(_, _, w)| split_decimal(w.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let decimals = parts.iter().map(|(_, f)| f.len()).max().unwrap_or(0) as u32;
    if decimals > 18 {
        return Err(GraphError::Parse("more than 18 decimal places".into()));
    }
    let mut edges = Vec::with_capacity(raw.edges.len());
    for ((u, v, _), (int, frac)) in raw.edges.iter().zip(parts) {
        let digits = format!("{int}{frac:0<width$}", width = decimals as usize);
        let w: u128 = digits
            .trim_start_matches('0')
            .parse()
            .or_else(|_| if digits.bytes().all(|b| b == b'0') { Ok(0) } else { Err(()) })
            .map_err(|_| GraphError::TotalWeightOverflow)?;
        if w > MAX_TOTAL_WEIGHT {
            return Err(GraphError::TotalWeightOverflow);
        }
        edges.push((*u, *v, w as u64));
    }
    Ok(ScaledGraph {
        graph: WeightedGraph::new(raw.n, edges)?,
        decimals,
    })
}

/// Canonical JSON: edges in `(min endpoint, max endpoint)` order.
pub fn to_graph_json(g: &WeightedGraph) -> GraphJson {
    GraphJson {
        n: g.n(),
        edges: g
            .edges()
            .iter()
            .map(|e| (e.u, e.v, e.w.to_string()))
            .collect(),
    }
}

pub fn write_graph_json(g: &WeightedGraph) -> String {
    serde_json::to_string(&to_graph_json(g)).expect("graph JSON serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, w: u64) -> WeightedGraph {
        WeightedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n, w))).unwrap()
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(
            WeightedGraph::new(3, [(0, 0, 1)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            WeightedGraph::new(3, [(0, 1, 1), (1, 0, 2)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            WeightedGraph::new(3, [(0, 1, 0)]),
            Err(GraphError::ZeroWeight(0, 1))
        );
        assert!(matches!(
            WeightedGraph::new(2, [(0, 2, 1)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert_eq!(
            WeightedGraph::new(3, [(0, 1, 1 << 62), (1, 2, 1 << 62)]),
            Err(GraphError::TotalWeightOverflow)
        );
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let g = WeightedGraph::new(4, [(2, 0, 3), (0, 1, 1), (3, 1, 2), (2, 3, 5)]).unwrap();
        for v in 0..4 {
            let nb: Vec<usize> = g.neighbors(v).iter().map(|&(x, _)| x).collect();
            assert!(nb.windows(2).all(|p| p[0] < p[1]));
            for &(x, i) in g.neighbors(v) {
                assert!(g.neighbors(x).iter().any(|&(y, j)| y == v && j == i));
                assert_eq!(g.edge(i).other(v), x);
            }
        }
        assert_eq!(g.weight(3, 2), 5);
        assert_eq!(g.weight(0, 3), 0);
    }

    #[test]
    fn cycle_star_cut_is_two() {
        let g = cycle(4, 1);
        assert_eq!(cut_weight(&g, &Shore::from_vertices(4, [2])), Ok(2));
    }

    #[test]
    fn trivial_shore_is_an_error() {
        let g = cycle(4, 1);
        assert_eq!(
            cut_weight(&g, &Shore::empty(4)),
            Err(GraphError::TrivialShore)
        );
        assert_eq!(
            cut_weight(&g, &Shore::empty(4).complement()),
            Err(GraphError::TrivialShore)
        );
    }

    #[test]
    fn atoms_of_empty_and_single_families() {
        assert_eq!(atoms(5, &ShoreFamily::default()), Partition::single_block(5));
        let x = Shore::from_vertices(5, [1, 3]);
        let p = atoms(5, &ShoreFamily::new(vec![x]));
        assert_eq!(p.blocks(), vec![vec![0, 2, 4], vec![1, 3]]);
    }

    #[test]
    fn atoms_of_two_overlapping_shores() {
        let fam = ShoreFamily::new(vec![
            Shore::from_vertices(4, [0, 1]),
            Shore::from_vertices(4, [1, 2]),
        ]);
        assert_eq!(
            atoms(4, &fam).blocks(),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
    }

    #[test]
    fn union_generating_checks_vertex_counts() {
        let a = ShoreFamily::new(vec![Shore::from_vertices(3, [0])]);
        let b = ShoreFamily::new(vec![Shore::from_vertices(4, [0])]);
        assert_eq!(
            union_generating(&a, &b),
            Err(GraphError::VertexCountMismatch(3, 4))
        );
        let empty = union_generating(&ShoreFamily::default(), &ShoreFamily::default()).unwrap();
        assert!(empty.is_empty());
        assert_eq!(atoms(3, &empty).block_count(), 1);
        let twice = union_generating(&a, &a).unwrap();
        assert_eq!(atoms(3, &twice), atoms(3, &a));
    }

    #[test]
    fn contract_cycle_into_two_blocks() {
        let g = cycle(4, 1);
        let p = Partition::from_labels(&[0, 0, 1, 1]);
        let h = contract(&g, &p);
        assert_eq!(h.n(), 2);
        assert_eq!(h.edges(), &[Edge { u: 0, v: 1, w: 2 }]);
        assert_eq!(contract(&g, &Partition::singletons(4)), g);
    }

    #[test]
    fn total_weight_of_uniform_cycle() {
        assert_eq!(total_weight(&WeightedGraph::new(0, []).unwrap()), 0);
        assert_eq!(total_weight(&cycle(9, 7)), 63);
    }

    #[test]
    fn shore_set_algebra() {
        let a = Shore::from_vertices(70, [0, 5, 69]);
        let c = a.complement();
        assert_eq!(c.len(), 67);
        assert!(!c.contains(69) && c.contains(68));
        assert_eq!(a.union(&c).len(), 70);
        assert_eq!(a.difference(&Shore::from_vertices(70, [5])).to_vec(), vec![0, 69]);
        assert_eq!(Shore::from_mask(3, 0b1111).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn partition_meet_and_refinement() {
        let a = Partition::from_labels(&[0, 0, 1, 1]);
        let b = Partition::from_labels(&[5, 6, 6, 6]);
        let m = a.meet(&b);
        assert_eq!(m.blocks(), vec![vec![0], vec![1], vec![2, 3]]);
        assert!(m.refines(&a) && m.refines(&b));
        assert!(!a.refines(&b));
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let text = r#"{"n":3,"edges":[[2,1,"4"],[0,1,"2"]]}"#;
        let sg = parse_graph_json(text).unwrap();
        assert_eq!(sg.decimals, 0);
        assert_eq!(
            write_graph_json(&sg.graph),
            r#"{"n":3,"edges":[[0,1,"2"],[1,2,"4"]]}"#
        );
    }

    #[test]
    fn json_decimal_weights_are_fixed_point_scaled() {
        let sg = parse_graph_json(r#"{"n":3,"edges":[[0,1,"1.25"],[1,2,"3"]]}"#).unwrap();
        assert_eq!(sg.decimals, 2);
        assert_eq!(sg.graph.weight(0, 1), 125);
        assert_eq!(sg.graph.weight(1, 2), 300);
        assert_eq!(sg.format_weight(425), "4.25");
        assert_eq!(format_fixed(300, 2), "3");
        assert!(parse_graph_json(r#"{"n":2,"edges":[[0,1,"-1"]]}"#).is_err());
        assert!(parse_graph_json(r#"{"n":2,"edges":[[0,1,"0"]]}"#).is_err());
    }
}
