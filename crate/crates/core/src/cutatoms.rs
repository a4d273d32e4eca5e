//! Atoms of near-minimum cuts: generating sets from spanning forests of the
//! implicit pair graph of a tree, atom extraction by random subtree hashing,
//! and the combination over a set of trees.

use num_rational::Ratio;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::exec::{self, Exec};
use crate::graph::{Partition, WeightedGraph};
use crate::pipeline::reference::stoer_wagner;
use crate::query::{FaultMode, QueryLedger, SearchSim, SearchSpace};
use crate::rng::{self, tag};
use crate::treepack::{karger_trees, TreePackError, UnionFind};
use crate::tworespect::{CutEvaluator, RootedTree, TreeError, TwoRespectId};

/// `learn_cut_atoms` accepts thresholds up to `(1 + 1/16) * lambda`.
pub const MAX_THRESHOLD_RATIO: (u64, u64) = (17, 16);

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AtomsError {
    #[error("threshold {threshold} exceeds (1 + 1/16) * lambda = (17/16) * {lambda}")]
    ThresholdTooHigh { threshold: u64, lambda: u64 },
    #[error("need at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("delta must lie in (0, 1)")]
    BadDelta,
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Pack(#[from] TreePackError),
}

/// Which cuts under the threshold count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CutFamily {
    /// Every nontrivial shore.
    #[default]
    All,
    /// Only shores with at least two vertices on each side.
    NonStar,
}

impl CutFamily {
    pub fn admits_size(self, size: usize, n: usize) -> bool {
        match self {
            CutFamily::All => size >= 1 && size < n,
            CutFamily::NonStar => size >= 2 && size + 2 <= n,
        }
    }
}

/// Graph on tree edges with `{a, b}` adjacent iff the pair cut is in the
/// family and weighs at most the threshold. Never materialized.
pub struct ImplicitLGraph<'a> {
    ev: &'a CutEvaluator,
    threshold: u64,
    family: CutFamily,
    vertices: Vec<usize>,
}

impl<'a> ImplicitLGraph<'a> {
    pub fn new(ev: &'a CutEvaluator, threshold: u64, family: CutFamily) -> Self {
        Self {
            ev,
            threshold,
            family,
            vertices: ev.tree().tree_edges().collect(),
        }
    }

    /// Tree edges, in ascending child order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn admits(&self, id: TwoRespectId) -> bool {
        let t = self.ev.tree();
        self.family.admits_size(t.shore_size(id), t.n()) && self.ev.eval(id) <= self.threshold
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.admits(TwoRespectId::pair(a, b))
    }
}

/// Tree edges whose single-edge cut is in the family and under the threshold.
pub fn one_respecting_set(ev: &CutEvaluator, threshold: u64, family: CutFamily) -> Vec<usize> {
    let lg = ImplicitLGraph::new(ev, threshold, family);
    lg.vertices()
        .iter()
        .copied()
        .filter(|&c| lg.admits(TwoRespectId::One(c)))
        .collect()
}

/// Spanning forest of `lg` by Boruvka rounds. Each live component looks
/// for one outgoing L-edge with a charged Grover search over its candidate
/// pairs; a component whose search comes back empty is finished.
pub fn spanning_forest_l(lg: &ImplicitLGraph<'_>, sim: &mut SearchSim<'_>) -> Vec<(usize, usize)> {
    let verts = lg.vertices();
    let k = verts.len();
    let mut uf = UnionFind::new(k);
    // Set on every member of a component whose search came back empty;
    // cleared when a merge touches it.
    let mut finished = vec![false; k];
    let mut forest = Vec::new();
    loop {
        let roots: Vec<usize> = (0..k).map(|i| uf.find(i)).collect();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (i, &r) in roots.iter().enumerate() {
            members[r].push(i);
        }
        let mut found = Vec::new();
        for inside in &members {
            if inside.is_empty() || inside.len() == k || inside.iter().all(|&i| finished[i]) {
                continue;
            }
            let outside: Vec<usize> = (0..k).filter(|j| inside.binary_search(j).is_err()).collect();
            let width = outside.len();
            let mut space = SearchSpace::new(inside.len() * width, 1, |i: usize| {
                lg.is_edge(verts[inside[i / width]], verts[outside[i % width]])
            });
            match sim.grover_search("spanning_forest_l", &mut space) {
                Some(i) => found.push((inside[i / width], outside[i % width])),
                None => inside.iter().for_each(|&i| finished[i] = true),
            }
        }
        if found.is_empty() {
            break;
        }
        for (a, b) in found {
            if uf.union(a, b) {
                for &i in members[roots[a]].iter().chain(&members[roots[b]]) {
                    finished[i] = false;
                }
                forest.push((verts[a].min(verts[b]), verts[a].max(verts[b])));
            }
        }
    }
    forest.sort_unstable();
    forest
}

/// `Q = O(T)` plus the forest edges of `L(T)`; at most `2n - 3` ids whose
/// shores generate the atoms of every family cut under `threshold` that
/// 2-respects the tree.
pub fn generating_set_for_tree(
    ev: &CutEvaluator,
    threshold: u64,
    family: CutFamily,
    sim: &mut SearchSim<'_>,
) -> Vec<TwoRespectId> {
    let mut q: Vec<TwoRespectId> = one_respecting_set(ev, threshold, family)
        .into_iter()
        .map(TwoRespectId::One)
        .collect();
    let lg = ImplicitLGraph::new(ev, threshold, family);
    q.extend(
        spanning_forest_l(&lg, sim)
            .into_iter()
            .map(|(a, b)| TwoRespectId::pair(a, b)),
    );
    q
}

/// Atoms of the shores of `q` via random subtree additions modulo `n^3`.
///
/// Each id gets a uniform label; `T(c)` adds it, and a nested pair adds it on
/// the upper subtree and subtracts it on the lower one. Vertices with equal
/// keys share a block. Collisions can only merge atoms.
pub fn atoms_by_hashing(t: &RootedTree, q: &[TwoRespectId], seed: u64) -> Result<Partition, TreeError> {
    let n = t.n() as u64;
    let modulus = n.saturating_mul(n).saturating_mul(n).max(2);
    let mut rng = rng::stream(seed, tag::HASH);
    let mut ops = Vec::with_capacity(2 * q.len());
    for &id in q {
        // Validates the id.
        let _ = shore_size_checked(t, id)?;
        let label = rng.gen_range(0..modulus);
        match id {
            TwoRespectId::One(c) => ops.push((c, label)),
            TwoRespectId::Two(a, b) => {
                let (hi, lo) = if t.is_ancestor(a, b) {
                    (a, Some(b))
                } else if t.is_ancestor(b, a) {
                    (b, Some(a))
                } else {
                    ops.push((b, label));
                    (a, None)
                };
                ops.push((hi, label));
                if let Some(lo) = lo {
                    ops.push((lo, modulus - label));
                }
            }
        }
    }
    let keys = crate::tworespect::subtree_add_batch(t, &ops, modulus);
    Ok(Partition::from_labels(&keys))
}

fn shore_size_checked(t: &RootedTree, id: TwoRespectId) -> Result<usize, TreeError> {
    let ok = |c: usize| c < t.n() && c != t.root();
    match id {
        TwoRespectId::One(c) if ok(c) => Ok(t.shore_size(id)),
        TwoRespectId::Two(a, b) if a != b && ok(a) && ok(b) => Ok(t.shore_size(id)),
        _ => Err(TreeError::InvalidId(id)),
    }
}

/// Options for `learn_cut_atoms`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AtomsConfig {
    pub family: CutFamily,
    pub exec: Exec,
    pub faults: FaultMode,
}

/// Atoms of the family cuts of `h` weighing at most `threshold`.
///
/// Builds the tree set, computes a generating set and its hashed atoms per
/// tree, and returns the common refinement. Hashing is repeated
/// `ceil(log2((K + 1) / delta))` times per tree and the repeats are met,
/// which can only undo collisions. Search charges from every tree are added
/// to `ledger` in tree order.
pub fn learn_cut_atoms(
    h: &WeightedGraph,
    threshold: u64,
    delta: Ratio<u64>,
    seed: u64,
    config: AtomsConfig,
    ledger: &QueryLedger,
) -> Result<Partition, AtomsError> {
    let n = h.n();
    if n < 2 {
        return Err(AtomsError::TooFewVertices(n));
    }
    if *delta.numer() == 0 || delta >= Ratio::from_integer(1) {
        return Err(AtomsError::BadDelta);
    }
    let (lambda, _) = stoer_wagner(h).map_err(|_| AtomsError::TooFewVertices(n))?;
    let (num, den) = MAX_THRESHOLD_RATIO;
    if threshold as u128 * den as u128 > lambda as u128 * num as u128 {
        return Err(AtomsError::ThresholdTooHigh { threshold, lambda });
    }
    let trees = karger_trees(h, rng::derive(seed, tag::KARGER))?;
    let reps = hash_repeats(trees.len(), delta);
    let per_tree = exec::map_range(config.exec, trees.len(), |i| -> Result<_, AtomsError> {
        let tree = &trees[i];
        let tree_seed = rng::derive(rng::derive(seed, tag::ATOMS), i as u64);
        let t = RootedTree::from_graph_edges(h, tree, 0)?;
        let ev = CutEvaluator::build(h, &t);
        let local = QueryLedger::new();
        let mut sim = SearchSim::new(&local, rng::stream(tree_seed, tag::SEARCH)).with_faults(config.faults);
        let q = generating_set_for_tree(&ev, threshold, config.family, &mut sim);
        let mut p = Partition::single_block(n);
        for r in 0..reps {
            p = p.meet(&atoms_by_hashing(&t, &q, rng::derive(tree_seed, r as u64))?);
        }
        Ok((p, local.export()))
    });
    let mut out = Partition::single_block(n);
    for item in per_tree {
        let (p, charges) = item?;
        for (label, amount) in charges.breakdown {
            ledger.charge(&label, amount);
        }
        ledger.record_classical(charges.classical);
        out = out.meet(&p);
    }
    Ok(out)
}

/// `ceil(log2((trees + 1) / delta))`, at least 1.
pub fn hash_repeats(trees: usize, delta: Ratio<u64>) -> u32 {
    let x = (trees as f64 + 1.0) * *delta.denom() as f64 / *delta.numer() as f64;
    (x.log2().ceil() as u32).max(1)
}

/// Partition export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub blocks: Vec<Vec<usize>>,
}

pub fn partition_to_json(p: &Partition) -> PartitionJson {
    PartitionJson { blocks: p.blocks() }
}
