//! End-to-end minimum cut through oracle queries: minimum star, weight
//! range, sparsifier, near-minimum-cut atoms, learned contraction, and the
//! final comparison; plus cut-edge recovery and exact reference solvers.

pub mod reference;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cutatoms::{learn_cut_atoms, AtomsConfig, AtomsError, CutFamily};
use crate::exec::{self, Exec};
use crate::graph::{format_fixed, GraphError, Partition, Shore, WeightedGraph};
use crate::query::{
    FaultMode, LearnOutcome, LedgerJson, Model, OracleHandle, QueryError, QueryLedger, SearchSim,
    SearchSpace,
};
use crate::rng::{self, tag};
use crate::sparsify::{cut_sparsifier, SparsifyError};
use reference::stoer_wagner;

/// Contraction budget multiplier: at most `100 * tau * n` cross edges.
pub const BUDGET_FACTOR: u64 = 100;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PipelineError {
    #[error("need at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("exhaustive search is limited to 24 vertices, got {0}")]
    TooLargeForBruteForce(usize),
    #[error("graph has no edges")]
    NoEdges,
    #[error("contraction has more than {budget} cross edges")]
    OverBudget { budget: u64 },
    #[error("cut has more than {threshold} edges")]
    CutTooHeavy { threshold: u64 },
    #[error("partition covers {0} vertices, graph has {1}")]
    PartitionMismatch(usize, usize),
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sparsify(#[from] SparsifyError),
    #[error(transparent)]
    Atoms(#[from] AtomsError),
}

/// Unordered pairs `(a, b)`, `a < b`, in row-major order.
struct PairIndex {
    n: usize,
    starts: Vec<usize>,
}

impl PairIndex {
    fn new(n: usize) -> Self {
        let starts = (0..n).map(|a| a * n - a * (a + 1) / 2).collect();
        Self { n, starts }
    }

    fn len(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    fn decode(&self, i: usize) -> (usize, usize) {
        let a = self.starts.partition_point(|&s| s <= i) - 1;
        (a, a + 1 + i - self.starts[a])
    }
}

/// Adjacency-array entries `(v, index)` with 1-based indices, flattened.
struct EntryIndex {
    prefix: Vec<usize>,
}

impl EntryIndex {
    fn new(degrees: &[usize]) -> Self {
        let mut prefix = Vec::with_capacity(degrees.len() + 1);
        prefix.push(0);
        for &d in degrees {
            prefix.push(prefix.last().unwrap() + d);
        }
        Self { prefix }
    }

    fn len(&self) -> usize {
        *self.prefix.last().unwrap()
    }

    fn decode(&self, i: usize) -> (usize, usize) {
        let v = self.prefix.partition_point(|&s| s <= i) - 1;
        (v, i - self.prefix[v] + 1)
    }
}

/// All degrees by degree queries, charged one probe each.
fn query_degrees(h: &OracleHandle<'_>, label: &str) -> Result<Vec<usize>, PipelineError> {
    let degrees = (0..h.n())
        .map(|v| h.degree_query(v))
        .collect::<Result<Vec<_>, _>>()?;
    h.ledger().charge(label, h.n() as u64);
    Ok(degrees)
}

/// A vertex of minimum weighted degree and that degree.
///
/// Matrix model: minimum finding over vertices, each probe reading a full
/// row. Array model: degree queries, then minimum finding inside each bucket
/// of vertices with degree in `[2^(l-1), 2^l)` at `2^l` probes per vertex.
pub fn find_min_star(h: &OracleHandle<'_>, sim: &mut SearchSim<'_>) -> Result<(usize, u64), PipelineError> {
    let n = h.n();
    if n < 2 {
        return Err(PipelineError::TooFewVertices(n));
    }
    match h.model() {
        Model::Matrix => {
            let star = |v: usize| -> u64 {
                (0..n)
                    .filter(|&u| u != v)
                    .map(|u| h.matrix_query(v, u).expect("in range"))
                    .sum()
            };
            let mut seen = vec![0u64; n];
            let mut space = SearchSpace::new(n, (n - 1) as u64, |v| {
                seen[v] = star(v);
                (seen[v], v)
            });
            let v = sim.min_find("find_min_star", &mut space);
            Ok((v, seen[v]))
        }
        Model::Array => {
            let degrees = query_degrees(h, "find_min_star/degrees")?;
            if let Some(v) = degrees.iter().position(|&d| d == 0) {
                return Ok((v, 0));
            }
            let bucket_of = |d: usize| usize::BITS - d.leading_zeros();
            let buckets = degrees.iter().map(|&d| bucket_of(d)).max().unwrap_or(0);
            let mut best: Option<(u64, usize)> = None;
            for l in 1..=buckets {
                let members: Vec<usize> = (0..n).filter(|&v| bucket_of(degrees[v]) == l).collect();
                if members.is_empty() {
                    continue;
                }
                let star = |v: usize| -> u64 {
                    (1..=degrees[v])
                        .map(|i| h.array_query(v, i).expect("in range").1)
                        .sum()
                };
                let mut seen = vec![0u64; members.len()];
                let mut space = SearchSpace::new(members.len(), 1u64 << l, |i| {
                    seen[i] = star(members[i]);
                    (seen[i], members[i])
                });
                let i = sim.min_find("find_min_star", &mut space);
                let (v, w) = (members[i], seen[i]);
                if best.is_none_or(|(bw, bv)| (w, v) < (bw, bv)) {
                    best = Some((w, v));
                }
            }
            let (w, v) = best.expect("n >= 1 nonisolated vertex");
            Ok((v, w))
        }
    }
}

fn weight_search(h: &OracleHandle<'_>, sim: &mut SearchSim<'_>, label: &str, max: bool) -> Result<u64, PipelineError> {
    let n = h.n();
    if n < 2 {
        return Err(PipelineError::NoEdges);
    }
    // Key: smaller is better; non-edges rank last.
    let key = |w: u64| -> u64 {
        match (w, max) {
            (0, _) => u64::MAX,
            (w, true) => u64::MAX - 1 - w,
            (w, false) => w,
        }
    };
    let best = match h.model() {
        Model::Matrix => {
            let pairs = PairIndex::new(n);
            let mut space = SearchSpace::new(pairs.len(), 1, |i| {
                let (a, b) = pairs.decode(i);
                key(h.matrix_query(a, b).expect("in range"))
            });
            let i = sim.min_find(label, &mut space);
            let (a, b) = pairs.decode(i);
            h.matrix_query(a, b)?
        }
        Model::Array => {
            let entries = EntryIndex::new(&query_degrees(h, &format!("{label}/degrees"))?);
            if entries.len() == 0 {
                return Err(PipelineError::NoEdges);
            }
            let mut space = SearchSpace::new(entries.len(), 1, |i| {
                let (v, j) = entries.decode(i);
                key(h.array_query(v, j).expect("in range").1)
            });
            let i = sim.min_find(label, &mut space);
            let (v, j) = entries.decode(i);
            h.array_query(v, j)?.1
        }
    };
    if best == 0 {
        return Err(PipelineError::NoEdges);
    }
    Ok(best)
}

/// Maximum edge weight.
pub fn find_max_weight(h: &OracleHandle<'_>, sim: &mut SearchSim<'_>) -> Result<u64, PipelineError> {
    weight_search(h, sim, "find_max_weight", true)
}

/// Minimum edge weight.
pub fn find_min_weight(h: &OracleHandle<'_>, sim: &mut SearchSim<'_>) -> Result<u64, PipelineError> {
    weight_search(h, sim, "find_min_weight", false)
}

/// `floor(100 * max_weight * n / min_weight)`.
pub fn contraction_budget(n: usize, min_weight: u64, max_weight: u64) -> u64 {
    let b = BUDGET_FACTOR as u128 * max_weight as u128 * n as u128 / min_weight as u128;
    b.min(u64::MAX as u128) as u64
}

/// Result of learning a contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contraction {
    Learned(WeightedGraph),
    OverBudget,
}

/// Learns `contract(g, p)` with a bounded search for the cross-block edges
/// (at most `budget` of them), then one weight query per edge found. A
/// single-block partition yields the one-vertex graph after the same search.
pub fn learn_contraction(
    h: &OracleHandle<'_>,
    p: &Partition,
    budget: u64,
    sim: &mut SearchSim<'_>,
) -> Result<Contraction, PipelineError> {
    let n = h.n();
    if p.n() != n {
        return Err(PipelineError::PartitionMismatch(p.n(), n));
    }
    if budget == 0 {
        // Bounded search needs a positive threshold; only a single block
        // has no cross edges at all.
        return Ok(if p.block_count() < 2 {
            Contraction::Learned(WeightedGraph::new(1, [])?)
        } else {
            Contraction::OverBudget
        });
    }
    let label = "learn_contraction";
    let found: Vec<(usize, usize, u64)> = match h.model() {
        Model::Matrix => {
            let pairs = PairIndex::new(n);
            let mut space = SearchSpace::new(pairs.len(), 1, |i| {
                let (a, b) = pairs.decode(i);
                p.block_of(a) != p.block_of(b) && h.matrix_query(a, b).expect("in range") > 0
            });
            match sim.bounded_learn(label, &mut space, budget) {
                LearnOutcome::OverThreshold => return Ok(Contraction::OverBudget),
                LearnOutcome::Marked(idx) => idx
                    .into_iter()
                    .map(|i| {
                        let (a, b) = pairs.decode(i);
                        Ok((a, b, h.matrix_query(a, b)?))
                    })
                    .collect::<Result<_, QueryError>>()?,
            }
        }
        Model::Array => {
            let entries = EntryIndex::new(&query_degrees(h, "learn_contraction/degrees")?);
            if entries.len() == 0 {
                return Ok(Contraction::Learned(WeightedGraph::new(p.block_count(), [])?));
            }
            // Each edge is marked once, at its lower endpoint's entry.
            let mut space = SearchSpace::new(entries.len(), 1, |i| {
                let (v, j) = entries.decode(i);
                let (x, _) = h.array_query(v, j).expect("in range");
                v < x && p.block_of(v) != p.block_of(x)
            });
            match sim.bounded_learn(label, &mut space, budget) {
                LearnOutcome::OverThreshold => return Ok(Contraction::OverBudget),
                LearnOutcome::Marked(idx) => idx
                    .into_iter()
                    .map(|i| {
                        let (v, j) = entries.decode(i);
                        let (u, w) = h.array_query(v, j)?;
                        Ok((v, u, w))
                    })
                    .collect::<Result<_, QueryError>>()?,
            }
        }
    };
    h.ledger().charge("learn_contraction/weights", found.len() as u64);
    let edges = found
        .into_iter()
        .map(|(a, b, w)| (p.block_of(a), p.block_of(b), w));
    Ok(Contraction::Learned(WeightedGraph::from_multi(p.block_count(), edges)?))
}

/// Every edge crossing `x`, found by a bounded search with threshold
/// `floor(max_weight * (n - 1) / min_weight)`, the most edges a minimum cut
/// can have.
pub fn find_cut_edges(
    h: &OracleHandle<'_>,
    x: &Shore,
    sim: &mut SearchSim<'_>,
) -> Result<Vec<(usize, usize, u64)>, PipelineError> {
    let n = h.n();
    if x.n() != n {
        return Err(GraphError::VertexCountMismatch(x.n(), n).into());
    }
    if x.is_trivial() {
        return Err(GraphError::TrivialShore.into());
    }
    let beta = find_max_weight(h, sim)?;
    let alpha = find_min_weight(h, sim)?;
    let threshold = (beta as u128 * (n - 1) as u128 / alpha as u128) as u64;
    let label = "find_cut_edges";
    let found: Vec<(usize, usize, u64)> = match h.model() {
        Model::Matrix => {
            let pairs = PairIndex::new(n);
            let mut space = SearchSpace::new(pairs.len(), 1, |i| {
                let (a, b) = pairs.decode(i);
                x.separates(a, b) && h.matrix_query(a, b).expect("in range") > 0
            });
            match sim.bounded_learn(label, &mut space, threshold) {
                LearnOutcome::OverThreshold => return Err(PipelineError::CutTooHeavy { threshold }),
                LearnOutcome::Marked(idx) => idx
                    .into_iter()
                    .map(|i| {
                        let (a, b) = pairs.decode(i);
                        Ok((a, b, h.matrix_query(a, b)?))
                    })
                    .collect::<Result<_, QueryError>>()?,
            }
        }
        Model::Array => {
            let entries = EntryIndex::new(&query_degrees(h, "find_cut_edges/degrees")?);
            let mut space = SearchSpace::new(entries.len(), 1, |i| {
                let (v, j) = entries.decode(i);
                let (u, _) = h.array_query(v, j).expect("in range");
                v < u && x.separates(v, u)
            });
            match sim.bounded_learn(label, &mut space, threshold) {
                LearnOutcome::OverThreshold => return Err(PipelineError::CutTooHeavy { threshold }),
                LearnOutcome::Marked(idx) => idx
                    .into_iter()
                    .map(|i| {
                        let (v, j) = entries.decode(i);
                        let (u, w) = h.array_query(v, j)?;
                        Ok((v.min(u), v.max(u), w))
                    })
                    .collect::<Result<_, QueryError>>()?,
            }
        }
    };
    h.ledger().charge("find_cut_edges/weights", found.len() as u64);
    let mut out = found;
    out.sort_unstable();
    Ok(out)
}

/// Reads the whole graph through the oracle.
fn read_graph(h: &OracleHandle<'_>) -> Result<WeightedGraph, PipelineError> {
    let n = h.n();
    let mut edges = Vec::new();
    match h.model() {
        Model::Matrix => {
            for a in 0..n {
                for b in a + 1..n {
                    let w = h.matrix_query(a, b)?;
                    if w > 0 {
                        edges.push((a, b, w));
                    }
                }
            }
        }
        Model::Array => {
            for v in 0..n {
                for i in 1..=h.degree_query(v)? {
                    let (u, w) = h.array_query(v, i)?;
                    if v < u {
                        edges.push((v, u, w));
                    }
                }
            }
        }
    }
    Ok(WeightedGraph::new(n, edges)?)
}

/// Modeled cost of the sparsifier: `ceil(sqrt(n^3))` probes in the matrix
/// model and `ceil(sqrt(m * n))` in the array model.
pub fn sparsifier_charge(model: Model, n: usize, m: usize) -> u64 {
    let n = n as u128;
    match model {
        Model::Matrix => crate::query::ceil_sqrt(n * n * n),
        Model::Array => crate::query::ceil_sqrt(m as u128 * n),
    }
}

/// Pipeline knobs.
#[derive(Clone, Copy, Debug)]
pub struct PipelineConfig {
    pub eps: Ratio<u64>,
    pub delta: Ratio<u64>,
    pub faults: FaultMode,
    pub exec: Exec,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            eps: Ratio::new(1, 100),
            delta: Ratio::new(1, 20),
            faults: FaultMode::Off,
            exec: Exec::default(),
        }
    }
}

/// How the answer was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Disconnected,
    /// The atoms form one block; the minimum star is the answer.
    SingleAtom,
    /// The minimum star is at most the contracted graph's minimum cut.
    Star,
    Contraction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCut {
    pub lambda: u64,
    pub shore: Shore,
    pub decision: Decision,
    pub ledger: LedgerJson,
    /// Charges of the atom computation, which queries the sparsifier rather
    /// than the input graph.
    pub atoms_ledger: LedgerJson,
    pub partition: Option<Partition>,
    pub contraction: Option<WeightedGraph>,
    pub min_weight: u64,
    pub max_weight: u64,
}

/// Minimum cut of the graph behind `h`.
pub fn min_cut(h: &OracleHandle<'_>, seed: u64, config: PipelineConfig) -> Result<MinCut, PipelineError> {
    let n = h.n();
    if n < 2 {
        return Err(PipelineError::TooFewVertices(n));
    }
    let ledger = h.ledger();
    let atoms_ledger = QueryLedger::new();
    let mut sim = SearchSim::new(ledger, rng::stream(seed, tag::SEARCH)).with_faults(config.faults);
    let finish = |lambda, shore, decision, partition, contraction, alpha, beta| MinCut {
        lambda,
        shore,
        decision,
        ledger: ledger.export(),
        atoms_ledger: atoms_ledger.export(),
        partition,
        contraction,
        min_weight: alpha,
        max_weight: beta,
    };
    let (star, d_min) = find_min_star(h, &mut sim)?;
    let star_shore = Shore::from_vertices(n, [star]);
    if d_min == 0 {
        return Ok(finish(0, star_shore, Decision::Disconnected, None, None, 0, 0));
    }
    let beta = find_max_weight(h, &mut sim)?;
    let alpha = find_min_weight(h, &mut sim)?;
    let g = read_graph(h)?;
    ledger.charge("cut_sparsifier", sparsifier_charge(h.model(), n, g.m()));
    if !g.is_connected() {
        let comps = g.components();
        let shore = comps.union_of_blocks([comps.block_of(0)]);
        return Ok(finish(0, shore, Decision::Disconnected, None, None, alpha, beta));
    }
    let sparse = cut_sparsifier(&g, config.eps, rng::derive(seed, tag::SPARSIFY))?;
    let (lambda_h, _) = stoer_wagner(&sparse.graph)?;
    let threshold = lambda_h * 101 / 100;
    log::debug!(
        "seed {seed}: sparsifier keeps {} of {} edges, cut threshold {threshold}",
        sparse.graph.m(),
        g.m()
    );
    let atoms_config = AtomsConfig {
        family: CutFamily::NonStar,
        exec: config.exec,
        faults: config.faults,
    };
    let p = learn_cut_atoms(
        &sparse.graph,
        threshold,
        config.delta,
        rng::derive(seed, tag::ATOMS),
        atoms_config,
        &atoms_ledger,
    )?;
    // The search runs even for a single block, whose contraction is one
    // vertex with no cut; the charge does not depend on the outcome.
    let budget = contraction_budget(n, alpha, beta);
    let contracted = match learn_contraction(h, &p, budget, &mut sim)? {
        Contraction::Learned(c) => c,
        Contraction::OverBudget => return Err(PipelineError::OverBudget { budget }),
    };
    log::debug!(
        "seed {seed}: {} atoms, contraction has {} edges (budget {budget})",
        p.block_count(),
        contracted.m()
    );
    if contracted.n() < 2 {
        return Ok(finish(d_min, star_shore, Decision::SingleAtom, Some(p), Some(contracted), alpha, beta));
    }
    let (lambda_c, shore_c) = stoer_wagner(&contracted)?;
    if d_min <= lambda_c {
        return Ok(finish(d_min, star_shore, Decision::Star, Some(p), Some(contracted), alpha, beta));
    }
    let shore = p.union_of_blocks(shore_c.iter());
    Ok(finish(lambda_c, shore, Decision::Contraction, Some(p), Some(contracted), alpha, beta))
}

/// Outcome of repeated runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Majority {
    /// The first run that reported the winning weight.
    pub result: MinCut,
    pub votes: usize,
    pub repeats: usize,
    /// Charges summed over every run.
    pub ledger: LedgerJson,
}

/// Seed of run `i` among `repeats`; a single run uses `seed` itself.
pub fn repeat_seed(seed: u64, i: usize, repeats: usize) -> u64 {
    if repeats == 1 {
        seed
    } else {
        rng::derive(rng::derive(seed, tag::REPEAT), i as u64)
    }
}

/// Runs `min_cut` `repeats` times with derived seeds and keeps the most
/// frequent weight, breaking ties toward the smaller weight. Failed runs
/// cast no vote.
pub fn majority_min_cut(
    g: &WeightedGraph,
    model: Model,
    seed: u64,
    repeats: usize,
    config: PipelineConfig,
) -> Result<Majority, PipelineError> {
    assert!(repeats >= 1, "at least one run");
    let runs = exec::map_range(config.exec, repeats, |i| {
        let ledger = QueryLedger::new();
        let h = OracleHandle::new(g, model, &ledger);
        // Runs are already spread over threads; keep each one sequential.
        let inner = PipelineConfig {
            exec: if repeats > 1 { Exec::Sequential } else { config.exec },
            ..config
        };
        min_cut(&h, repeat_seed(seed, i, repeats), inner)
    });
    let total = QueryLedger::new();
    let mut tally: std::collections::BTreeMap<u64, usize> = Default::default();
    let mut first_error = None;
    let mut ok = Vec::new();
    for run in runs {
        match run {
            Ok(r) => {
                *tally.entry(r.lambda).or_insert(0) += 1;
                merge_into(&total, &r.ledger);
                ok.push(r);
            }
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    let Some((&lambda, &votes)) = tally.iter().max_by_key(|&(&l, &c)| (c, std::cmp::Reverse(l))) else {
        return Err(first_error.expect("some run failed"));
    };
    let result = ok
        .into_iter()
        .find(|r| r.lambda == lambda)
        .expect("winner came from a run");
    Ok(Majority {
        result,
        votes,
        repeats,
        ledger: total.export(),
    })
}

fn merge_into(total: &QueryLedger, part: &LedgerJson) {
    total.record_classical(part.classical);
    for (label, &amount) in &part.breakdown {
        total.charge(label, amount);
    }
}

/// Result export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultJson {
    pub lambda: String,
    pub shore: Vec<usize>,
    pub scale: String,
    pub ledger: LedgerJson,
    pub seed: u64,
    pub model: Model,
}

/// `lambda` in input units; `scale` is the fixed-point unit of the parsed
/// weights, `1` or `1/10^decimals`.
pub fn result_json(r: &MinCut, ledger: &LedgerJson, decimals: u32, seed: u64, model: Model) -> ResultJson {
    ResultJson {
        lambda: format_fixed(r.lambda as u128, decimals),
        shore: r.shore.to_vec(),
        scale: if decimals == 0 {
            "1".into()
        } else {
            format!("1/{}", 10u128.pow(decimals))
        },
        ledger: ledger.clone(),
        seed,
        model,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{contract, cut_weight};
    use crate::rng::stream;
    use reference::brute_min_cut;

    fn sim(ledger: &QueryLedger) -> SearchSim<'_> {
        SearchSim::new(ledger, stream(11, tag::SEARCH))
    }

    fn dumbbell() -> WeightedGraph {
        let mut edges = Vec::new();
        for base in [0, 4] {
            for u in 0..4 {
                for v in u + 1..4 {
                    edges.push((base + u, base + v, 1));
                }
            }
        }
        edges.push((3, 4, 1));
        WeightedGraph::new(8, edges).unwrap()
    }

    #[test]
    fn pair_and_entry_indices_roundtrip() {
        let pairs = PairIndex::new(5);
        let all: Vec<_> = (0..pairs.len()).map(|i| pairs.decode(i)).collect();
        let want: Vec<_> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        assert_eq!(all, want);
        let entries = EntryIndex::new(&[2, 0, 1]);
        assert_eq!(entries.len(), 3);
        assert_eq!(
            (0..3).map(|i| entries.decode(i)).collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (2, 1)]
        );
    }

    #[test]
    fn min_star_of_a_star() {
        let g = WeightedGraph::new(5, (1..5).map(|v| (0, v, 1))).unwrap();
        for model in [Model::Matrix, Model::Array] {
            let ledger = QueryLedger::new();
            let h = OracleHandle::new(&g, model, &ledger);
            let (v, w) = find_min_star(&h, &mut sim(&ledger)).unwrap();
            assert!(v != 0 && w == 1);
        }
    }

    #[test]
    fn weight_range() {
        let g = WeightedGraph::new(4, [(0, 1, 3), (1, 2, 9), (2, 3, 3)]).unwrap();
        for model in [Model::Matrix, Model::Array] {
            let ledger = QueryLedger::new();
            let h = OracleHandle::new(&g, model, &ledger);
            assert_eq!(find_max_weight(&h, &mut sim(&ledger)), Ok(9));
            assert_eq!(find_min_weight(&h, &mut sim(&ledger)), Ok(3));
        }
        let empty = WeightedGraph::new(3, []).unwrap();
        let ledger = QueryLedger::new();
        let h = OracleHandle::new(&empty, Model::Matrix, &ledger);
        assert_eq!(find_max_weight(&h, &mut sim(&ledger)), Err(PipelineError::NoEdges));
    }

    #[test]
    fn dumbbell_contraction_is_the_bridge() {
        let g = dumbbell();
        let p = Partition::from_labels(&[0, 0, 0, 0, 1, 1, 1, 1]);
        for model in [Model::Matrix, Model::Array] {
            let ledger = QueryLedger::new();
            let h = OracleHandle::new(&g, model, &ledger);
            let c = learn_contraction(&h, &p, 10, &mut sim(&ledger)).unwrap();
            assert_eq!(c, Contraction::Learned(WeightedGraph::new(2, [(0, 1, 1)]).unwrap()));
            assert_eq!(c, Contraction::Learned(contract(&g, &p)));
            assert_eq!(
                learn_contraction(&h, &p, 0, &mut sim(&ledger)).unwrap(),
                Contraction::OverBudget
            );
        }
    }

    #[test]
    fn cut_edges_of_a_star_and_a_bridge() {
        let k4 = WeightedGraph::new(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)])
            .unwrap();
        let ledger = QueryLedger::new();
        let h = OracleHandle::new(&k4, Model::Matrix, &ledger);
        let edges = find_cut_edges(&h, &Shore::from_vertices(4, [2]), &mut sim(&ledger)).unwrap();
        assert_eq!(edges, vec![(0, 2, 1), (1, 2, 1), (2, 3, 1)]);
        let g = dumbbell();
        let h = OracleHandle::new(&g, Model::Array, &ledger);
        let edges = find_cut_edges(&h, &Shore::from_vertices(8, 0..4), &mut sim(&ledger)).unwrap();
        assert_eq!(edges, vec![(3, 4, 1)]);
    }

    #[test]
    fn path_and_cycle_min_cuts() {
        let path = WeightedGraph::new(3, [(0, 1, 2), (1, 2, 5)]).unwrap();
        let c4 = WeightedGraph::new(4, (0..4).map(|i| (i, (i + 1) % 4, 1))).unwrap();
        for model in [Model::Matrix, Model::Array] {
            let ledger = QueryLedger::new();
            let h = OracleHandle::new(&path, model, &ledger);
            let r = min_cut(&h, 1, PipelineConfig::default()).unwrap();
            assert_eq!((r.lambda, r.shore.to_vec()), (2, vec![0]));
            let ledger = QueryLedger::new();
            let h = OracleHandle::new(&c4, model, &ledger);
            let r = min_cut(&h, 1, PipelineConfig::default()).unwrap();
            assert_eq!(r.lambda, 2);
            assert_eq!(cut_weight(&c4, &r.shore).unwrap(), 2);
            assert_eq!(r.ledger.quantum_charge, r.ledger.breakdown.values().sum::<u64>());
        }
    }

    #[test]
    fn dumbbell_answer_comes_from_the_contraction() {
        let g = dumbbell();
        let ledger = QueryLedger::new();
        let h = OracleHandle::new(&g, Model::Matrix, &ledger);
        let r = min_cut(&h, 4, PipelineConfig::default()).unwrap();
        assert_eq!(r.lambda, 1);
        assert_eq!(r.decision, Decision::Contraction);
        assert_eq!(r.shore.len(), 4);
        assert_eq!(brute_min_cut(&g).unwrap().0, 1);
    }

    #[test]
    fn disconnected_inputs_report_zero() {
        let g = WeightedGraph::new(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        let ledger = QueryLedger::new();
        let h = OracleHandle::new(&g, Model::Matrix, &ledger);
        let r = min_cut(&h, 0, PipelineConfig::default()).unwrap();
        assert_eq!((r.lambda, r.decision), (0, Decision::Disconnected));
        assert_eq!(cut_weight(&g, &r.shore).unwrap(), 0);
    }

    #[test]
    fn majority_and_json() {
        let g = dumbbell();
        let m = majority_min_cut(&g, Model::Array, 3, 5, PipelineConfig::default()).unwrap();
        assert_eq!(m.result.lambda, 1);
        assert_eq!(m.votes, 5);
        let json = serde_json::to_value(result_json(&m.result, &m.ledger, 2, 3, Model::Array)).unwrap();
        assert_eq!(json["lambda"], "0.01");
        assert_eq!(json["scale"], "1/100");
        assert_eq!(json["model"], "array");
    }
}
