//! Oracle access in the adjacency-matrix and adjacency-array models, query
//! ledgers, and simulated quantum search primitives.
//!
//! The primitives run an exact classical scan in randomized order and charge
//! the quantum query cost of the corresponding search algorithm with unit
//! constant: square roots are rounded up and multiplied by the space's
//! cost per probe.

use std::cell::{Cell, RefCell};
use std::collections::BTreeMap;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::graph::WeightedGraph;
use crate::rng::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Matrix,
    Array,
}

impl std::str::FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "matrix" => Ok(Model::Matrix),
            "array" => Ok(Model::Array),
            other => Err(format!("unknown model {other:?}; expected matrix or array")),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("matrix query on the diagonal ({0}, {0})")]
    SameVertex(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("array index {index} out of range for vertex {vertex} of degree {degree}")]
    IndexOutOfRange {
        vertex: usize,
        index: usize,
        degree: usize,
    },
    #[error("{0:?}-model query on an oracle in the other model")]
    WrongModel(Model),
}

/// Query counters for one run.
///
/// `classical` counts oracle answers. `quantum_charge` accumulates the
/// modeled cost of the quantum algorithm and always equals the sum of
/// `breakdown`.
#[derive(Debug, Default)]
pub struct QueryLedger {
    classical: Cell<u64>,
    quantum: Cell<u64>,
    breakdown: RefCell<BTreeMap<String, u64>>,
    decomposition: RefCell<BTreeMap<String, u64>>,
}

/// Serialized ledger.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerJson {
    pub classical: u64,
    pub quantum_charge: u64,
    pub breakdown: BTreeMap<String, u64>,
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record_classical(&self, count: u64) {
        self.classical.set(self.classical.get() + count);
    }

    /// Adds `amount` to the quantum charge under `label`.
    pub fn charge(&self, label: &str, amount: u64) {
        self.quantum.set(self.quantum.get() + amount);
        *self
            .breakdown
            .borrow_mut()
            .entry(label.to_string())
            .or_insert(0) += amount;
    }

    /// Records the per-iteration cost of a bounded search next to its
    /// flat charge. Does not touch `quantum_charge`.
    pub fn note_decomposition(&self, label: &str, amount: u64) {
        *self
            .decomposition
            .borrow_mut()
            .entry(label.to_string())
            .or_insert(0) += amount;
    }

    pub fn classical(&self) -> u64 {
        self.classical.get()
    }

    pub fn quantum_charge(&self) -> u64 {
        self.quantum.get()
    }

    pub fn breakdown(&self) -> BTreeMap<String, u64> {
        self.breakdown.borrow().clone()
    }

    pub fn decomposition(&self) -> BTreeMap<String, u64> {
        self.decomposition.borrow().clone()
    }

    pub fn export(&self) -> LedgerJson {
        LedgerJson {
            classical: self.classical(),
            quantum_charge: self.quantum_charge(),
            breakdown: self.breakdown(),
        }
    }
}

/// Counted access to a graph in one query model.
#[derive(Clone, Copy)]
pub struct OracleHandle<'a> {
    graph: &'a WeightedGraph,
    model: Model,
    ledger: &'a QueryLedger,
}

impl<'a> OracleHandle<'a> {
    pub fn new(graph: &'a WeightedGraph, model: Model, ledger: &'a QueryLedger) -> Self {
        Self {
            graph,
            model,
            ledger,
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn ledger(&self) -> &'a QueryLedger {
        self.ledger
    }

    /// Backing graph, for reference checks only; algorithms query instead.
    pub fn graph(&self) -> &'a WeightedGraph {
        self.graph
    }

    /// Weight of `{u, v}`, zero for non-edges.
    pub fn matrix_query(&self, u: usize, v: usize) -> Result<u64, QueryError> {
        if self.model != Model::Matrix {
            return Err(QueryError::WrongModel(Model::Matrix));
        }
        for x in [u, v] {
            if x >= self.graph.n() {
                return Err(QueryError::VertexOutOfRange(x));
            }
        }
        if u == v {
            return Err(QueryError::SameVertex(u));
        }
        self.ledger.record_classical(1);
        Ok(self.graph.weight(u, v))
    }

    /// The `index`-th neighbor of `v` (1-based) and the connecting weight.
    pub fn array_query(&self, v: usize, index: usize) -> Result<(usize, u64), QueryError> {
        if self.model != Model::Array {
            return Err(QueryError::WrongModel(Model::Array));
        }
        if v >= self.graph.n() {
            return Err(QueryError::VertexOutOfRange(v));
        }
        let list = self.graph.neighbors(v);
        if index == 0 || index > list.len() {
            return Err(QueryError::IndexOutOfRange {
                vertex: v,
                index,
                degree: list.len(),
            });
        }
        self.ledger.record_classical(1);
        let (x, e) = list[index - 1];
        Ok((x, self.graph.edge(e).w))
    }

    pub fn degree_query(&self, v: usize) -> Result<usize, QueryError> {
        if self.model != Model::Array {
            return Err(QueryError::WrongModel(Model::Array));
        }
        if v >= self.graph.n() {
            return Err(QueryError::VertexOutOfRange(v));
        }
        self.ledger.record_classical(1);
        Ok(self.graph.degree(v))
    }
}

/// Search domain `[0, size)` with an evaluator consuming oracle queries.
pub struct SearchSpace<F> {
    pub size: usize,
    /// Oracle queries spent by one evaluation.
    pub cost_per_probe: u64,
    pub eval: F,
}

impl<F> SearchSpace<F> {
    pub fn new(size: usize, cost_per_probe: u64, eval: F) -> Self {
        assert!(size >= 1, "search spaces are nonempty");
        Self {
            size,
            cost_per_probe,
            eval,
        }
    }
}

/// Result of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LearnOutcome {
    /// Every marked index, ascending.
    Marked(Vec<usize>),
    /// More than the threshold are marked.
    OverThreshold,
}

/// `ceil(sqrt(x))`.
pub fn ceil_sqrt(x: u128) -> u64 {
    let r = x.isqrt();
    (if r * r == x { r } else { r + 1 }) as u64
}

/// `ceil(sqrt(num / den))` for `den > 0`.
pub fn ceil_sqrt_ratio(num: u128, den: u128) -> u64 {
    // Smallest r with r^2 * den >= num.
    let mut r = ceil_sqrt(num.div_ceil(den)) as u128;
    while r > 0 && (r - 1) * (r - 1) * den >= num {
        r -= 1;
    }
    while r * r * den < num {
        r += 1;
    }
    r as u64
}

pub fn grover_charge(size: usize, cost: u64) -> u64 {
    ceil_sqrt(size as u128) * cost
}

pub fn exact_search_charge(size: usize, k: usize, cost: u64) -> u64 {
    ceil_sqrt_ratio(size as u128, k as u128) * cost
}

pub fn bounded_learn_charge(size: usize, t: u64, cost: u64) -> u64 {
    ceil_sqrt(size as u128 * t as u128) * cost
}

/// Sum of the per-iteration exact-search charges for `k = t..1` plus the
/// closing Grover sweep.
pub fn bounded_learn_decomposition(size: usize, t: u64, cost: u64) -> u64 {
    let n = size as u128;
    // Past k >= size every term is ceil(sqrt(size / k)) = 1.
    let head = t.min(size as u64);
    let mut total: u128 = (1..=head as u128)
        .map(|k| ceil_sqrt_ratio(n, k) as u128)
        .sum();
    total += (t - head) as u128;
    total += ceil_sqrt(n) as u128;
    (total * cost as u128).min(u64::MAX as u128) as u64
}

/// Whether search outcomes may be corrupted with the failure probabilities
/// of the underlying quantum algorithms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FaultMode {
    #[default]
    Off,
    /// Grover misses with probability 1/10, minimum finding returns an
    /// arbitrary index with probability 1/3, and an over-threshold bounded
    /// search goes unreported with probability 1/10.
    Inject,
}

/// Runs simulated search primitives against one ledger.
pub struct SearchSim<'l> {
    ledger: &'l QueryLedger,
    rng: Rng,
    faults: FaultMode,
}

impl<'l> SearchSim<'l> {
    pub fn new(ledger: &'l QueryLedger, rng: Rng) -> Self {
        Self {
            ledger,
            rng,
            faults: FaultMode::Off,
        }
    }

    pub fn with_faults(mut self, faults: FaultMode) -> Self {
        self.faults = faults;
        self
    }

    pub fn ledger(&self) -> &'l QueryLedger {
        self.ledger
    }

    fn fault(&mut self, numerator: u32, denominator: u32) -> bool {
        self.faults == FaultMode::Inject && self.rng.gen_ratio(numerator, denominator)
    }

    fn start(&mut self, size: usize) -> usize {
        self.rng.gen_range(0..size)
    }

    /// A marked index if any exists.
    pub fn grover_search<F>(&mut self, label: &str, space: &mut SearchSpace<F>) -> Option<usize>
    where
        F: FnMut(usize) -> bool,
    {
        self.ledger
            .charge(label, grover_charge(space.size, space.cost_per_probe));
        let start = self.start(space.size);
        let hit = (0..space.size)
            .map(|j| (start + j) % space.size)
            .find(|&i| (space.eval)(i));
        if hit.is_some() && self.fault(1, 10) {
            return None;
        }
        hit
    }

    /// A marked index, given that exactly `k` indices are marked.
    pub fn exact_search<F>(&mut self, label: &str, space: &mut SearchSpace<F>, k: usize) -> usize
    where
        F: FnMut(usize) -> bool,
    {
        assert!(k >= 1, "exact search needs at least one marked item");
        self.ledger
            .charge(label, exact_search_charge(space.size, k, space.cost_per_probe));
        debug_assert_eq!(
            (0..space.size).filter(|&i| (space.eval)(i)).count(),
            k,
            "exact search called with a wrong marked count"
        );
        let start = self.start(space.size);
        (0..space.size)
            .map(|j| (start + j) % space.size)
            .find(|&i| (space.eval)(i))
            .expect("exact search requires a marked item")
    }

    /// The full marked set if at most `t` indices are marked.
    ///
    /// Mirrors the descending search: for `k = t..1` an exact search for `k`
    /// items either finds a fresh marked index, which is then unmarked, or
    /// finds nothing new; a final Grover sweep over the rest detects
    /// overflow. The flat charge is `ceil(sqrt(t * size))` probes; the
    /// per-iteration sum is recorded as the decomposition.
    pub fn bounded_learn<F>(
        &mut self,
        label: &str,
        space: &mut SearchSpace<F>,
        t: u64,
    ) -> LearnOutcome
    where
        F: FnMut(usize) -> bool,
    {
        assert!(t >= 1, "bounded search needs t >= 1");
        let cost = space.cost_per_probe;
        self.ledger
            .charge(label, bounded_learn_charge(space.size, t, cost));
        self.ledger.note_decomposition(
            label,
            bounded_learn_decomposition(space.size, t, cost),
        );
        // One scan supplies the answers every simulated exact search would
        // produce; it stops as soon as overflow is certain.
        let cap = t.min(usize::MAX as u64 - 1) as usize + 1;
        let start = self.start(space.size);
        let mut remaining = Vec::new();
        for j in 0..space.size {
            let i = (start + j) % space.size;
            if (space.eval)(i) {
                remaining.push(i);
                if remaining.len() == cap {
                    break;
                }
            }
        }
        let mut found = Vec::with_capacity(remaining.len().min(cap));
        let mut k = t;
        while k >= 1 && !remaining.is_empty() {
            let pick = self.rng.gen_range(0..remaining.len());
            found.push(remaining.swap_remove(pick));
            k -= 1;
        }
        let overflow = !remaining.is_empty();
        if overflow && !self.fault(1, 10) {
            return LearnOutcome::OverThreshold;
        }
        found.sort_unstable();
        LearnOutcome::Marked(found)
    }

    /// An index minimizing `eval`.
    pub fn min_find<V, F>(&mut self, label: &str, space: &mut SearchSpace<F>) -> usize
    where
        V: Ord,
        F: FnMut(usize) -> V,
    {
        self.ledger
            .charge(label, grover_charge(space.size, space.cost_per_probe));
        let start = self.start(space.size);
        let mut best: Option<(V, usize)> = None;
        for j in 0..space.size {
            let i = (start + j) % space.size;
            let val = (space.eval)(i);
            if best.as_ref().is_none_or(|(b, _)| val < *b) {
                best = Some((val, i));
            }
        }
        let (_, arg) = best.expect("search spaces are nonempty");
        if self.fault(1, 3) {
            return self.rng.gen_range(0..space.size);
        }
        arg
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn k3() -> WeightedGraph {
        WeightedGraph::new(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap()
    }

    #[test]
    fn matrix_queries_count_and_answer() {
        let g = WeightedGraph::new(4, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let ledger = QueryLedger::new();
        let h = OracleHandle::new(&g, Model::Matrix, &ledger);
        assert_eq!(h.matrix_query(0, 1), Ok(1));
        assert_eq!(h.matrix_query(0, 3), Ok(0));
        assert_eq!(h.matrix_query(2, 2), Err(QueryError::SameVertex(2)));
        assert_eq!(h.degree_query(0), Err(QueryError::WrongModel(Model::Array)));
        assert_eq!(ledger.classical(), 2);
    }

    #[test]
    fn array_queries_follow_the_fixed_order() {
        let star = WeightedGraph::new(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        let ledger = QueryLedger::new();
        let h = OracleHandle::new(&star, Model::Array, &ledger);
        assert_eq!(h.array_query(0, 2), Ok((2, 1)));
        assert_eq!(h.degree_query(0), Ok(3));
        assert!(matches!(
            h.array_query(0, 4),
            Err(QueryError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            h.array_query(0, 0),
            Err(QueryError::IndexOutOfRange { .. })
        ));
        let ring = WeightedGraph::new(5, (0..5).map(|i| (i, (i + 1) % 5, 1))).unwrap();
        let h = OracleHandle::new(&ring, Model::Array, &ledger);
        assert!((0..5).all(|v| h.degree_query(v) == Ok(2)));
        assert_eq!(ledger.classical(), 7);
        assert_eq!(
            OracleHandle::new(&k3(), Model::Matrix, &ledger).array_query(0, 1),
            Err(QueryError::WrongModel(Model::Array))
        );
    }

    #[test]
    fn square_root_rounding() {
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(16), 4);
        assert_eq!(ceil_sqrt(17), 5);
        assert_eq!(ceil_sqrt_ratio(64, 4), 4);
        assert_eq!(ceil_sqrt_ratio(100, 100), 1);
        assert_eq!(ceil_sqrt_ratio(10, 3), 2);
        assert_eq!(ceil_sqrt_ratio(10, 1), 4);
    }

    #[test]
    fn grover_finds_the_unique_witness() {
        let ledger = QueryLedger::new();
        let mut sim = SearchSim::new(&ledger, stream(1, 0));
        let mut space = SearchSpace::new(16, 1, |i| i == 11);
        assert_eq!(sim.grover_search("g", &mut space), Some(11));
        assert_eq!(ledger.quantum_charge(), 4);
        let mut none = SearchSpace::new(10, 1, |_| false);
        assert_eq!(sim.grover_search("g", &mut none), None);
        assert_eq!(ledger.quantum_charge(), 8);
    }

    #[test]
    fn exact_search_charges_by_marked_count() {
        let ledger = QueryLedger::new();
        let mut sim = SearchSim::new(&ledger, stream(2, 0));
        let mut all = SearchSpace::new(100, 1, |_| true);
        sim.exact_search("e", &mut all, 100);
        assert_eq!(ledger.quantum_charge(), 1);
        let mut four = SearchSpace::new(64, 1, |i| i % 16 == 3);
        let i = sim.exact_search("e", &mut four, 4);
        assert_eq!(i % 16, 3);
        assert_eq!(ledger.quantum_charge(), 5);
    }

    #[test]
    fn bounded_learn_outcomes() {
        let ledger = QueryLedger::new();
        let mut sim = SearchSim::new(&ledger, stream(3, 0));
        let mut zero = SearchSpace::new(50, 1, |_| false);
        assert_eq!(sim.bounded_learn("b", &mut zero, 3), LearnOutcome::Marked(vec![]));
        let mut exact = SearchSpace::new(50, 1, |i| i % 10 == 0);
        assert_eq!(
            sim.bounded_learn("b", &mut exact, 5),
            LearnOutcome::Marked(vec![0, 10, 20, 30, 40])
        );
        let mut over = SearchSpace::new(50, 1, |i| i < 10);
        assert_eq!(sim.bounded_learn("b", &mut over, 5), LearnOutcome::OverThreshold);
        // ceil(sqrt(3 * 50)) + 2 * ceil(sqrt(5 * 50)) = 13 + 2 * 16
        assert_eq!(ledger.quantum_charge(), 45);
        assert_eq!(ledger.breakdown()["b"], 45);
        assert!(ledger.decomposition()["b"] > 45);
    }

    #[test]
    fn decomposition_counts_every_iteration() {
        // k = 4..1 over 16: 2 + 3 + 3 + 4, then the closing sweep 4.
        assert_eq!(bounded_learn_decomposition(16, 4, 1), 16);
        // t beyond the size adds one probe per extra iteration.
        assert_eq!(
            bounded_learn_decomposition(4, 10, 1),
            bounded_learn_decomposition(4, 4, 1) + 6
        );
    }

    #[test]
    fn min_find_returns_an_argmin() {
        let ledger = QueryLedger::new();
        let mut sim = SearchSim::new(&ledger, stream(4, 0));
        let mut id = SearchSpace::new(30, 2, |i| i);
        assert_eq!(sim.min_find("m", &mut id), 0);
        assert_eq!(ledger.quantum_charge(), 12);
        let mut flat = SearchSpace::new(7, 1, |_| 5u8);
        assert!(sim.min_find("m", &mut flat) < 7);
    }

    #[test]
    fn injected_faults_eventually_fire() {
        let ledger = QueryLedger::new();
        let mut sim = SearchSim::new(&ledger, stream(5, 0)).with_faults(FaultMode::Inject);
        let misses = (0..400)
            .filter(|_| {
                let mut s = SearchSpace::new(8, 1, |i| i == 3);
                sim.grover_search("g", &mut s).is_none()
            })
            .count();
        assert!((10..100).contains(&misses), "misses = {misses}");
    }

    #[test]
    fn ledger_export_shape() {
        let ledger = QueryLedger::new();
        ledger.charge("a", 3);
        ledger.charge("b", 4);
        ledger.record_classical(9);
        let json = serde_json::to_value(ledger.export()).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"classical": 9, "quantum_charge": 7, "breakdown": {"a": 3, "b": 4}})
        );
    }
}
