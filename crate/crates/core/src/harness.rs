//! Benchmark grids over instance families: per-cell solves, CSV rows, and
//! log-log slope fits of the quantum charge.

use num_rational::Ratio;
use serde::Serialize;

use crate::exec::{self, Exec};
use crate::instances::{
    bipartite_patterns, gen_bipartite_lb, gen_matrix_lb, gen_quadruple_lb, gen_random, matrix_lb_bits,
    matrix_lb_k, quadruple_lb_bits, random_bits, Instance, InstanceError,
};
use crate::pipeline::reference::stoer_wagner;
use crate::pipeline::{majority_min_cut, PipelineConfig, PipelineError};
use crate::query::Model;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("csv output failed: {0}")]
    Csv(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    MatrixLb,
    BipartiteLb,
    QuadrupleLb,
    Random,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::MatrixLb => "matrix-lb",
            Family::BipartiteLb => "bipartite-lb",
            Family::QuadrupleLb => "quadruple-lb",
            Family::Random => "random",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "matrix-lb" => Ok(Family::MatrixLb),
            "bipartite-lb" => Ok(Family::BipartiteLb),
            "quadruple-lb" => Ok(Family::QuadrupleLb),
            "random" => Ok(Family::Random),
            other => Err(format!(
                "unknown family {other:?}; expected matrix-lb, bipartite-lb, quadruple-lb or random"
            )),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which side of the critical Hamming weight a lower-bound instance sits on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Hamming {
    /// One below the threshold: the unique non-star minimum cut exists.
    #[default]
    Below,
    Above,
}

/// One grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchCell {
    pub family: Family,
    pub model: Model,
    pub n: usize,
    /// Edge count for the random family; ignored otherwise.
    pub m: usize,
    pub tau: u64,
    pub seed: u64,
    pub hamming: Hamming,
}

/// Builds the instance of a cell with Hamming weights pinned to the
/// critical values: `k -/+ 1` for the matrix family, `tau*n/20 -/+ 1` for
/// the quadruple family, and one light row (or none) for the bipartite one.
pub fn build_instance(cell: &BenchCell) -> Result<Instance, InstanceError> {
    let below = cell.hamming == Hamming::Below;
    match cell.family {
        Family::MatrixLb => {
            let k = matrix_lb_k(cell.n, cell.tau) as usize;
            let ones = if below { k.saturating_sub(1) } else { k + 1 };
            gen_matrix_lb(cell.n, cell.tau, &random_bits(matrix_lb_bits(cell.n), ones, cell.seed)?)
        }
        Family::BipartiteLb => {
            let patterns = bipartite_patterns(cell.n, usize::from(below), cell.seed)?;
            gen_bipartite_lb(cell.n, Ratio::new(1, 2), &patterns)
        }
        Family::QuadrupleLb => {
            let len = quadruple_lb_bits(cell.n, cell.tau).ok_or_else(|| {
                InstanceError::Infeasible(format!("tau * n / 10 not integral for n = {}", cell.n))
            })?;
            let half = len / 2;
            let ones = if below { half.saturating_sub(1) } else { (half + 1).min(len) };
            gen_quadruple_lb(cell.n, cell.tau, &random_bits(len, ones, cell.seed)?)
        }
        Family::Random => gen_random(cell.n, cell.m, cell.tau, cell.seed),
    }
}

/// CSV row of one solved cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub model: Model,
    pub n: usize,
    pub m: usize,
    pub tau: u64,
    pub seed: u64,
    /// Mean quantum charge per run.
    pub quantum_charge: u64,
    /// Mean classical query count per run.
    pub classical_queries: u64,
    pub correct: bool,
}

/// Solves one cell with `repeats` majority runs; correctness is against the
/// family's closed form, or Stoer-Wagner when there is none.
pub fn run_cell(cell: &BenchCell, repeats: usize, config: PipelineConfig) -> Result<BenchRow, HarnessError> {
    let inst = build_instance(cell)?;
    let expected = match inst.lambda {
        Some(l) => l,
        None => stoer_wagner(&inst.graph)?.0,
    };
    let maj = majority_min_cut(&inst.graph, cell.model, cell.seed, repeats, config)?;
    let runs = repeats as u64;
    log::debug!(
        "{} {:?} n={} tau={} seed={}: {} of {repeats} runs agree",
        cell.family,
        cell.model,
        cell.n,
        cell.tau,
        cell.seed,
        maj.votes
    );
    Ok(BenchRow {
        family: cell.family.to_string(),
        model: cell.model,
        n: cell.n,
        m: inst.graph.m(),
        tau: cell.tau,
        seed: cell.seed,
        quantum_charge: maj.ledger.quantum_charge / runs,
        classical_queries: maj.ledger.classical / runs,
        correct: maj.result.lambda == expected,
    })
}

/// Solves every cell, spreading cells over threads; rows keep grid order.
pub fn run_grid(
    cells: &[BenchCell],
    repeats: usize,
    config: PipelineConfig,
) -> Vec<Result<BenchRow, HarnessError>> {
    let inner = PipelineConfig {
        exec: Exec::Sequential,
        ..config
    };
    exec::map_slice(config.exec, cells, |c| run_cell(c, repeats, inner))
}

/// Least-squares slope of `ln y` against `ln x`; `None` with fewer than two
/// distinct `x` values or a nonpositive coordinate.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if logs.len() < 2 || sxx < 1e-12 {
        return None;
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// Fitted exponents of the quantum charge for one model.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Slopes {
    pub model: Option<Model>,
    /// Against `n`, over rows at the smallest `tau`.
    pub vs_n: Option<f64>,
    /// Against `tau`, over rows at the largest `n` that has several `tau`.
    pub vs_tau: Option<f64>,
    /// Against `sqrt(m * n * tau)`, over all rows.
    pub vs_sqrt_mn_tau: Option<f64>,
}

pub fn fit_slopes(rows: &[BenchRow], model: Model) -> Slopes {
    let rows: Vec<&BenchRow> = rows.iter().filter(|r| r.model == model).collect();
    let point = |x: f64, r: &BenchRow| (x, r.quantum_charge as f64);
    let vs_n = rows.iter().map(|r| r.tau).min().and_then(|tau| {
        let pts: Vec<_> = rows.iter().filter(|r| r.tau == tau).map(|r| point(r.n as f64, r)).collect();
        log_log_slope(&pts)
    });
    let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let vs_tau = ns.iter().rev().find_map(|&n| {
        let pts: Vec<_> = rows.iter().filter(|r| r.n == n).map(|r| point(r.tau as f64, r)).collect();
        log_log_slope(&pts)
    });
    let pts: Vec<_> = rows
        .iter()
        .map(|r| point((r.m as f64 * r.n as f64 * r.tau as f64).sqrt(), r))
        .collect();
    Slopes {
        model: Some(model),
        vs_n,
        vs_tau,
        vs_sqrt_mn_tau: log_log_slope(&pts),
    }
}

/// CSV with one row per cell and a trailing `# slopes` comment line per model.
pub fn to_csv(rows: &[BenchRow]) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| HarnessError::Csv(e.to_string()))?;
    }
    let mut out = String::from_utf8(w.into_inner().map_err(|e| HarnessError::Csv(e.to_string()))?)
        .map_err(|e| HarnessError::Csv(e.to_string()))?;
    let fmt = |s: Option<f64>| s.map_or_else(|| "na".to_string(), |v| format!("{v:.4}"));
    for model in [Model::Matrix, Model::Array] {
        if rows.iter().any(|r| r.model == model) {
            let s = fit_slopes(rows, model);
            let name = serde_json::to_value(model).expect("model serializes");
            out.push_str(&format!(
                "# slopes model={} vs_n={} vs_tau={} vs_sqrt_mn_tau={}\n",
                name.as_str().unwrap_or_default(),
                fmt(s.vs_n),
                fmt(s.vs_tau),
                fmt(s.vs_sqrt_mn_tau)
            ));
        }
    }
    Ok(out)
}
