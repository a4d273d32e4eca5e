//! `qmincut`: solve, generate and benchmark minimum-cut instances.
//!
//! Results go to stdout (JSON or CSV) and diagnostics to stderr, so equal
//! flags and seed give byte-identical stdout.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use qmincut_core::exec::Exec;
use qmincut_core::graph::{parse_graph_json, write_graph_json};
use qmincut_core::harness::{build_instance, run_grid, to_csv, BenchCell, Family, Hamming};
use qmincut_core::instances::{
    bipartite_patterns, gen_bipartite_lb, gen_matrix_lb, gen_quadruple_lb, matrix_lb_bits, quadruple_lb_bits,
    random_bits, Instance,
};
use qmincut_core::pipeline::reference::stoer_wagner;
use qmincut_core::pipeline::{majority_min_cut, result_json, Decision, PipelineConfig};
use qmincut_core::query::Model;
use serde_json::json;

#[derive(Parser)]
#[command(name = "qmincut", version, about = "Exact minimum cuts with query-charged search primitives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one graph and print the result JSON.
    Solve(SolveArgs),
    /// Generate an instance as graph JSON.
    Gen(GenArgs),
    /// Solve a grid of generated instances and print CSV with fitted slopes.
    Bench(BenchArgs),
}

#[derive(Args)]
struct RunFlags {
    /// Sparsifier accuracy, a rational in (0, 1/3].
    #[arg(long, default_value = "1/100", value_parser = parse_ratio)]
    eps: Ratio<u64>,
    /// Failure probability of the atom computation, a rational in (0, 1).
    #[arg(long, default_value = "1/20", value_parser = parse_ratio)]
    delta: Ratio<u64>,
    /// Number of runs combined by majority vote.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    repeats: u64,
    /// Run everything on the calling thread.
    #[arg(long)]
    sequential: bool,
}

impl RunFlags {
    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            eps: self.eps,
            delta: self.delta,
            exec: if self.sequential { Exec::Sequential } else { Exec::Parallel },
            ..PipelineConfig::default()
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Graph JSON: {"n": N, "edges": [[u, v, "weight"], ...]}.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "matrix", value_parser = parse_model)]
    model: Model,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    run: RunFlags,
    /// Also run Stoer-Wagner and exit nonzero on disagreement.
    #[arg(long)]
    verify: bool,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum HammingArg {
    Below,
    Above,
    #[value(name = "k-1")]
    KMinusOne,
    #[value(name = "k+1")]
    KPlusOne,
}

impl From<HammingArg> for Hamming {
    fn from(h: HammingArg) -> Self {
        match h {
            HammingArg::Below | HammingArg::KMinusOne => Hamming::Below,
            HammingArg::Above | HammingArg::KPlusOne => Hamming::Above,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Edge count (random family).
    #[arg(long)]
    m: Option<usize>,
    /// Weight ratio.
    #[arg(long, default_value_t = 1)]
    tau: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hamming weight of the hidden string relative to the critical value.
    #[arg(long, value_enum, default_value = "below")]
    hamming: HammingArg,
    /// Exact Hamming weight of the hidden string; overrides --hamming.
    #[arg(long)]
    ones: Option<usize>,
    /// Heavy-edge bonus of the bipartite family.
    #[arg(long, default_value = "1/2", value_parser = parse_ratio)]
    eps: Ratio<u64>,
    /// Light rows of the bipartite family; overrides --hamming.
    #[arg(long)]
    light: Option<usize>,
    /// Write the graph here and print a summary instead.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelsArg {
    Matrix,
    Array,
    Both,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_parser = parse_family, default_value = "matrix-lb")]
    family: Family,
    #[arg(long, value_enum, default_value = "both")]
    model: ModelsArg,
    /// Vertex counts, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [64usize, 128, 256])]
    n: Vec<usize>,
    /// Weight ratios, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1u64])]
    tau: Vec<u64>,
    /// Edges per vertex for the random family.
    #[arg(long, default_value_t = 4)]
    density: usize,
    /// Instance seeds, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1u64])]
    seeds: Vec<u64>,
    #[arg(long, value_enum, default_value = "below")]
    hamming: HammingArg,
    #[command(flatten)]
    run: RunFlags,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_ratio(s: &str) -> Result<Ratio<u64>, String> {
    s.trim()
        .parse::<Ratio<u64>>()
        .map_err(|e| format!("{s:?} is not a rational like 1/20: {e}"))
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse()
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn solve(args: &SolveArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let parsed = parse_graph_json(&text).with_context(|| format!("parsing {}", args.input.display()))?;
    let g = &parsed.graph;
    if g.n() < 2 {
        bail!("graph needs at least two vertices, got {}", g.n());
    }
    let repeats = args.run.repeats as usize;
    let maj = majority_min_cut(g, args.model, args.seed, repeats, args.run.config())?;
    let r = &maj.result;
    log::info!(
        "decision {:?}, {} of {} runs agree, quantum charge {}",
        r.decision,
        maj.votes,
        maj.repeats,
        maj.ledger.quantum_charge
    );
    if r.decision == Decision::Disconnected {
        bail!("graph is disconnected; vertices {:?} form a side with no crossing edge", r.shore.to_vec());
    }
    let out = result_json(r, &maj.ledger, parsed.decimals, args.seed, args.model);
    emit(args.out.as_ref(), &serde_json::to_string(&out)?)?;
    if args.verify {
        let (reference, _) = stoer_wagner(g)?;
        if reference != r.lambda {
            eprintln!(
                "verify failed: pipeline {} but Stoer-Wagner {}",
                parsed.format_weight(r.lambda as u128),
                parsed.format_weight(reference as u128)
            );
            return Ok(ExitCode::from(2));
        }
        log::info!("verified against Stoer-Wagner");
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(args: &GenArgs) -> Result<Instance> {
    let cell = BenchCell {
        family: args.family,
        model: Model::Matrix,
        n: args.n,
        m: args.m.unwrap_or(0),
        tau: args.tau,
        seed: args.seed,
        hamming: args.hamming.into(),
    };
    let inst = match args.family {
        Family::Random => {
            if args.m.is_none() {
                bail!("the random family needs --m");
            }
            build_instance(&cell)?
        }
        Family::MatrixLb if args.ones.is_some() => {
            let x = random_bits(matrix_lb_bits(args.n), args.ones.unwrap_or(0), args.seed)?;
            gen_matrix_lb(args.n, args.tau, &x)?
        }
        Family::QuadrupleLb if args.ones.is_some() => {
            let len = quadruple_lb_bits(args.n, args.tau)
                .with_context(|| format!("tau * n / 10 = {} * {} / 10 is not an integer", args.tau, args.n))?;
            gen_quadruple_lb(args.n, args.tau, &random_bits(len, args.ones.unwrap_or(0), args.seed)?)?
        }
        Family::BipartiteLb => {
            let light = args.light.unwrap_or(usize::from(Hamming::from(args.hamming) == Hamming::Below));
            gen_bipartite_lb(args.n, args.eps, &bipartite_patterns(args.n, light, args.seed)?)?
        }
        _ => build_instance(&cell)?,
    };
    Ok(inst)
}

fn gen(args: &GenArgs) -> Result<ExitCode> {
    let inst = generate(args)?;
    let summary = json!({
        "family": args.family.name(),
        "n": inst.graph.n(),
        "m": inst.graph.m(),
        "lambda": inst.lambda.map(|l| l.to_string()),
        "unit": inst.unit.to_string(),
        "shore": inst.shore.as_ref().map(|x| x.to_vec()),
    });
    match &args.out {
        Some(path) => {
            std::fs::write(path, write_graph_json(&inst.graph))
                .with_context(|| format!("writing {}", path.display()))?;
            println!("{summary}");
        }
        None => {
            println!("{}", write_graph_json(&inst.graph));
            eprintln!("{summary}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(args: &BenchArgs) -> Result<ExitCode> {
    let models: &[Model] = match args.model {
        ModelsArg::Matrix => &[Model::Matrix],
        ModelsArg::Array => &[Model::Array],
        ModelsArg::Both => &[Model::Matrix, Model::Array],
    };
    let mut cells = Vec::new();
    for &model in models {
        for &n in &args.n {
            for &tau in &args.tau {
                for &seed in &args.seeds {
                    cells.push(BenchCell {
                        family: args.family,
                        model,
                        n,
                        m: (args.density * n).min(n * n.saturating_sub(1) / 2),
                        tau,
                        seed,
                        hamming: args.hamming.into(),
                    });
                }
            }
        }
    }
    let results = run_grid(&cells, args.run.repeats as usize, args.run.config());
    let mut rows = Vec::with_capacity(results.len());
    for (cell, r) in cells.iter().zip(results) {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => log::warn!("skipping {} n={} tau={}: {e}", cell.family, cell.n, cell.tau),
        }
    }
    if rows.is_empty() {
        bail!("no grid cell could be solved");
    }
    emit(args.out.as_ref(), &to_csv(&rows)?)?;
    let correct = rows.iter().filter(|r| r.correct).count();
    log::info!("{correct} of {} cells correct", rows.len());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("QMINCUT_LOG", "warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve(a) => solve(a),
        Command::Gen(a) => gen(a),
        Command::Bench(a) => bench(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
