//! Command-line front end: `generate`, `solve` and `bench`.
//!
//! Exit codes: 0 success, 1 usage, 2 input, 3 internal.
//!
//! `bench` writes CSV with the header
//! `n,m,function,seed,mode,value,upper_bound,mpr,nodes_visited,nodes_pruned,pruned_fraction,time_ms,completed`.
//! `pruned_fraction` is `nodes_pruned / nodes_visited`; times are
//! milliseconds on a monotonic clock.

use std::ffi::OsString;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::characteristic::Characteristic;
use crate::contraction_graph::{CoalitionStructure, ContractionGraph};
use crate::error::GccfError;
use crate::instances::{read_edge_list, FunctionKind, InstanceSpec};
use crate::ordering::order_edges;
use crate::search::{
    cfss_anytime_with, cfss_parallel, cfss_with, enumerate_with, BoundKind, Budget, Progress,
    SearchOptions, SolveReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

pub const BENCH_HEADER: &str = "n,m,function,seed,mode,value,upper_bound,mpr,nodes_visited,nodes_pruned,pruned_fraction,time_ms,completed";

#[derive(Debug, Parser)]
#[command(name = "gccf", version, about = "Graph-constrained coalition formation solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a reproducible instance file.
    Generate(GenerateArgs),
    /// Solve an instance file.
    Solve(SolveArgs),
    /// Run a sweep of generated instances and print CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionArg {
    Energy,
    Edgesum,
    Coalsize,
}

impl From<FunctionArg> for FunctionKind {
    fn from(f: FunctionArg) -> Self {
        match f {
            FunctionArg::Energy => FunctionKind::Energy,
            FunctionArg::Edgesum => FunctionKind::EdgeSum,
            FunctionArg::Coalsize => FunctionKind::CoalitionSize,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct GenerateArgs {
    /// Number of agents for a Barabasi-Albert graph.
    #[arg(long)]
    pub n: Option<usize>,
    /// Edges attached per new node.
    #[arg(long = "ba-m")]
    pub ba_m: Option<usize>,
    /// Edge-list file to extract a breadth-first subgraph from.
    #[arg(long, conflicts_with_all = ["n", "ba_m"])]
    pub subgraph: Option<PathBuf>,
    /// Subgraph size.
    #[arg(long, requires = "subgraph")]
    pub k: Option<usize>,
    #[arg(long, value_enum)]
    pub function: FunctionArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Enumerate,
    Optimal,
    Anytime,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Enumerate => "enumerate",
            Mode::Optimal => "optimal",
            Mode::Anytime => "anytime",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EdgeOrder {
    Heuristic,
    Input,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundArg {
    /// Edge-sum bound for the edge-sum function, general otherwise.
    Auto,
    General,
    Edgesum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    JsonLines,
}

#[derive(Debug, clap::Args)]
pub struct SolveArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "optimal")]
    pub mode: Mode,
    /// Time budget for anytime mode; 0 evaluates the bound at the root only.
    #[arg(long = "budget-ms")]
    pub budget_ms: Option<u64>,
    /// Node-expansion budget for anytime mode.
    #[arg(long = "budget-nodes")]
    pub budget_nodes: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long = "edge-order", value_enum, default_value = "heuristic")]
    pub edge_order: EdgeOrder,
    #[arg(long, value_enum, default_value = "general")]
    pub bound: BoundArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Print a progress line to stderr every this many visited nodes.
    #[arg(long = "progress-every")]
    pub progress_every: Option<u64>,
}

#[derive(Debug, clap::Args)]
pub struct BenchArgs {
    #[arg(long = "n-list", value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(long = "ba-m-list", value_delimiter = ',', default_value = "2")]
    pub ba_m_list: Vec<usize>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "energy,edgesum,coalsize")]
    pub functions: Vec<FunctionArg>,
    /// Number of seeds per cell, starting at `--seed-base`.
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    #[arg(long = "seed-base", default_value_t = 0)]
    pub seed_base: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "optimal")]
    pub mode: Vec<Mode>,
    /// Time budget per anytime run.
    #[arg(long = "budget-ms", default_value_t = 1000)]
    pub budget_ms: u64,
    /// Per-run timeout for enumerate and optimal runs.
    #[arg(long = "timeout-ms", default_value_t = 60_000)]
    pub timeout_ms: u64,
    #[arg(long = "edge-order", value_enum, default_value = "heuristic")]
    pub edge_order: EdgeOrder,
    #[arg(long, value_enum, default_value = "auto")]
    pub bound: BoundArg,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn from_io(e: std::io::Error) -> CliError {
    CliError::Internal(format!("write failed: {e}"))
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Generate(a) => generate(a, out),
        Command::Solve(a) => solve(a, out, err),
        Command::Bench(a) => bench(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn generate(a: GenerateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let kind: FunctionKind = a.function.into();
    let spec = match (&a.subgraph, a.n, a.ba_m) {
        (Some(path), _, _) => {
            let k = a.k.ok_or_else(|| CliError::Usage("--subgraph needs --k".into()))?;
            let (n, edges) = read_edge_list(path).map_err(|e| CliError::Input(e.to_string()))?;
            if k == 0 || k > n {
                return Err(CliError::Usage(format!("--k must be in 1..={n}, got {k}")));
            }
            let sub = crate::instances::bfs_subgraph(&edges, n, k, a.seed)
                .map_err(|e| CliError::Input(e.to_string()))?;
            InstanceSpec::from_graph(k, sub, kind, a.seed).map_err(internal)?
        }
        (None, Some(n), Some(m)) => {
            if m == 0 || m >= n {
                return Err(CliError::Usage(format!(
                    "--ba-m must satisfy 1 <= ba-m < n (got ba-m={m}, n={n})"
                )));
            }
            InstanceSpec::barabasi_albert(n, m, kind, a.seed).map_err(internal)?
        }
        _ => {
            return Err(CliError::Usage(
                "give either --n and --ba-m, or --subgraph and --k".into(),
            ))
        }
    };
    spec.write_file(&a.out)
        .map_err(|e| CliError::Input(format!("{}: {e}", a.out.display())))?;
    writeln!(
        out,
        "{}: n={} edges={} kind={}",
        a.out.display(),
        spec.n,
        spec.edges.len(),
        spec.kind()
    )
    .map_err(from_io)
}

fn resolve_bound(arg: BoundArg, f: &Characteristic) -> Result<BoundKind, CliError> {
    match arg {
        BoundArg::General => Ok(BoundKind::General),
        BoundArg::Edgesum if f.as_edge_sum().is_none() => Err(CliError::Usage(
            "--bound edgesum needs an edge-sum instance".into(),
        )),
        BoundArg::Edgesum => Ok(BoundKind::EdgeSum),
        BoundArg::Auto if f.as_edge_sum().is_some() => Ok(BoundKind::EdgeSum),
        BoundArg::Auto => Ok(BoundKind::General),
    }
}

use crate::characteristic::CharacteristicFunction as _;

fn prepared_root(spec: &InstanceSpec, order: EdgeOrder) -> Result<ContractionGraph, CliError> {
    let root = spec.root_graph().map_err(|e| CliError::Input(e.to_string()))?;
    match order {
        EdgeOrder::Input => Ok(root),
        EdgeOrder::Heuristic => order_edges(&root).map_err(internal),
    }
}

fn solve(a: SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let spec = InstanceSpec::read_file(&a.input).map_err(|e| CliError::Input(e.to_string()))?;
    let f = spec.characteristic().map_err(|e| CliError::Input(e.to_string()))?;
    let bound = resolve_bound(a.bound, &f)?;
    if a.workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    if a.workers > 1 && a.mode != Mode::Optimal {
        return Err(CliError::Usage("--workers > 1 is only supported with --mode optimal".into()));
    }
    let budget = match a.mode {
        Mode::Anytime => {
            if a.budget_ms.is_none() && a.budget_nodes.is_none() {
                return Err(CliError::Usage("--mode anytime needs --budget-ms or --budget-nodes".into()));
            }
            let budget = Budget {
                time_limit: a.budget_ms.map(Duration::from_millis),
                node_limit: match (a.budget_ms, a.budget_nodes) {
                    (Some(0), None) => Some(0),
                    (_, nodes) => nodes,
                },
            };
            Some(budget)
        }
        _ => None,
    };
    let root = prepared_root(&spec, a.edge_order)?;

    let mut progress = |p: &Progress| {
        let _ = writeln!(
            err,
            "progress visited={} pruned={} best={} elapsed_ms={:.3}",
            p.nodes_visited,
            p.nodes_pruned,
            p.best_value,
            p.elapsed.as_secs_f64() * 1e3
        );
    };
    let opts = SearchOptions {
        bound,
        budget,
        progress_interval: a.progress_every.unwrap_or(0),
        on_progress: a.progress_every.map(|_| &mut progress as &mut dyn FnMut(&Progress)),
    };
    let report = match a.mode {
        Mode::Enumerate => enumerate_with(&root, &f, opts),
        Mode::Optimal if a.workers > 1 => cfss_parallel(&root, &f, bound, a.workers),
        Mode::Optimal => cfss_with(&root, &f, opts),
        Mode::Anytime => cfss_anytime_with(&root, &f, opts),
    }
    .map_err(internal)?;
    write_report(out, a.format, a.mode, &report).map_err(from_io)
}

fn partition_string(cs: &CoalitionStructure, sep: &str) -> String {
    cs.blocks()
        .iter()
        .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(sep)
}

pub const SOLVE_CSV_HEADER: &str =
    "mode,value,upper_bound,mpr,mpr_degenerate,nodes_visited,nodes_pruned,completed,time_ms,partition";

fn write_report(out: &mut dyn Write, format: Format, mode: Mode, r: &SolveReport) -> std::io::Result<()> {
    let ms = r.wall_time.as_secs_f64() * 1e3;
    match format {
        Format::Text => {
            writeln!(out, "mode: {}", mode.name())?;
            writeln!(out, "best_value: {}", r.best_value)?;
            writeln!(out, "partition: {}", r.best)?;
            writeln!(out, "coalitions: {}", r.best.len())?;
            writeln!(out, "nodes_visited: {}", r.nodes_visited)?;
            writeln!(out, "nodes_pruned: {}", r.nodes_pruned)?;
            writeln!(out, "upper_bound: {}", r.upper_bound)?;
            writeln!(out, "mpr: {}{}", r.mpr, if r.mpr_degenerate { " (degenerate)" } else { "" })?;
            writeln!(out, "completed: {}", r.completed)?;
            writeln!(out, "time_ms: {ms:.3}")
        }
        Format::Csv => {
            writeln!(out, "{SOLVE_CSV_HEADER}")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{:.3},{}",
                mode.name(),
                r.best_value,
                r.upper_bound,
                r.mpr,
                r.mpr_degenerate,
                r.nodes_visited,
                r.nodes_pruned,
                r.completed,
                ms,
                partition_string(&r.best, "|")
            )
        }
        Format::JsonLines => {
            let finite = |x: f64| if x.is_finite() { serde_json::json!(x) } else { serde_json::Value::Null };
            let v = serde_json::json!({
                "mode": mode.name(),
                "best_value": r.best_value,
                "upper_bound": finite(r.upper_bound),
                "mpr": finite(r.mpr),
                "mpr_degenerate": r.mpr_degenerate,
                "nodes_visited": r.nodes_visited,
                "nodes_pruned": r.nodes_pruned,
                "completed": r.completed,
                "time_ms": ms,
                "partition": r.best.blocks(),
            });
            writeln!(out, "{v}")
        }
    }
}

/// One benchmark run on a generated instance.
pub fn bench_cell(
    n: usize,
    m: usize,
    kind: FunctionKind,
    seed: u64,
    mode: Mode,
    args: &BenchArgs,
) -> crate::error::Result<SolveReport> {
    let spec = InstanceSpec::barabasi_albert(n, m, kind, seed)?;
    let f = spec.characteristic()?;
    let bound = match args.bound {
        BoundArg::General => BoundKind::General,
        BoundArg::Edgesum => BoundKind::EdgeSum,
        BoundArg::Auto if kind == FunctionKind::EdgeSum => BoundKind::EdgeSum,
        BoundArg::Auto => BoundKind::General,
    };
    if bound == BoundKind::EdgeSum && f.as_edge_sum().is_none() {
        return Err(GccfError::IncompatibleBound);
    }
    let root = spec.root_graph()?;
    let root = match args.edge_order {
        EdgeOrder::Input => root,
        EdgeOrder::Heuristic => order_edges(&root)?,
    };
    let timeout = Budget::time(Duration::from_millis(args.timeout_ms));
    let opts = |budget| SearchOptions {
        bound,
        budget: Some(budget),
        ..Default::default()
    };
    match mode {
        Mode::Enumerate => enumerate_with(&root, &f, opts(timeout)),
        Mode::Optimal => cfss_with(&root, &f, opts(timeout)),
        Mode::Anytime => cfss_anytime_with(
            &root,
            &f,
            opts(Budget::time(Duration::from_millis(args.budget_ms.min(args.timeout_ms)))),
        ),
    }
}

fn bench(a: BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.seeds == 0 {
        return Err(CliError::Usage("--seeds must be at least 1".into()));
    }
    for &n in &a.n_list {
        for &m in &a.ba_m_list {
            if m == 0 || m >= n {
                return Err(CliError::Usage(format!(
                    "every ba-m must satisfy 1 <= ba-m < n (got ba-m={m}, n={n})"
                )));
            }
        }
    }
    writeln!(out, "{BENCH_HEADER}").map_err(from_io)?;
    out.flush().map_err(from_io)?;
    for &n in &a.n_list {
        for &m in &a.ba_m_list {
            for &func in &a.functions {
                let kind: FunctionKind = func.into();
                for seed in a.seed_base..a.seed_base + a.seeds {
                    for &mode in &a.mode {
                        let cell = format!(
                            "n={n} m={m} function={kind} seed={seed} mode={}",
                            mode.name()
                        );
                        let r = catch_unwind(AssertUnwindSafe(|| bench_cell(n, m, kind, seed, mode, &a)))
                            .map_err(|_| CliError::Internal(format!("run panicked at {cell}")))?
                            .map_err(|e| CliError::Internal(format!("run failed at {cell}: {e}")))?;
                        writeln!(
                            out,
                            "{n},{m},{kind},{seed},{},{},{},{},{},{},{},{:.3},{}",
                            mode.name(),
                            r.best_value,
                            r.upper_bound,
                            r.mpr,
                            r.nodes_visited,
                            r.nodes_pruned,
                            r.pruned_fraction(),
                            r.wall_time.as_secs_f64() * 1e3,
                            r.completed
                        )
                        .map_err(from_io)?;
                        out.flush().map_err(from_io)?;
                    }
                }
            }
        }
    }
    Ok(())
}
