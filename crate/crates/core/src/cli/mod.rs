//! Command-line front end: `generate`, `run`, `verify` and `bench`.

mod config;
mod run;
mod solution;

pub use config::{family_spec, Algorithm, FamilyKind, FamilyParams, GraphSource, KvFile, RunConfig};
pub use run::{execute, execute_on, load_graph, resolve_a, CliError, CsvRow, RunOutcome, StatsRecord, CSV_COLUMNS, DEFAULT_P};
pub use solution::{parse_colors, parse_labeling, parse_set, Solution};

use crate::coloring::{Coloring, ColoringKind};
use crate::graph;
use crate::oracles::{degeneracy, verify_coloring, verify_forest_decomposition, verify_mis, VerificationReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "cclique", version, about = "Congested Clique simulator and algorithm harness")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph file.
    Generate(GenerateArgs),
    /// Run one algorithm and record its accounting.
    Run(RunArgs),
    /// Check a solution file against a graph.
    Verify(VerifyArgs),
    /// Sweep n and a, one CSV row per run.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub d: Option<u32>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Number of forests for forest-union.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Flat key=value file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub algorithm: Option<Algorithm>,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Number of forests for a generated forest-union graph.
    #[arg(long)]
    pub forests: Option<u32>,
    #[arg(long)]
    pub graph_seed: Option<u64>,
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub eps_h: Option<f64>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub solution: Option<PathBuf>,
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Append one row to this CSV file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Proper,
    Defective,
    Arbdefective,
    Mis,
    Forests,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub solution: PathBuf,
    #[arg(long, value_enum)]
    pub kind: VerifyKind,
    /// Defect or arboricity bound for defective and arbdefective colorings.
    #[arg(long)]
    pub bound: Option<u32>,
    /// Arboricity promise and slack for forest labelings.
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long, default_value_t = 2.0)]
    pub eps: f64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub algorithm: Algorithm,
    /// forest-union (k = a) or random-degenerate (d = a).
    #[arg(long, value_enum, default_value = "forest-union")]
    pub family: FamilyKind,
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub a_values: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "1024")]
    pub n_values: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub seeds: Vec<u64>,
    #[arg(long, default_value_t = 2.0)]
    pub eps: f64,
    #[arg(long, default_value_t = 2.0)]
    pub eps_h: f64,
    #[arg(long)]
    pub p: Option<u32>,
    /// Write here instead of standard output.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn family_from(args: &FamilyArgs, k: Option<u32>, seed: u64) -> Result<Option<graph::GraphFamilySpec>, CliError> {
    let Some(kind) = args.family else { return Ok(None) };
    let params = FamilyParams {
        n: args.n,
        k,
        rows: args.rows,
        cols: args.cols,
        d: args.d,
    };
    family_spec(kind, &params, seed).map(Some).map_err(CliError::Input)
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<String, CliError> {
    let spec = family_from(&args.family, args.k, args.seed)?
        .ok_or_else(|| CliError::Input("generate needs --family".into()))?;
    let g = graph::generate(&spec)?;
    graph::save(&g, &args.out)?;
    let witness = g.arboricity_witness().map_or("-".to_string(), |a| a.to_string());
    Ok(format!("n={} m={} degeneracy={} witness_a={witness}", g.n(), g.m(), degeneracy(&g)))
}

/// Config file first, then explicit flags.
pub fn build_run_config(args: &RunArgs) -> Result<RunConfig, CliError> {
    let base = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            Some(RunConfig::from_kv(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?)
        }
        None => None,
    };
    let graph = if let Some(path) = &args.graph {
        Some(GraphSource::File(path.clone()))
    } else {
        family_from(&args.family, args.forests, args.graph_seed.unwrap_or(0))?.map(GraphSource::Family)
    };
    let mut cfg = match (base, args.algorithm, graph) {
        (Some(mut cfg), alg, graph) => {
            if let Some(alg) = alg {
                cfg.algorithm = alg;
            }
            if let Some(graph) = graph {
                cfg.graph = graph;
            }
            cfg
        }
        (None, Some(alg), Some(graph)) => RunConfig::new(alg, graph),
        (None, None, _) => return Err(CliError::Input("run needs --algorithm".into())),
        (None, _, None) => return Err(CliError::Input("run needs --graph or --family".into())),
    };
    cfg.a = args.a.or(cfg.a);
    cfg.eps = args.eps.unwrap_or(cfg.eps);
    cfg.eps_h = args.eps_h.unwrap_or(cfg.eps_h);
    cfg.p = args.p.or(cfg.p);
    cfg.k = args.k.or(cfg.k);
    cfg.t = args.t.or(cfg.t);
    cfg.seed = args.seed.unwrap_or(cfg.seed);
    cfg.solution = args.solution.clone().or(cfg.solution);
    cfg.stats = args.stats.clone().or(cfg.stats);
    cfg.csv = args.csv.clone().or(cfg.csv);
    Ok(cfg)
}

fn csv_writer<W: Write>(w: W, header: bool) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(header).from_writer(w)
}

pub fn append_csv(path: &Path, rows: &[CsvRow]) -> Result<(), CliError> {
    let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let f = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| io_err(path, e))?;
    write_csv(f, rows, fresh).map_err(|e| io_err(path, e))
}

/// Header comes from the first row, so an empty table writes it by hand.
pub fn write_csv<W: Write>(w: W, rows: &[CsvRow], header: bool) -> std::io::Result<()> {
    let mut wr = csv_writer(w, header && !rows.is_empty());
    if header && rows.is_empty() {
        wr.write_record(CSV_COLUMNS)?;
    }
    for row in rows {
        wr.serialize(row)?;
    }
    wr.flush()
}

pub fn cmd_run(cfg: &RunConfig) -> Result<RunOutcome, CliError> {
    let out = execute(cfg)?;
    if let Some(path) = &cfg.solution {
        fs::write(path, out.solution.to_text()).map_err(|e| io_err(path, e))?;
    }
    let json = serde_json::to_string_pretty(&out.record).expect("stats serialize");
    if let Some(path) = &cfg.stats {
        fs::write(path, json + "\n").map_err(|e| io_err(path, e))?;
    }
    if let Some(path) = &cfg.csv {
        append_csv(path, &[out.record.csv_row()])?;
    }
    Ok(out)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<VerificationReport, CliError> {
    let g = graph::load(&args.graph)?;
    let text = fs::read_to_string(&args.solution).map_err(|e| io_err(&args.solution, e))?;
    let n = g.n();
    let bound = || {
        args.bound
            .ok_or_else(|| CliError::Input("this kind needs --bound".into()))
    };
    let report = match args.kind {
        VerifyKind::Mis => verify_mis(&g, &parse_set(&text, n).map_err(CliError::Input)?),
        VerifyKind::Forests => {
            let a = args.a.ok_or_else(|| CliError::Input("forests needs --a".into()))?;
            let fl = parse_labeling(&text, n).map_err(CliError::Input)?;
            verify_forest_decomposition(&g, &fl, a, args.eps)
        }
        kind => {
            let kind = match kind {
                VerifyKind::Proper => ColoringKind::Proper,
                VerifyKind::Defective => ColoringKind::Defective(bound()?),
                _ => ColoringKind::Arbdefective(bound()?),
            };
            let colors = parse_colors(&text, n).map_err(CliError::Input)?;
            verify_coloring(&g, &Coloring::from_colors(colors, kind))
        }
    };
    Ok(report)
}

pub fn cmd_bench(args: &BenchArgs) -> Result<Vec<CsvRow>, CliError> {
    let mut points = Vec::new();
    for &n in &args.n_values {
        for &a in &args.a_values {
            for &seed in &args.seeds {
                points.push((n, a, seed));
            }
        }
    }
    let rows: Vec<Result<CsvRow, CliError>> = points
        .par_iter()
        .map(|&(n, a, seed)| {
            let params = FamilyParams {
                n: Some(n),
                k: Some(a),
                d: Some(a),
                ..Default::default()
            };
            let spec = family_spec(args.family, &params, seed).map_err(CliError::Input)?;
            let mut cfg = RunConfig::new(args.algorithm, GraphSource::Family(spec));
            cfg.a = Some(a);
            cfg.eps = args.eps;
            cfg.eps_h = args.eps_h;
            cfg.p = args.p;
            cfg.seed = seed;
            Ok(execute(&cfg)?.record.csv_row())
        })
        .collect();
    rows.into_iter().collect()
}

/// Runs the parsed command line and returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let res: Result<i32, CliError> = (|| match &cli.command {
        Command::Generate(args) => {
            println!("{}", cmd_generate(args)?);
            Ok(0)
        }
        Command::Run(args) => {
            let cfg = build_run_config(args)?;
            let out = cmd_run(&cfg)?;
            println!("{}", serde_json::to_string(&out.record).expect("stats serialize"));
            if out.report.ok {
                Ok(0)
            } else {
                Err(CliError::Verification(out.report.to_string()))
            }
        }
        Command::Verify(args) => {
            let report = cmd_verify(args)?;
            println!("{report}");
            Ok(if report.ok { 0 } else { 1 })
        }
        Command::Bench(args) => {
            let rows = cmd_bench(args)?;
            match &args.csv {
                Some(path) => {
                    let f = fs::File::create(path).map_err(|e| io_err(path, e))?;
                    write_csv(f, &rows, true).map_err(|e| io_err(path, e))?;
                }
                None => write_csv(std::io::stdout().lock(), &rows, true).map_err(|e| CliError::Input(e.to_string()))?,
            }
            Ok(0)
        }
    })();
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
