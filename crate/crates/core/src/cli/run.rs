use super::config::{Algorithm, GraphSource, RunConfig};
use super::solution::Solution;
use crate::coloring::{color_a2, fast_coloring_a2eps, o_a_coloring, proper_coloring_cc, Coloring, ColoringKind};
use crate::decomposition::local::greedy_coloring_by_id;
use crate::decomposition::{forests_decomposition_cc, learn_graph, solve_locally, HPartitionParams};
use crate::graph::{self, Graph};
use crate::mis::mis_cc;
use crate::oracles::{degeneracy, verify_coloring, verify_forest_decomposition, verify_mis, VerificationReport};
use crate::sim::{CliqueNetwork, RoundStats};
use crate::Error;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Default recursion parameter of color-a1eps.
pub const DEFAULT_P: u32 = 8;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("verification failed:\n{0}")]
    Verification(String),
    #[error("{0}")]
    Input(String),
    #[error("protocol violation: {0}")]
    Protocol(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Protocol(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Sim(e) => CliError::Protocol(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<graph::GraphError> for CliError {
    fn from(e: graph::GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Stats JSON record of one run.
#[derive(Debug, Clone, Serialize)]
pub struct StatsRecord {
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub a: u32,
    pub eps: f64,
    pub eps_h: f64,
    pub p: Option<u32>,
    pub k: Option<u32>,
    pub t: Option<u32>,
    pub seed: u64,
    pub rounds: u64,
    pub sync_rounds: u64,
    pub lenzen_calls: u64,
    pub messages: u64,
    pub total_bits: u64,
    pub max_message_bits: u32,
    /// Palette size of a coloring, or the number of forests of a labeling.
    pub palette: Option<u64>,
    pub colors_used: Option<u64>,
    pub mis_size: Option<u64>,
    pub verified: bool,
    pub extra: BTreeMap<String, Value>,
}

/// One row of the benchmark CSV; column order is the published schema.
#[derive(Debug, Clone, Serialize)]
pub struct CsvRow {
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub a: u32,
    pub eps: f64,
    pub p: Option<u32>,
    pub k: Option<u32>,
    pub t: Option<u32>,
    pub rounds: u64,
    pub lenzen_calls: u64,
    pub palette_or_mis: u64,
    pub verified: u8,
}

pub const CSV_COLUMNS: [&str; 12] = [
    "algorithm",
    "n",
    "m",
    "a",
    "eps",
    "p",
    "k",
    "t",
    "rounds",
    "lenzen_calls",
    "palette_or_mis",
    "verified",
];

impl StatsRecord {
    pub fn csv_row(&self) -> CsvRow {
        CsvRow {
            algorithm: self.algorithm.clone(),
            n: self.n,
            m: self.m,
            a: self.a,
            eps: self.eps,
            p: self.p,
            k: self.k,
            t: self.t,
            rounds: self.rounds,
            lenzen_calls: self.lenzen_calls,
            palette_or_mis: self.mis_size.or(self.palette).unwrap_or(0),
            verified: self.verified as u8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub graph: Graph,
    pub solution: Solution,
    pub report: VerificationReport,
    pub record: StatsRecord,
}

pub fn load_graph(src: &GraphSource) -> Result<Graph, CliError> {
    Ok(match src {
        GraphSource::File(path) => graph::load(path)?,
        GraphSource::Family(spec) => graph::generate(spec)?,
    })
}

/// The promise handed to the algorithms: explicit, else the generator's
/// witness, else the degeneracy (an upper bound on the arboricity).
pub fn resolve_a(cfg: &RunConfig, g: &Graph) -> u32 {
    cfg.a
        .or(g.arboricity_witness())
        .unwrap_or_else(|| degeneracy(g))
        .max(1)
}

struct Computed {
    solution: Solution,
    report: VerificationReport,
    palette: Option<u64>,
    p: Option<u32>,
    extra: BTreeMap<String, Value>,
}

fn coloring_result(g: &Graph, c: Coloring, extra: BTreeMap<String, Value>) -> Computed {
    let report = verify_coloring(g, &c);
    let mut extra = extra;
    extra.insert("colors_used".into(), json!(c.used_colors()));
    Computed {
        palette: Some(c.palette_size as u64),
        solution: Solution::Colors(c.colors),
        report,
        p: None,
        extra,
    }
}

pub fn execute(cfg: &RunConfig) -> Result<RunOutcome, CliError> {
    let g = load_graph(&cfg.graph)?;
    execute_on(cfg, g)
}

pub fn execute_on(cfg: &RunConfig, g: Graph) -> Result<RunOutcome, CliError> {
    let a = resolve_a(cfg, &g);
    let mut net = CliqueNetwork::with_defaults(g.n());
    let mut extra = BTreeMap::new();
    let res = match cfg.algorithm {
        Algorithm::ForestDecomp => {
            let params = HPartitionParams::standard(a, cfg.eps)?;
            let fd = forests_decomposition_cc(&mut net, &g, &params)?;
            extra.insert("peel_rounds".into(), json!(fd.hpartition.peel_rounds));
            extra.insert("residual_edges".into(), json!(fd.hpartition.residual_edges()));
            extra.insert("levels".into(), json!(fd.hpartition.partition.ell()));
            let report = verify_forest_decomposition(&g, &fd.labeling, a, cfg.eps);
            Computed {
                palette: Some(fd.labeling.num_forests() as u64),
                solution: Solution::Labeling(fd.labeling),
                report,
                p: None,
                extra,
            }
        }
        Algorithm::ColorA2 | Algorithm::ColorA2eps => {
            let out = if cfg.algorithm == Algorithm::ColorA2 {
                color_a2(&mut net, &g, a, cfg.eps)?
            } else {
                fast_coloring_a2eps(&mut net, &g, a, cfg.eps)?
            };
            extra.insert("forests".into(), json!(out.params.forest_bound()));
            extra.insert("linial_steps".into(), json!(out.linial.steps.len()));
            extra.insert("peel_rounds".into(), json!(out.decomposition.hpartition.peel_rounds));
            extra.insert("linial_rounds".into(), json!(out.linial.stats.rounds));
            coloring_result(&g, out.coloring, extra)
        }
        Algorithm::ColorA1eps | Algorithm::ColorOa => {
            let out = if cfg.algorithm == Algorithm::ColorA1eps {
                let p = cfg.p.unwrap_or(DEFAULT_P);
                proper_coloring_cc(&mut net, &g, a, p, p, cfg.eps_h)?
            } else {
                o_a_coloring(&mut net, &g, a, cfg.eps, cfg.eps_h)?
            };
            extra.insert("depth".into(), json!(out.split.depth));
            extra.insert("alphas".into(), json!(out.split.alphas));
            extra.insert("leaf_palette".into(), json!(out.leaf_palette));
            extra.insert("leaf_rounds".into(), json!(out.leaf_rounds));
            extra.insert(
                "palette_per_a".into(),
                json!(out.coloring.palette_size as f64 / a as f64),
            );
            let p = out.split.p;
            let mut r = coloring_result(&g, out.coloring, extra);
            r.p = Some(p);
            r
        }
        Algorithm::Mis => {
            let out = mis_cc(&mut net, &g, a, cfg.eps_h, false)?;
            extra.insert("plan".into(), json!(out.plan));
            extra.insert("groups".into(), json!(out.iterations));
            extra.insert("split_rounds".into(), json!(out.split_rounds));
            extra.insert("learn_rounds".into(), json!(out.learn_rounds));
            extra.insert("loop_rounds".into(), json!(out.loop_rounds));
            extra.insert("mis_size".into(), json!(out.size()));
            let report = verify_mis(&g, &out.member);
            Computed {
                palette: None,
                p: (out.split.p > 1).then_some(out.split.p),
                solution: Solution::Set(out.member),
                report,
                extra,
            }
        }
        Algorithm::Universal => {
            let params = HPartitionParams::standard(a, cfg.eps)?;
            let fd = forests_decomposition_cc(&mut net, &g, &params)?;
            let learned = learn_graph(&mut net, &fd.labeling, params.forest_bound(), None)?;
            extra.insert("learn_rounds".into(), json!(learned.stats.rounds));
            extra.insert("copies_consistent".into(), json!(learned.known.is_consistent()));
            let colors = solve_locally(&learned.known, greedy_coloring_by_id);
            let c = Coloring::from_colors(colors, ColoringKind::Proper);
            coloring_result(&g, c, extra)
        }
    };
    let stats: RoundStats = net.stats();
    let mis_size = match &res.solution {
        Solution::Set(m) => Some(m.iter().filter(|&&b| b).count() as u64),
        _ => None,
    };
    let colors_used = res.extra.get("colors_used").and_then(Value::as_u64);
    let record = StatsRecord {
        algorithm: cfg.algorithm.name().to_string(),
        n: g.n(),
        m: g.m(),
        a,
        eps: cfg.eps,
        eps_h: cfg.eps_h,
        p: res.p.or(cfg.p),
        k: cfg.k,
        t: cfg.t,
        seed: cfg.seed,
        rounds: stats.rounds,
        sync_rounds: stats.sync_rounds,
        lenzen_calls: stats.lenzen_calls,
        messages: stats.messages,
        total_bits: stats.total_bits,
        max_message_bits: stats.max_message_bits,
        palette: res.palette,
        colors_used,
        mis_size,
        verified: res.report.ok,
        extra: res.extra,
    };
    Ok(RunOutcome {
        graph: g,
        solution: res.solution,
        report: res.report,
        record,
    })
}
