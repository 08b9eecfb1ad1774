//! Library side of the `grodel` command-line tool: argument definitions and
//! command implementations, kept out of `main.rs` so they can be tested
//! in-process.

pub mod dot;
pub mod error;
pub mod report;

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grodel::graph::{from_edge_list, parse_edge_set};
use grodel::measures::{measure, MeasureKind};
use grodel::scoring::{edge_set_score, score_solution_family, CentralityRanking, QuantileRule};
use grodel::solvers::{eager_greedy_solve, exact_solve, greedy_solve, ExactOptions};
use grodel::{generators, Edge, EdgeSet, Graph};

pub use error::{CliError, CliResult};
use report::{pairs, GraphMeta, RunReport, ScoreReport, TraceReport};

#[derive(Debug, Parser)]
#[command(name = "grodel", version, about = "Edge-deletion robustness attacks on graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Generate(GenerateArgs),
    /// Print a robustness measure of a graph.
    Measure(MeasureArgs),
    /// Choose k edges to delete and emit a JSON report.
    Solve(SolveArgs),
    /// Closeness-quantile score of an edge set.
    Score(ScoreArgs),
    /// Render a graph with highlighted edges as Graphviz DOT.
    ExportDot(ExportDotArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub family: Family,
    /// Output path (stdout when omitted).
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Grid (odd row count) with a pendant node on each side of the middle row.
    Hotdog {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Barabasi-Albert preferential attachment.
    Ba {
        #[arg(long)]
        attach: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Watts-Strogatz small world; `deg` neighbours on each side of the ring.
    Ws {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        deg: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    /// Total harmonic resistance.
    Thr,
    /// Forest index.
    Fi,
    /// Total effective resistance (connected graphs only).
    Rr,
}

impl From<MeasureArg> for MeasureKind {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Thr => MeasureKind::TotalHarmonicResistance,
            MeasureArg::Fi => MeasureKind::ForestIndex,
            MeasureArg::Rr => MeasureKind::TotalEffectiveResistance,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Exact,
    Greedy,
    GreedyEager,
}

impl Algorithm {
    fn as_str(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Greedy => "greedy",
            Algorithm::GreedyEager => "greedy-eager",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RankRule {
    /// Descending closeness, ties by node id, quantile (n-1-i)/(n-1).
    Strict,
    /// Tied nodes share their mean strict quantile.
    Fractional,
    /// Share of nodes strictly less central than the node.
    Below,
}

impl From<RankRule> for QuantileRule {
    fn from(r: RankRule) -> Self {
        match r {
            RankRule::Strict => QuantileRule::Strict,
            RankRule::Fractional => QuantileRule::Fractional,
            RankRule::Below => QuantileRule::StrictlyBelow,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Edge-list file (`-` for stdin).
    pub input: PathBuf,
    /// Use the whole graph instead of its largest connected component.
    #[arg(long)]
    pub no_lcc: bool,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, short, value_enum, default_value = "thr")]
    pub measure: MeasureArg,
    /// Print a JSON object instead of the bare value.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, short, value_enum, default_value = "thr")]
    pub measure: MeasureArg,
    #[arg(long, value_enum, default_value = "greedy")]
    pub algo: Algorithm,
    /// Number of edges to delete.
    #[arg(short = 'k', long = "k")]
    pub k: usize,
    /// Recorded in the report (solvers are deterministic).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Tolerance for checking the reported value against a from-scratch
    /// recomputation.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Add closeness-centrality scores of the solution(s).
    #[arg(long)]
    pub score: bool,
    #[arg(long, value_enum, default_value = "strict")]
    pub rank_rule: RankRule,
    /// Largest number of subsets the exact solver may enumerate.
    #[arg(long, default_value_t = grodel::solvers::exact::DEFAULT_ENUMERATION_LIMIT)]
    pub enumeration_limit: u128,
    /// Report path (stdout when omitted).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long, env = "GRODEL_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// File listing the edges of the set, one `u v` pair per line.
    pub edges: PathBuf,
    #[arg(long, value_enum, default_value = "strict")]
    pub rank_rule: RankRule,
}

#[derive(Debug, Args)]
pub struct ExportDotArgs {
    /// Edge-list file (`-` for stdin).
    pub input: PathBuf,
    /// Edges to highlight.
    pub edges: Option<PathBuf>,
    /// Pin nodes to a lattice with this many columns.
    #[arg(long)]
    pub grid_cols: Option<usize>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| CliError::io(path, e))?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| CliError::io(path, e))
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

/// A graph prepared for analysis, remembering the input's node ids.
pub struct Loaded {
    pub graph: Graph,
    /// `original[v]` is the input id of working node `v`.
    pub original: Vec<usize>,
    pub source: String,
}

impl Loaded {
    fn to_original(&self, e: Edge) -> Edge {
        Edge::new(self.original[e.0], self.original[e.1])
    }

    fn set_to_original(&self, s: &EdgeSet) -> EdgeSet {
        EdgeSet::new(s.iter().map(|&e| self.to_original(e)))
    }

    /// Translates an edge set given in input ids to working ids.
    fn set_from_original(&self, s: &EdgeSet) -> CliResult<EdgeSet> {
        let mut back = vec![None; self.original.iter().max().map_or(0, |&m| m + 1)];
        for (v, &o) in self.original.iter().enumerate() {
            back[o] = Some(v);
        }
        let lookup = |x: usize| back.get(x).copied().flatten();
        s.iter()
            .map(|&e| match (lookup(e.0), lookup(e.1)) {
                (Some(a), Some(b)) => Ok(Edge::new(a, b)),
                _ => Err(CliError::Input {
                    context: "edge set".into(),
                    source: grodel::Error::MissingEdge(e),
                }),
            })
            .collect()
    }
}

pub fn load(input: &InputArgs) -> CliResult<Loaded> {
    let bytes = read_bytes(&input.input)?;
    let source = input.input.display().to_string();
    let full = from_edge_list(&bytes).map_err(|e| CliError::lib(&source, e))?;
    if input.no_lcc {
        let original = (0..full.n()).collect();
        return Ok(Loaded { graph: full, original, source });
    }
    let (graph, map) = full.largest_connected_component();
    let mut original = vec![0; graph.n()];
    for (old, new) in map.iter().enumerate() {
        if let Some(new) = new {
            original[*new] = old;
        }
    }
    Ok(Loaded { graph, original, source })
}

fn load_edge_set(path: &Path, full: &Graph) -> CliResult<EdgeSet> {
    let bytes = read_bytes(path)?;
    parse_edge_set(&bytes, full).map_err(|e| CliError::lib(path.display().to_string(), e))
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

pub fn cmd_generate(args: &GenerateArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let g = match args.family {
        Family::Grid { rows, cols } => generators::grid(rows, cols),
        Family::Hotdog { rows, cols } => generators::hotdog(rows, cols),
        Family::Ba { attach, n, seed } => generators::barabasi_albert(attach, n, seed),
        Family::Ws { n, deg, p, seed } => generators::watts_strogatz(n, deg, p, seed),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    emit(&args.out, &g.to_edge_list(), stdout)
}

pub fn cmd_measure(args: &MeasureArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let start = Instant::now();
    let loaded = load(&args.input)?;
    let load_ms = ms(start);
    let kind = MeasureKind::from(args.measure);
    let start = Instant::now();
    let value = measure(&loaded.graph, kind).map_err(|e| CliError::lib(&loaded.source, e))?;
    let text = if args.json {
        let obj = serde_json::json!({
            "graph": GraphMeta { n: loaded.graph.n(), m: loaded.graph.m(), source: loaded.source.clone() },
            "measure": kind.as_str(),
            "value": value,
            "timings_ms": { "load": load_ms, "measure": ms(start) },
        });
        serde_json::to_string(&obj)? + "\n"
    } else {
        format!("{}\n", display_value(value))
    };
    emit(&None, &text, stdout)
}

/// Ten decimals with trailing zeros dropped, so `4.499999999999999` prints
/// as `4.5`; JSON output keeps full precision.
pub fn display_value(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn build_pool(threads: Option<usize>) -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(t);
    }
    builder.build().map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

pub fn solve_report(args: &SolveArgs) -> CliResult<RunReport> {
    let kind = MeasureKind::from(args.measure);
    if kind == MeasureKind::TotalEffectiveResistance {
        return Err(CliError::Usage("solve supports --measure thr or fi".into()));
    }
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let pool = build_pool(args.threads)?;
    let mut timings = BTreeMap::new();

    let start = Instant::now();
    let loaded = load(&args.input)?;
    let g = &loaded.graph;
    timings.insert("load".to_string(), ms(start));
    let lib = |e| CliError::lib(&loaded.source, e);

    let start = Instant::now();
    let (solutions, trace, final_value) = pool.install(|| -> CliResult<_> {
        match args.algo {
            Algorithm::Exact => {
                let opts = ExactOptions { enumeration_limit: args.enumeration_limit, ..ExactOptions::default() };
                let sol = exact_solve(g, args.k, kind, &opts).map_err(lib)?;
                Ok((sol.solutions, None, sol.value))
            }
            Algorithm::Greedy | Algorithm::GreedyEager => {
                let t = if args.algo == Algorithm::Greedy {
                    greedy_solve(g, args.k, kind)
                } else {
                    eager_greedy_solve(g, args.k, kind)
                }
                .map_err(lib)?;
                let set = EdgeSet::new(t.picked.iter().copied());
                let value = t.final_value();
                Ok((vec![set], Some(t), value))
            }
        }
    })?;
    timings.insert("solve".to_string(), ms(start));
    let initial_value = match &trace {
        Some(t) => t.initial_value,
        None => measure(g, kind).map_err(lib)?,
    };

    let start = Instant::now();
    for s in &solutions {
        let check = measure(&g.remove_edges(s).map_err(lib)?, kind).map_err(lib)?;
        if (check - final_value).abs() > args.tol * (1.0 + check.abs()) {
            return Err(CliError::Verification(format!(
                "solver reported {final_value} but recomputation gives {check}"
            )));
        }
    }
    timings.insert("verify".to_string(), ms(start));

    let scores = if args.score {
        let start = Instant::now();
        let rule = QuantileRule::from(args.rank_rule);
        let family = score_solution_family(g, &solutions, rule).map_err(lib)?;
        timings.insert("score".to_string(), ms(start));
        Some(ScoreReport::from_family(family, rule.as_str()))
    } else {
        None
    };

    Ok(RunReport {
        graph: GraphMeta { n: g.n(), m: g.m(), source: loaded.source.clone() },
        measure: kind.as_str().to_string(),
        algorithm: args.algo.as_str().to_string(),
        k: args.k,
        initial_value,
        final_value,
        solutions: solutions.iter().map(|s| pairs(&loaded.set_to_original(s))).collect(),
        trace: trace.as_ref().map(|t| TraceReport::from_trace(t, |e| loaded.to_original(e))),
        scores,
        seed: args.seed,
        tol: args.tol,
        timings_ms: timings,
    })
}

pub fn cmd_solve(args: &SolveArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let report = solve_report(args)?;
    emit(&args.out, &(report.to_json()? + "\n"), stdout)
}

pub fn cmd_score(args: &ScoreArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let bytes = read_bytes(&args.input.input)?;
    let full = from_edge_list(&bytes).map_err(|e| CliError::lib(args.input.input.display().to_string(), e))?;
    let set = load_edge_set(&args.edges, &full)?;
    let loaded = load(&args.input)?;
    let working = loaded.set_from_original(&set)?;
    let ranking =
        CentralityRanking::of(&loaded.graph, args.rank_rule.into()).map_err(|e| CliError::lib(&loaded.source, e))?;
    let score = edge_set_score(&ranking, &working).map_err(|e| CliError::lib(args.edges.display().to_string(), e))?;
    emit(&None, &format!("{}\n", display_value(score)), stdout)
}

pub fn cmd_export_dot(args: &ExportDotArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let bytes = read_bytes(&args.input)?;
    let g = from_edge_list(&bytes).map_err(|e| CliError::lib(args.input.display().to_string(), e))?;
    let highlight = match &args.edges {
        Some(path) => load_edge_set(path, &g)?,
        None => EdgeSet::default(),
    };
    emit(&args.out, &dot::to_dot(&g, &highlight, args.grid_cols), stdout)
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Generate(a) => cmd_generate(a, stdout),
        Command::Measure(a) => cmd_measure(a, stdout),
        Command::Solve(a) => cmd_solve(a, stdout),
        Command::Score(a) => cmd_score(a, stdout),
        Command::ExportDot(a) => cmd_export_dot(a, stdout),
    }
}
