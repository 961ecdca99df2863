//! `wsnfuse` command-line front end.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns
//! the exit status together with everything that would be printed. Exit
//! status is 0 on success, 1 for library errors and 2 for usage errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wsnfuse_core::fusion::{BooleanRule, MedianRule, OpCounters, ReadingPayload, TieRule, Tolerance};
use wsnfuse_core::simulator::{
    fuse_readings, parse_readings, simulate_with, AggregationMode, FusionSpec, Sensing, SimError,
    SimOptions, SimReport,
};
use wsnfuse_core::topology::{
    degree_pmf, extremal_tree_check_with, measured_delay, predicted_delay, DelayModel,
    ExtremalReport, Topology, TopologyError, TopologyFile, TopologyKind,
};
use wsnfuse_core::exec::Execution;

#[derive(Debug, Parser)]
#[command(name = "wsnfuse", version, about = "Fault-tolerant sensor fusion and network architecture analysis")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    #[value(alias = "json")]
    Structured,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MedianArg {
    Lower,
    Average,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TieArg {
    One,
    Zero,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Hierarchical,
    Centralized,
}

#[derive(Debug, clap::Args)]
struct FusionArgs {
    /// Fault bound for marzullo, schmid_schossmaier, n_function and trimmed_midpoint.
    #[arg(long)]
    f: Option<usize>,
    /// Left tolerance used to widen crisp readings for interval functions.
    #[arg(long)]
    tol_left: Option<f64>,
    /// Right tolerance used to widen crisp readings for interval functions.
    #[arg(long)]
    tol_right: Option<f64>,
    /// Even-count median: lower middle reading or mean of both middles.
    #[arg(long, value_enum)]
    median_rule: Option<MedianArg>,
    /// Majority outcome when exactly half the bits are set.
    #[arg(long, value_enum)]
    tie: Option<TieArg>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fuse every reading in a readings file.
    Fuse {
        /// mean, median, min, max, mode, marzullo, schmid_schossmaier, omega,
        /// n_function, majority, and, or, trimmed_midpoint
        #[arg(long = "fn")]
        function: String,
        #[command(flatten)]
        fusion: FusionArgs,
        readings: PathBuf,
    },
    /// Build a standard topology and report its delay.
    Topo {
        #[arg(long, value_parser = parse_kind)]
        kind: TopologyKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long, default_value_t = 1.0)]
        link_delay: f64,
    },
    /// Degree distribution and graph entropy of a topology file.
    Entropy { topology: PathBuf },
    /// Aggregate readings over a topology.
    Simulate {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        fusion: FusionArgs,
        #[arg(long, default_value_t = 1.0)]
        link_delay: f64,
        /// Override the planner's aggregation mode.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Only routing-tree leaves take readings.
        #[arg(long)]
        leaf_only: bool,
        topology: PathBuf,
        readings: PathBuf,
    },
    /// Rank all trees on n vertices by degree entropy.
    Extremal {
        #[arg(long)]
        n: usize,
        /// Enumerate on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

fn parse_kind(s: &str) -> Result<TopologyKind, String> {
    s.parse().map_err(|e: TopologyError| e.to_string())
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Sim(SimError),
    Io { path: PathBuf, message: String },
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        CliError::Sim(e)
    }
}

impl From<TopologyError> for CliError {
    fn from(e: TopologyError) -> Self {
        CliError::Sim(e.into())
    }
}

impl From<wsnfuse_core::fusion::FusionError> for CliError {
    fn from(e: wsnfuse_core::fusion::FusionError) -> Self {
        CliError::Sim(e.into())
    }
}

impl CliError {
    fn diagnostic(&self) -> String {
        match self {
            CliError::Sim(e) => format!("error[{}]: {e}", e.name()),
            CliError::Io { path, message } => {
                format!("error[Io]: cannot read {}: {message}", path.display())
            }
        }
    }
}

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: e.diagnostic() + "\n" },
    }
}

fn dispatch(cli: &Cli) -> Result<String, CliError> {
    let structured = cli.format == Format::Structured;
    match &cli.command {
        Command::Fuse { function, fusion, readings } => {
            let spec = build_spec(function, fusion)?;
            let readings = parse_readings(&read(readings)?)?;
            let mut counters = OpCounters::new();
            let fused = fuse_readings(&readings, &spec, &mut counters)?;
            Ok(if structured {
                finish_json(json!({
                    "command": "fuse",
                    "function": spec.function.as_str(),
                    "readings": readings.len(),
                    "fused": payload_json(&fused),
                    "counters": counters,
                }))
            } else {
                let mut out = String::new();
                row(&mut out, "fused", payload_text(&fused));
                row(&mut out, "readings", readings.len());
                counter_rows(&mut out, &counters);
                out
            })
        }
        Command::Topo { kind, n, q, link_delay } => {
            let model = DelayModel::new(*link_delay)?;
            let topo = Topology::build(*kind, *n, *q)?;
            let hops = topo.eccentricity();
            let measured = measured_delay(&topo, model);
            let predicted_hops = predicted_delay(*kind, *n, *q)?;
            let predicted = predicted_hops.map(|h| model.over(h));
            Ok(if structured {
                finish_json(json!({
                    "command": "topo",
                    "kind": kind.as_str(),
                    "n": n,
                    "q": q,
                    "nodes": topo.node_count(),
                    "edges": topo.edges().len(),
                    "link_delay": link_delay,
                    "eccentricity_hops": hops,
                    "measured_delay": measured,
                    "predicted_hops": predicted_hops,
                    "predicted_delay": predicted,
                }))
            } else {
                let mut out = String::new();
                row(&mut out, "kind", kind);
                row(&mut out, "nodes", topo.node_count());
                row(&mut out, "edges", topo.edges().len());
                row(&mut out, "link_delay", link_delay);
                row(&mut out, "hops", hops);
                row(&mut out, "measured_delay", measured);
                row(&mut out, "predicted_delay", predicted.map_or("n/a".to_string(), |p| p.to_string()));
                out
            })
        }
        Command::Entropy { topology } => {
            let topo = load_topology(topology)?;
            let pmf = degree_pmf(&topo)?;
            let entropy = pmf.entropy();
            Ok(if structured {
                let probs: Vec<Value> = pmf
                    .probs
                    .iter()
                    .map(|(id, p)| json!({ "node": id, "p": p }))
                    .collect();
                finish_json(json!({
                    "command": "entropy",
                    "kind": topo.kind().as_str(),
                    "nodes": topo.node_count(),
                    "pmf": probs,
                    "entropy_bits": entropy,
                    "max_bits": (topo.node_count() as f64).log2(),
                }))
            } else {
                let mut out = String::new();
                let _ = writeln!(out, "{:<8} {:>6} {:>8}", "node", "degree", "p");
                for (i, (id, p)) in pmf.probs.iter().enumerate() {
                    let _ = writeln!(out, "{:<8} {:>6} {:>8.4}", id, topo.degree(i), p);
                }
                row(&mut out, "entropy_bits", format!("{entropy:.4}"));
                row(&mut out, "max_bits", format!("{:.4}", (topo.node_count() as f64).log2()));
                out
            })
        }
        Command::Simulate { spec, fusion, link_delay, mode, leaf_only, topology, readings } => {
            let spec = build_spec(spec, fusion)?;
            let model = DelayModel::new(*link_delay)?;
            let topo = load_topology(topology)?;
            let readings = parse_readings(&read(readings)?)?;
            let options = SimOptions {
                sensing: if *leaf_only { Sensing::LeavesOnly } else { Sensing::AllNodes },
                mode: mode.map(|m| match m {
                    ModeArg::Hierarchical => AggregationMode::Hierarchical,
                    ModeArg::Centralized => AggregationMode::Centralized,
                }),
            };
            let report = simulate_with(&topo, &readings, &spec, model, options)?;
            Ok(if structured { simulate_json(&spec, &report) } else { simulate_table(&report) })
        }
        Command::Extremal { n, sequential } => {
            let exec = if *sequential { Execution::Sequential } else { Execution::Parallel };
            let report = extremal_tree_check_with(*n, exec)?;
            Ok(if structured {
                finish_json(serde_json::to_value(&report).expect("report serialises"))
            } else {
                extremal_table(&report)
            })
        }
    }
}

fn build_spec(name: &str, args: &FusionArgs) -> Result<FusionSpec, CliError> {
    let mut spec: FusionSpec = name.parse()?;
    if let Some(f) = args.f {
        spec = spec.with_fault_bound(f);
    }
    if args.tol_left.is_some() || args.tol_right.is_some() {
        let tol = Tolerance::new(args.tol_left.unwrap_or(0.0), args.tol_right.unwrap_or(0.0))?;
        spec = spec.with_tolerance(tol);
    }
    if let Some(rule) = args.median_rule {
        spec = spec.with_median_rule(match rule {
            MedianArg::Lower => MedianRule::LowerMiddle,
            MedianArg::Average => MedianRule::AverageMiddles,
        });
    }
    if let Some(tie) = args.tie {
        let tie = match tie {
            TieArg::One => TieRule::One,
            TieArg::Zero => TieRule::Zero,
        };
        spec = spec.with_rule(BooleanRule::Majority(tie));
    }
    spec.validate()?;
    Ok(spec)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_owned(), message: e.to_string() })
}

fn load_topology(path: &Path) -> Result<Topology, CliError> {
    Ok(TopologyFile::parse(&read(path)?)?.build()?)
}

fn finish_json(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("json values serialise") + "\n"
}

fn row(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<16} {value}");
}

fn counter_rows(out: &mut String, c: &OpCounters) {
    row(out, "comparisons", c.comparisons);
    row(out, "additions", c.additions);
    row(out, "divisions", c.divisions);
}

fn payload_text(p: &ReadingPayload) -> String {
    match p {
        ReadingPayload::Crisp(v) => v.to_string(),
        ReadingPayload::Interval(iv) => format!("[{}, {}]", iv.lo(), iv.hi()),
        ReadingPayload::Bit(b) => u8::from(*b).to_string(),
    }
}

fn payload_json(p: &ReadingPayload) -> Value {
    match p {
        ReadingPayload::Crisp(v) => json!({ "kind": "crisp", "value": v }),
        ReadingPayload::Interval(iv) => json!({ "kind": "interval", "lo": iv.lo(), "hi": iv.hi() }),
        ReadingPayload::Bit(b) => json!({ "kind": "bit", "bit": u8::from(*b) }),
    }
}

fn mode_name(mode: AggregationMode) -> &'static str {
    match mode {
        AggregationMode::Hierarchical => "hierarchical",
        AggregationMode::Centralized => "centralized",
    }
}

fn simulate_json(spec: &FusionSpec, r: &SimReport) -> String {
    finish_json(json!({
        "command": "simulate",
        "function": spec.function.as_str(),
        "fused": payload_json(&r.fused),
        "total_delay": r.total_delay,
        "hops_on_critical_path": r.hops_on_critical_path,
        "readings": r.readings_fused,
        "plan": r.plan,
        "counters": r.counters,
    }))
}

fn simulate_table(r: &SimReport) -> String {
    let mut out = String::new();
    row(&mut out, "fused", payload_text(&r.fused));
    row(&mut out, "total_delay", r.total_delay);
    row(&mut out, "hops", r.hops_on_critical_path);
    row(&mut out, "mode", mode_name(r.plan.mode));
    row(&mut out, "readings", r.readings_fused);
    counter_rows(&mut out, &r.counters);
    out
}

fn extremal_table(r: &ExtremalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<5} {:<20} {:>10} {:>8}  shape", "rank", "degrees", "labelled", "entropy");
    for (i, s) in r.ranking.iter().enumerate() {
        let degrees = s.degrees.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let shape = match (s.is_path, s.is_star) {
            (true, true) => "path,star",
            (true, false) => "path",
            (false, true) => "star",
            _ => "",
        };
        let _ = writeln!(out, "{:<5} {:<20} {:>10} {:>8.4}  {}", i + 1, degrees, s.labeled_count, s.entropy, shape);
    }
    row(&mut out, "labelled_trees", r.labeled_trees);
    row(&mut out, "path_entropy", format!("{:.4}", r.path_entropy));
    row(&mut out, "star_entropy", format!("{:.4}", r.star_entropy));
    row(&mut out, "path_is_max", r.path_is_max);
    row(&mut out, "star_is_min", r.star_is_min);
    out
}
