//! Batch command-line interface.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 no spanning candidate.

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::io_cli::menu::run_menu;
use crate::io_cli::report::{
    candidates_csv, candidates_json, candidates_table, export_dot, render_ranking, selection_json,
};
use crate::metrics::{CostVariant, EnergyVariant, ScoringConfig};
use crate::selection::{select_aggregator, SelectConfig, TieRule};
use crate::simulator::{
    compare_policies, reports_csv, residual_trace_csv, run_policy, to_joules, Policy, RadioModel, SimConfig,
};
use crate::topology::{random_topology, GraphMode, NetworkGraph, RandomTopology};
use crate::tree_builder::build_all_candidates;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NO_SPANNING: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "clmat", version, about = "Lifetime-maximizing aggregation tree selection for sensor networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random geometric topology as JSON.
    Gen(GenArgs),
    /// Score the shortest-path tree of every candidate root.
    Trees(TreesArgs),
    /// Select the aggregator (minimum total distance).
    Select(SelectArgs),
    /// Run the round-based lifetime simulation.
    Simulate(SimulateArgs),
    /// Compare lifetimes of several aggregator policies.
    Compare(CompareArgs),
    /// Interactive menu on stdin/stdout.
    Menu(MenuArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Table,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Topology JSON file.
    #[arg(long, short, conflicts_with_all = ["edges", "nodes"])]
    pub input: Option<PathBuf>,
    /// Edge list CSV (`u,v,distance`); requires --nodes.
    #[arg(long, requires = "nodes")]
    pub edges: Option<PathBuf>,
    /// Node table CSV (`id,energy[,x,y]`); requires --edges.
    #[arg(long, requires = "edges")]
    pub nodes: Option<PathBuf>,
    /// Treat CSV edges as one-way links.
    #[arg(long)]
    pub directed: bool,
}

#[derive(Debug, Args)]
pub struct ScoringArgs {
    #[arg(long, value_enum, default_value_t = CostVariant::Clmat)]
    pub cost: CostVariant,
    #[arg(long, value_enum, default_value_t = EnergyVariant::NodeMin)]
    pub energy: EnergyVariant,
    /// Tie rule among equal-distance roots: min-depth (shallower tree, then
    /// later-inserted root) or paper-order (earliest root).
    #[arg(long, value_enum, default_value_t = TieRule::MinDepth)]
    pub tie: TieRule,
    /// Radio model `tx_fixed,coeff,exponent,rx` in Joules per packet.
    #[arg(long, value_parser = parse_radio, default_value = "50e-9,100e-12,2,50e-9")]
    pub radio: RadioModel,
}

impl ScoringArgs {
    fn select_config(&self) -> SelectConfig {
        SelectConfig {
            scoring: ScoringConfig { cost: self.cost, energy: self.energy, radio: self.radio },
            tie: self.tie,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of nodes.
    #[arg(long, short = 'n', default_value_t = 20)]
    pub count: usize,
    #[arg(long, default_value_t = 100.0)]
    pub side: f64,
    #[arg(long, default_value_t = 30.0)]
    pub range: f64,
    /// Node energy range `lo,hi` in Joules.
    #[arg(long, value_parser = parse_pair, default_value = "0.5,1.0")]
    pub energy: (f64, f64),
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TreesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub scoring: ScoringArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub scoring: ScoringArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimArgs {
    #[command(flatten)]
    pub scoring: ScoringArgs,
    #[arg(long, default_value_t = 10_000)]
    pub rounds: usize,
    #[arg(long, default_value_t = 1)]
    pub reselect_every: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Keep running on the survivors after the first death.
    #[arg(long)]
    pub continue_after_death: bool,
}

impl SimArgs {
    fn sim_config(&self) -> SimConfig {
        SimConfig {
            radio: self.scoring.radio,
            max_rounds: self.rounds,
            reselect_every: self.reselect_every,
            tie_rule: self.scoring.tie,
            cost_variant: self.scoring.cost,
            energy_variant: self.scoring.energy,
            seed: self.seed,
            continue_after_death: self.continue_after_death,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub sim: SimArgs,
    /// clmat, fixed:<id>, max-energy or random:<seed>.
    #[arg(long, default_value = "clmat")]
    pub policy: String,
    /// Also write the per-node `round,node,residual` trace here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub sim: SimArgs,
    /// Comma-separated policies; `fixed:all` expands to one fixed root per node.
    #[arg(long, default_value = "clmat,max-energy,random:0,fixed:all")]
    pub policies: String,
    /// Runs averaged per random policy.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MenuArgs {
    #[command(flatten)]
    pub scoring: ScoringArgs,
    #[arg(long)]
    pub directed: bool,
}

fn parse_radio(s: &str) -> Result<RadioModel, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err("expected tx_fixed,coeff,exponent,rx".into());
    }
    let num = |p: &str| p.parse::<f64>().map_err(|_| format!("bad number `{p}`"));
    let exponent = parts[2].parse::<u32>().map_err(|_| format!("bad exponent `{}`", parts[2]))?;
    let radio = RadioModel { tx_fixed: num(parts[0])?, tx_dist_coeff: num(parts[1])?, exponent, rx_cost: num(parts[3])? };
    radio.validate().map_err(|e| e.to_string())?;
    Ok(radio)
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected lo,hi")?;
    let a = a.trim().parse().map_err(|_| format!("bad number `{a}`"))?;
    let b = b.trim().parse().map_err(|_| format!("bad number `{b}`"))?;
    Ok((a, b))
}

/// A failed invocation: exit code plus one-line diagnostic.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoSpanningCandidate => EXIT_NO_SPANNING,
            Error::Config(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        CliError { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { code: EXIT_USAGE, message: message.into() }
}

fn load_graph(args: &InputArgs) -> Result<NetworkGraph, CliError> {
    let read = |p: &PathBuf| fs::read(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())));
    match (&args.input, &args.edges, &args.nodes) {
        (Some(path), _, _) => Ok(NetworkGraph::from_json_bytes(&read(path)?)?),
        (None, Some(e), Some(n)) => {
            let mode = if args.directed { GraphMode::Directed } else { GraphMode::Undirected };
            Ok(NetworkGraph::from_csv(read(e)?.as_slice(), read(n)?.as_slice(), mode)?)
        }
        _ => Err(usage("an input topology is required: --input FILE or --edges FILE --nodes FILE")),
    }
}

fn emit<W: Write>(text: &str, output: &Option<PathBuf>, stdout: &mut W) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        None => stdout.write_all(text.as_bytes()).map_err(Error::from)?,
    }
    Ok(())
}

fn check_format(format: Format, allowed: &[Format]) -> Result<(), CliError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let names: Vec<String> =
            allowed.iter().map(|f| f.to_possible_value().unwrap().get_name().to_string()).collect();
        Err(usage(format!("unsupported --format for this subcommand; use one of {}", names.join(", "))))
    }
}

fn expand_policies(spec: &str, graph: &NetworkGraph) -> Result<Vec<Policy>, CliError> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "fixed:all" {
            out.extend(graph.nodes().iter().map(|n| Policy::FixedRoot(n.id.clone())));
        } else {
            out.push(Policy::parse(item)?);
        }
    }
    if out.is_empty() {
        return Err(usage("no policies given"));
    }
    Ok(out)
}

fn dispatch<R: BufRead, W: Write>(cli: Cli, stdin: R, stdout: &mut W) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(a) => {
            let params = RandomTopology {
                nodes: a.count,
                side: a.side,
                range: a.range,
                energy_lo: a.energy.0,
                energy_hi: a.energy.1,
                seed: a.seed,
            };
            let g = random_topology(&params)?;
            emit(&g.to_json(), &a.output, stdout)
        }
        Command::Trees(a) => {
            check_format(a.format, &[Format::Table, Format::Csv, Format::Json])?;
            let g = load_graph(&a.input)?;
            let set = build_all_candidates(&g, &a.scoring.select_config().scoring)?;
            let text = match a.format {
                Format::Csv => candidates_csv(&set),
                Format::Json => candidates_json(&set, &g),
                _ => candidates_table(&set),
            };
            emit(&text, &a.output, stdout)
        }
        Command::Select(a) => {
            check_format(a.format, &[Format::Table, Format::Json, Format::Dot])?;
            let g = load_graph(&a.input)?;
            let sel = select_aggregator(&g, &a.scoring.select_config())?;
            let text = match a.format {
                Format::Json => selection_json(&sel, &g),
                Format::Dot => export_dot(&g, Some(&sel.tree)),
                _ => render_ranking(&sel),
            };
            emit(&text, &a.output, stdout)
        }
        Command::Simulate(a) => {
            check_format(a.format, &[Format::Csv, Format::Json])?;
            let g = load_graph(&a.input)?;
            let policy = Policy::parse(&a.policy)?;
            let out = run_policy(&g, &a.sim.sim_config(), &policy)?;
            if let Some(trace) = &a.trace {
                emit(&residual_trace_csv(&out, &g)?, &Some(trace.clone()), stdout)?;
            }
            let text = match a.format {
                Format::Json => {
                    let v = json!({
                        "policy": out.policy,
                        "lifetime": out.lifetime,
                        "first_death": out.first_death,
                        "end": out.end,
                        "rounds": out.reports.len(),
                        "delivered_packets": out.delivered_packets,
                        "initial_energy": to_joules(out.initial_total()),
                        "final_energy": to_joules(out.final_total()),
                        "drained_energy": to_joules(out.drained_total()),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
                }
                _ => reports_csv(&out)?,
            };
            emit(&text, &a.output, stdout)
        }
        Command::Compare(a) => {
            check_format(a.format, &[Format::Table, Format::Csv, Format::Json])?;
            let g = load_graph(&a.input)?;
            let policies = expand_policies(&a.policies, &g)?;
            let rows = compare_policies(&g, &a.sim.sim_config(), &policies, a.trials)?;
            let text = match a.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&rows).unwrap()),
                Format::Csv => {
                    let mut s = String::from("policy,lifetime,runs\n");
                    for r in &rows {
                        s.push_str(&format!("{},{},{}\n", r.policy, r.lifetime, r.lifetimes.len()));
                    }
                    s
                }
                _ => {
                    let w = rows.iter().map(|r| r.policy.len()).max().unwrap_or(6).max(6);
                    let mut s = format!("{:<w$}  lifetime\n", "policy");
                    for r in &rows {
                        s.push_str(&format!("{:<w$}  {:.3}\n", r.policy, r.lifetime));
                    }
                    s
                }
            };
            emit(&text, &a.output, stdout)
        }
        Command::Menu(a) => {
            let mode = if a.directed { GraphMode::Directed } else { GraphMode::Undirected };
            run_menu(stdin, stdout, mode, &a.scoring.select_config())?;
            Ok(())
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand,
/// returning the process exit code.
pub fn run<I, T, R, W, E>(args: I, stdin: R, stdout: &mut W, stderr: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    R: BufRead,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("usage error");
            let _ = writeln!(stderr, "{first}");
            return code;
        }
    };
    match dispatch(cli, stdin, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}
