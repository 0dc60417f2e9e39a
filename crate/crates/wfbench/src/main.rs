//! Thin argument-parsing shell over the library's command layer.
//!
//! Exit codes: 0 clean, 1 semantic finding (violation), 2 usage or input
//! error. All verdict logic lives in `wfbench::cli`; this file only maps
//! flags to calls and outcomes to the process interface.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use wfbench::cli::{cmd_check, cmd_hunt, cmd_table, cmd_validate, cmd_wfa, CommandOutcome};
use wfbench::search::{MetricityFilter, SearchConfig};
use wfbench::{Error, Mode};

#[derive(Parser)]
#[command(
    name = "wfbench",
    version,
    about = "Work-function workbench for k-server instances on finite distance spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Configurations are sets; a covered request freezes the table cell
    Set,
    /// Configurations may repeat points; every server is a candidate mover
    Multiset,
}

impl From<ModeArg> for Mode {
    fn from(arg: ModeArg) -> Mode {
        match arg {
            ModeArg::Set => Mode::Set,
            ModeArg::Multiset => Mode::Multiset,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricityArg {
    /// Pass every draw through the metric closure
    MetricOnly,
    /// Resample until the triangle inequality fails
    NonMetricOnly,
    /// Take draws as they come
    Both,
}

impl From<MetricityArg> for MetricityFilter {
    fn from(arg: MetricityArg) -> MetricityFilter {
        match arg {
            MetricityArg::MetricOnly => MetricityFilter::MetricOnly,
            MetricityArg::NonMetricOnly => MetricityFilter::NonMetricOnly,
            MetricityArg::Both => MetricityFilter::Both,
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = match s.split_once("..") {
        Some(parts) => parts,
        None => (s, s),
    };
    let parse = |part: &str| {
        part.trim()
            .parse::<u64>()
            .map_err(|_| format!("expected LO..HI or a single number, got {s:?}"))
    };
    Ok((parse(lo)?, parse(hi)?))
}

#[derive(Subcommand)]
enum Command {
    /// Scan an instance's distance space for triangle-inequality violations
    Validate {
        /// Instance JSON file
        instance: PathBuf,
        /// Write machine-readable findings (JSON lines) to this file
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the work-function table as TSV, one row per request
    Table {
        /// Instance JSON file
        instance: PathBuf,
        /// Configuration semantics
        #[arg(long, value_enum, default_value = "set")]
        mode: ModeArg,
        /// Replace the distances by their shortest-path closure first
        #[arg(long)]
        closure: bool,
        /// Write the table as a JSON document to this file
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check monotonicity and the Lipschitz bound across the table history
    Check {
        /// Instance JSON file
        instance: PathBuf,
        /// Configuration semantics
        #[arg(long, value_enum, default_value = "set")]
        mode: ModeArg,
        /// Replace the distances by their shortest-path closure first
        #[arg(long)]
        closure: bool,
        /// Write findings (JSON lines) to this file
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Simulate the work-function algorithm against the offline optimum
    Wfa {
        /// Instance JSON file
        instance: PathBuf,
        /// Configuration semantics
        #[arg(long, value_enum, default_value = "set")]
        mode: ModeArg,
        /// Replace the distances by their shortest-path closure first
        #[arg(long)]
        closure: bool,
        /// Write the run (moves and costs) as JSON to this file
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Generate seeded random instances and hunt for violations
    Hunt {
        /// Search configuration JSON; replaces the individual knobs below
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0, conflicts_with = "config")]
        seed: u64,
        /// Instances to generate
        #[arg(long, default_value_t = 100, conflicts_with = "config")]
        count: u32,
        /// Points per space, LO..HI or a single number
        #[arg(long, default_value = "3..6", value_parser = parse_range, conflicts_with = "config")]
        points: (u64, u64),
        /// Servers, LO..HI
        #[arg(long, default_value = "1..3", value_parser = parse_range, conflicts_with = "config")]
        servers: (u64, u64),
        /// Requests per instance, LO..HI
        #[arg(long, default_value = "1..8", value_parser = parse_range, conflicts_with = "config")]
        requests: (u64, u64),
        /// Integer edge weights, LO..HI
        #[arg(long, default_value = "1..10", value_parser = parse_range, conflicts_with = "config")]
        weights: (u64, u64),
        /// Which spaces to draw
        #[arg(long, value_enum, default_value = "both", conflicts_with = "config")]
        metricity: MetricityArg,
        /// Configuration semantics for the checks
        #[arg(long, value_enum, default_value = "set")]
        mode: ModeArg,
        /// Directory for reproducer files and report.json
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the report JSON to this file as well
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn load_search_config(path: &PathBuf) -> wfbench::Result<SearchConfig> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("search config {}: {e}", path.display())))
}

fn run(cli: Cli) -> wfbench::Result<(CommandOutcome, Option<PathBuf>)> {
    match cli.command {
        Command::Validate { instance, json } => Ok((cmd_validate(&instance)?, json)),
        Command::Table {
            instance,
            mode,
            closure,
            json,
        } => Ok((cmd_table(&instance, mode.into(), closure)?, json)),
        Command::Check {
            instance,
            mode,
            closure,
            json,
        } => Ok((cmd_check(&instance, mode.into(), closure)?, json)),
        Command::Wfa {
            instance,
            mode,
            closure,
            json,
        } => Ok((cmd_wfa(&instance, mode.into(), closure)?, json)),
        Command::Hunt {
            config,
            seed,
            count,
            points,
            servers,
            requests,
            weights,
            metricity,
            mode,
            out,
            json,
        } => {
            let search = match config {
                Some(path) => load_search_config(&path)?,
                None => SearchConfig {
                    seed,
                    count,
                    n: [points.0 as usize, points.1 as usize],
                    k: [servers.0 as usize, servers.1 as usize],
                    t: [requests.0 as usize, requests.1 as usize],
                    weights: [weights.0 as i64, weights.1 as i64],
                    metricity: metricity.into(),
                },
            };
            Ok((cmd_hunt(&search, mode.into(), out.as_deref())?, json))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, json)) => {
            print!("{}", outcome.human);
            if let Some(path) = json {
                let machine = outcome.machine.unwrap_or_default();
                if let Err(err) = std::fs::write(&path, machine) {
                    eprintln!("error: writing {}: {err}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
