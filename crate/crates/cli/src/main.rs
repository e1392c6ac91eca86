//! `qdd`: run, tabulate and analyze the four-player Diner's Dilemma,
//! classical or entangled.

mod analyze;
mod output;
mod simulate;
mod sweep;
mod table;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdd::circuit::{build_game_circuit, export_qasm};
use qdd::equilibrium::Model;
use qdd::ewl::StrategyProfile;
use qdd::payoff::{load_table, PayoffTable};
use thiserror::Error;

use crate::output::{emit, Format};

#[derive(Parser, Debug)]
#[command(name = "qdd", version, about = "Classical and entangled four-player Diner's Dilemma")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Play one profile and print its outcome distribution and payoffs
    Simulate(SimulateArgs),
    /// Every pure profile with its joint probabilities and payoffs
    Table(TableArgs),
    /// Equilibria, optima, dominant moves and the deviation check
    Analyze(TableArgs),
    /// One player's payoff over the (theta, phi) strategy square
    Sweep(SweepArgs),
    /// Write the gate-level circuit of a profile as OpenQASM 2.0
    ExportQasm(ExportArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Payoff configuration (JSON); the built-in table if omitted
    #[arg(long, value_name = "FILE")]
    payoffs: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write to this file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Classical,
    Quantum,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Classical => Model::Classical,
            ModelArg::Quantum => Model::Quantum,
        }
    }
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// e.g. `C,E,C,E`, `AAAA` or `theta=0.3:phi=1.2,E,C,A`
    #[arg(long, value_parser = parse_profile)]
    profile: StrategyProfile,

    #[arg(long, value_enum, default_value_t = ModelArg::Quantum)]
    model: ModelArg,

    /// Sample this many measurement shots instead of printing exact probabilities
    #[arg(long)]
    shots: Option<u64>,

    /// Sampler seed
    #[arg(long, requires = "shots", default_value_t = 0)]
    seed: u64,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Quantum)]
    model: ModelArg,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// The sweeping player
    #[arg(long, value_parser = parse_player, default_value = "D")]
    player: qdd::Player,

    /// The other three players' moves in seating order, e.g. `EEE`
    #[arg(long, value_parser = parse_others)]
    others: [qdd::ewl::Move; 3],

    /// Grid points over theta in [0, pi]
    #[arg(long, default_value_t = 21)]
    theta_steps: usize,

    /// Grid points over phi in [0, pi/2]
    #[arg(long, default_value_t = 11)]
    phi_steps: usize,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[arg(long, value_parser = parse_profile)]
    profile: StrategyProfile,

    /// Write to this file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qdd::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("writing output: {0}")]
    Stdout(std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn parse_profile(s: &str) -> Result<StrategyProfile, String> {
    s.parse().map_err(|e: String| {
        if e.contains(' ') {
            e
        } else {
            format!("unrecognized strategy `{e}`")
        }
    })
}

fn parse_player(s: &str) -> Result<qdd::Player, String> {
    let mut chars = s.trim().chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => qdd::Player::from_letter(c),
        _ => None,
    }
    .ok_or_else(|| format!("unknown player `{s}`, expected A, B, C or D"))
}

fn parse_others(s: &str) -> Result<[qdd::ewl::Move; 3], String> {
    qdd::ewl::parse_moves::<3>(s).map_err(|e| {
        if e.contains(' ') {
            e
        } else {
            format!("unrecognized strategy `{e}`")
        }
    })
}

fn read_table(path: Option<&Path>) -> Result<PayoffTable, CliError> {
    match path {
        None => Ok(PayoffTable::builtin()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            Ok(load_table(&text)?)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(a) => {
            let table = read_table(a.common.payoffs.as_deref())?;
            let report = simulate::run(&a.profile, a.model.into(), &table, a.shots.map(|s| (s, a.seed)))?;
            emit(&report, a.common.format, a.common.out.as_deref())
        }
        Command::Table(a) => {
            let table = read_table(a.common.payoffs.as_deref())?;
            let rows = table::run(a.model.into(), &table)?;
            emit(&rows, a.common.format, a.common.out.as_deref())
        }
        Command::Analyze(a) => {
            let table = read_table(a.common.payoffs.as_deref())?;
            let report = analyze::run(a.model.into(), &table)?;
            emit(&report, a.common.format, a.common.out.as_deref())
        }
        Command::Sweep(a) => {
            let table = read_table(a.common.payoffs.as_deref())?;
            let grid = sweep::run(a.player, a.others, a.theta_steps, a.phi_steps, &table)?;
            emit(&grid, a.common.format, a.common.out.as_deref())
        }
        Command::ExportQasm(a) => {
            let text = export_qasm(&build_game_circuit(&a.profile)?);
            output::write_text(&text, a.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
