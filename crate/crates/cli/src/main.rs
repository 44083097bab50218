//! `avgreg`: generate instances, search ladders, build and verify regularity
//! partitions, run the GS_3 prefix-tree pipeline and test embeddings.
//!
//! Exit codes: 0 when every verification passed, 1 when some failed (the
//! report carries witnesses), 2 on structural or usage errors.

mod commands;
mod config;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Debug, Parser, Serialize)]
#[command(name = "avgreg", version, about = "Exact regularity constructions and verifiers")]
pub struct Cli {
    /// Worker threads for parallel checks; 0 lets the pool decide.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Report file; standard output when absent.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Tabular per-row output file.
    #[arg(long, global = true)]
    pub tsv: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Write a generated instance.
    Generate(GenerateArgs),
    /// Longest delta-ladder of a binary function.
    Stability(StabilityArgs),
    /// Build a partition of an average system and verify it.
    Partition(PartitionArgs),
    /// Verify strong regularity of a partition.
    Verify(VerifyArgs),
    /// Prefix-tree partition of ternary instances.
    #[command(subcommand)]
    Gs3(Gs3Command),
    /// Monotonicity, half-simplex realizability and GS_3 embedding.
    #[command(subcommand)]
    Embed(EmbedCommand),
    /// Run the subcommand described by a TOML experiment config.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Binary average `mu(P_x cap Q_y)` with random sets.
    Average,
    /// Four-point parity encoding of three random graphs; graph `i` uses
    /// seed `3 * seed + i`.
    Parity,
    /// Full `GS_p(n)`.
    Gs,
    /// Half-simplex on an evenly spaced grid.
    Halfsimplex,
    /// Random average system with arbitrary `k` and `d`.
    RandomAverage,
    /// Monotone random sub-instance of `GS_3(n)` with orders.
    GsSample,
}

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Part sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Size of the averaging space.
    #[arg(long, default_value_t = 8)]
    pub omega: usize,
    #[arg(long, default_value = "1/2")]
    pub density: String,
    #[arg(long, default_value_t = 3)]
    pub p: u8,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Grid points per part.
    #[arg(long, default_value_t = 5)]
    pub points: usize,
    #[arg(long, default_value_t = 0.25)]
    pub zero_fraction: f64,
    #[arg(long, default_value_t = 50_000)]
    pub attempts: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Greedy,
}

#[derive(Debug, Args, Serialize)]
pub struct StabilityArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub delta: String,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Largest part size the exact search accepts.
    #[arg(long, default_value_t = avgreg::stability::DEFAULT_EXACT_CAP)]
    pub cap: usize,
    #[arg(long, default_value_t = 2000)]
    pub iterations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyArg {
    Profile,
    Energy,
}

#[derive(Debug, Args, Serialize)]
pub struct PartitionArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = StrategyArg::Profile)]
    pub strategy: StrategyArg,
    #[arg(long, default_value = "1/10")]
    pub epsilon: String,
    #[arg(long, default_value = "const:1/10")]
    pub budget: String,
    /// Relative discrepancy above which a face counts as irregular.
    #[arg(long, default_value = "1/100")]
    pub eta: String,
    #[arg(long, default_value_t = 64)]
    pub max_steps: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub partition: PathBuf,
    #[arg(long)]
    pub epsilon: String,
    /// `const:c`, `recip:c` or `exp:c`.
    #[arg(long)]
    pub budget: String,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gs3Command {
    /// Families, null ledgers, class census and the split-direction check.
    Analyze(Gs3Args),
    /// Write the three pair partitions as one graded partition.
    Partition(Gs3PartitionArgs),
    /// Check families, mass, split directions and triple homogeneity.
    Verify(Gs3Args),
}

#[derive(Debug, Args, Serialize)]
pub struct Gs3Args {
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct Gs3PartitionArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbedCommand {
    Monotone(EmbedArgs),
    Halfsimplex(EmbedArgs),
    Gs3(EmbedGs3Args),
}

#[derive(Debug, Args, Serialize)]
pub struct EmbedArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub witness: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct EmbedGs3Args {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub witness: Option<PathBuf>,
    /// Target depth.
    #[arg(long)]
    pub n: usize,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Generate(_) => "generate",
            Command::Stability(_) => "stability",
            Command::Partition(_) => "partition",
            Command::Verify(_) => "verify",
            Command::Gs3(Gs3Command::Analyze(_)) => "gs3 analyze",
            Command::Gs3(Gs3Command::Partition(_)) => "gs3 partition",
            Command::Gs3(Gs3Command::Verify(_)) => "gs3 verify",
            Command::Embed(EmbedCommand::Monotone(_)) => "embed monotone",
            Command::Embed(EmbedCommand::Halfsimplex(_)) => "embed halfsimplex",
            Command::Embed(EmbedCommand::Gs3(_)) => "embed gs3",
            Command::Run { .. } => "run",
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            Command::Generate(a) => Some(a.seed),
            Command::Stability(a) => Some(a.seed),
            _ => None,
        }
    }
}

/// What a subcommand hands back for the report.
pub struct Outcome {
    pub pass: bool,
    pub result: Value,
    pub tsv: Option<String>,
}

fn write_text(path: Option<&Path>, text: &str) -> avgreg::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn execute(cli: Cli) -> ExitCode {
    let cli = match cli.command {
        Command::Run { config } => match load_config(&config) {
            Ok(inner) => inner,
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
        },
        _ => cli,
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let outcome = match commands::dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = json!({
        "tool": "avgreg",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cli.command.name(),
        "config": &cli,
        "seed": cli.command.seed(),
        "pass": outcome.pass,
        "result": outcome.result,
        "wall_time_ms": start.elapsed().as_millis() as u64,
    });
    let written = serde_json::to_string_pretty(&report)
        .map_err(avgreg::Error::from)
        .and_then(|s| write_text(cli.report.as_deref(), &(s + "\n")))
        .and_then(|_| match (&cli.tsv, &outcome.tsv) {
            (Some(p), Some(t)) => write_text(Some(p), t),
            _ => Ok(()),
        });
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        eprintln!("{}: verification failed", cli.command.name());
        ExitCode::from(1)
    }
}

fn load_config(path: &Path) -> Result<Cli, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let cfg = config::ExperimentConfig::parse(&text)?;
    let cli = Cli::try_parse_from(cfg.to_args()).map_err(|e| e.to_string())?;
    if matches!(cli.command, Command::Run { .. }) {
        return Err("a config cannot run another config".into());
    }
    Ok(cli)
}

fn main() -> ExitCode {
    execute(Cli::parse())
}
