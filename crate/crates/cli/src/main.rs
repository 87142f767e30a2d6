mod commands;
mod error;
mod formats;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Parser)]
#[command(name = "zdkit", version, about = "Zero-determinant strategies in repeated games with public monitoring")]
struct Cli {
    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Directory for output files and the run manifest.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Detect ZD strategies and solve the stationary payoffs of a profile.
    Analyze(AnalyzeArgs),
    /// Check consistency and independence of a set of certificates.
    Check(CheckArgs),
    /// Build one of the closed-form strategy families.
    Construct(ConstructArgs),
    /// Monte Carlo simulation of time-averaged payoffs.
    Simulate(SimulateArgs),
    /// Search for a strategy enforcing a relation from a finite family.
    Search(SearchArgs),
}

#[derive(Args, Serialize)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub game: PathBuf,
    /// Overrides any monitoring embedded in the game file; perfect monitoring otherwise.
    #[arg(long)]
    pub monitoring: Option<PathBuf>,
    #[arg(long = "strategy", required = true)]
    pub strategies: Vec<PathBuf>,
    /// Initial joint state such as `1-2`, or `uniform`.
    #[arg(long, default_value = "uniform")]
    pub initial: String,
}

#[derive(Args, Serialize)]
pub struct CheckArgs {
    #[arg(required = true)]
    pub certificates: Vec<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Tft,
    EqualizerImperfect,
    Controller,
    ControllerImperfect,
    ZeroSumController,
}

#[derive(Args, Serialize)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub family: Family,
    /// Prisoner's-dilemma payoffs `R,S,T,P`.
    #[arg(long, allow_hyphen_values = true)]
    pub payoffs: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub pp: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub qp: Option<String>,
}

#[derive(Args, Serialize)]
pub struct SimulateArgs {
    #[arg(long)]
    pub game: PathBuf,
    #[arg(long)]
    pub monitoring: Option<PathBuf>,
    #[arg(long = "strategy", required = true)]
    pub strategies: Vec<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    pub steps: u64,
    #[arg(long, default_value_t = 0, conflicts_with = "seeds")]
    pub seed: u64,
    /// Comma-separated seeds for a batch run.
    #[arg(long, value_delimiter = ',')]
    pub seeds: Option<Vec<u64>>,
    /// Initial joint state such as `1-1`, or `uniform` for independent uniform actions.
    #[arg(long, default_value = "uniform")]
    pub initial: String,
    /// Sampling interval; defaults to steps / 1000.
    #[arg(long)]
    pub record_every: Option<u64>,
    /// Trajectory CSV path; batch runs insert the seed before the extension.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchFamily {
    /// Every coefficient vector over `--grid` with zero constant.
    GammaZero,
    /// Every coefficient vector over `--grid`.
    Grid,
    /// `e_k = t` for every player and every target.
    Equalizer,
    /// Explicit relations given with `--relation`.
    Relation,
}

#[derive(Args, Serialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub game: PathBuf,
    #[arg(long)]
    pub monitoring: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub player: usize,
    #[arg(long, value_enum, default_value_t = SearchFamily::GammaZero)]
    pub family: SearchFamily,
    #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long, allow_hyphen_values = true)]
    pub targets: Option<String>,
    /// Coefficients `a0,a1,...,aN` of `a0 + a1 e1 + ... + aN eN = 0`.
    #[arg(long = "relation", allow_hyphen_values = true)]
    pub relations: Vec<String>,
    /// Extra coefficient values for strategy directions.
    #[arg(long, allow_hyphen_values = true)]
    pub direction_grid: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    pub max_candidates: usize,
}

/// What a command produced: the report and the files it wrote.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub outputs: Vec<PathBuf>,
}

pub struct Context {
    pub format: Format,
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Context { format: cli.format, out: cli.out.clone() };
    let (name, inputs, parameters, result) = match &cli.command {
        Command::Analyze(a) => {
            let mut inputs = vec![a.game.clone()];
            inputs.extend(a.monitoring.clone());
            inputs.extend(a.strategies.iter().cloned());
            ("analyze", inputs, json!(a), commands::analyze(a, &ctx))
        }
        Command::Check(a) => ("check", a.certificates.clone(), json!(a), commands::check(a, &ctx)),
        Command::Construct(a) => ("construct", Vec::new(), json!(a), commands::construct(a, &ctx)),
        Command::Simulate(a) => {
            let mut inputs = vec![a.game.clone()];
            inputs.extend(a.monitoring.clone());
            inputs.extend(a.strategies.iter().cloned());
            ("simulate", inputs, json!(a), commands::simulate(a, &ctx))
        }
        Command::Search(a) => {
            let mut inputs = vec![a.game.clone()];
            inputs.extend(a.monitoring.clone());
            ("search", inputs, json!(a), commands::search(a, &ctx))
        }
    };

    let mut manifest = json!({
        "command": name,
        "version": env!("CARGO_PKG_VERSION"),
        "inputs": inputs,
        "parameters": parameters,
        "global": { "format": ctx.format, "out": ctx.out },
    });
    let code = match result {
        Ok(outcome) => {
            match ctx.format {
                Format::Text => print!("{}", outcome.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&outcome.json).expect("report serializes")),
            }
            manifest["outputs"] = json!(outcome.outputs);
            manifest["status"] = json!("ok");
            manifest["exit_code"] = json!(0);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            manifest["outputs"] = json!([]);
            manifest["status"] = json!("error");
            manifest["exit_code"] = json!(e.exit_code());
            manifest["error"] = json!(e.to_string());
            e.exit_code()
        }
    };
    if let Err(e) = emit_manifest(name, &manifest, ctx.out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}

/// Writes `<out>/<command>.manifest.json`, or one line on stderr without `--out`.
fn emit_manifest(name: &str, manifest: &Value, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            let path = dir.join(format!("{name}.manifest.json"));
            let text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
            std::fs::write(&path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            eprintln!("manifest: {manifest}");
            Ok(())
        }
    }
}
