//! `dwork`: point counts on Dwork hypersurfaces over finite fields.

mod config;
mod cosets;
mod count;
mod error;
mod output;
mod table;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dwork_core::Suite;

use crate::config::Settings;
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "dwork",
    version,
    about = "Point counts on Dwork hypersurfaces via finite-field hypergeometric functions"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML file with defaults; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for cached Gauss sum tables.
    #[arg(long, global = true, env = "DWORK_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Largest accepted distance of a count from the nearest integer.
    #[arg(long, global = true)]
    rounding_guard: Option<f64>,
    /// Relative bound for leftover cancellation in decompositions.
    #[arg(long, global = true)]
    cancellation_tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Degree of the hypersurface.
    #[arg(long)]
    pub d: u32,
    /// Characteristic.
    #[arg(long)]
    pub p: u64,
    /// Extension degree, q = p^e.
    #[arg(long, default_value_t = 1)]
    pub e: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count points on one fiber.
    Count(count::CountArgs),
    /// Run a residual suite.
    Verify(verify::VerifyArgs),
    /// List coset classes for a degree.
    Cosets(cosets::CosetsArgs),
    /// Tabulate counts and term values over a range of λ.
    Table(table::TableArgs),
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let settings = Settings::resolve(
        cli.config.as_deref(),
        cli.format,
        cli.cache_dir,
        cli.rounding_guard,
        cli.cancellation_tol,
    )?;
    let mut out = String::new();
    let ok = match cli.command {
        Command::Count(a) => count::run(&a, &settings, &mut out)?,
        Command::Verify(a) => verify::run(&a, &settings, &mut out)?,
        Command::Cosets(a) => cosets::run(&a, &settings, &mut out)?,
        Command::Table(a) => table::run(&a, &settings, &mut out)?,
    };
    output::emit(&out)?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("dwork: {e}");
            ExitCode::from(e.code())
        }
    }
}

pub fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}
