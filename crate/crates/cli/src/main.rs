mod output;
mod shor;
mod tables;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::{fail, CliError, Format};

/// Anyon tables, verification suites and the noisy Shor-15 experiment for the
/// quaternion quantum double.
#[derive(Parser, Debug)]
#[command(name = "qdouble", version, about)]
struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump group, modular, fusion or braid tables.
    Tables(TablesArgs),
    /// Run verification suites; exits 1 when any check fails.
    Verify(VerifyArgs),
    /// Simulate the reduced Shor circuit for N = 15, a = 11.
    #[command(subcommand)]
    Shor(ShorCommand),
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file; relative paths resolve against QDOUBLE_OUTPUT_DIR when it
    /// is set. Defaults to stdout, or to a file in QDOUBLE_OUTPUT_DIR.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Default output directory.
    #[arg(long, env = "QDOUBLE_OUTPUT_DIR", hide_env_values = true)]
    output_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    Group,
    Smatrix,
    Tmatrix,
    Fusion,
    Braids,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogArg {
    Printed,
    Amended,
}

#[derive(Args, Debug)]
struct TablesArgs {
    table: Table,
    /// Braid pairing: ΦΦ, ΣΣ, ΣΦ (and ΦΣ for arity 2); ASCII PP, SS, SP, PS.
    #[arg(long, default_value = "ΦΦ")]
    pairing: String,
    /// Braid arity: 1 (2×2) or 2 (8×8).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    arity: u8,
    /// Two-qubit generator catalog.
    #[arg(long, value_enum, default_value_t = CatalogArg::Printed)]
    catalog: CatalogArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Modular,
    Recoupling,
    Braids,
    Gates,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: Suite,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendArg {
    Ideal,
    Braided,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DataFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct ShorArgs {
    /// Realizations per noise level.
    #[arg(long, default_value_t = 1000)]
    realizations: u64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = BackendArg::Ideal)]
    backend: BackendArg,
    #[arg(long = "out", value_enum, default_value_t = DataFormat::Csv)]
    format: DataFormat,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Subcommand, Debug)]
enum ShorCommand {
    /// One noise level.
    Run {
        /// Noise standard deviation ν (radians).
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        nu: f64,
        #[command(flatten)]
        args: ShorArgs,
    },
    /// Several noise levels.
    Sweep {
        /// Comma-separated ν values.
        #[arg(long, value_delimiter = ',', default_value = "0,0.1,0.5,1", allow_negative_numbers = true)]
        nu: Vec<f64>,
        #[command(flatten)]
        args: ShorArgs,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::internal(e.to_string()))?;
    }
    match cli.command {
        Command::Tables(a) => {
            let body = tables::render(a.table, &a.pairing, a.arity, a.catalog, a.format)?;
            output::emit(&body, a.out.output, a.out.output_dir, &format!("{:?}.{}", a.table, a.format.ext()).to_lowercase())?;
            Ok(true)
        }
        Command::Verify(a) => {
            let report = verify::run(a.suite)?;
            let body = if a.json { output::to_json(&report)? } else { report.to_text() };
            output::emit(&body, a.out.output, a.out.output_dir, if a.json { "verify.json" } else { "verify.txt" })?;
            Ok(report.passed())
        }
        Command::Shor(ShorCommand::Run { nu, args }) => shor::run("run", &[nu], &args).map(|_| true),
        Command::Shor(ShorCommand::Sweep { nu, args }) => shor::run("sweep", &nu, &args).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail(&CliError::usage(e.to_string().trim_end()));
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => fail(&e),
    }
}
