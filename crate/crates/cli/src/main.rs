use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use revlog_cli::{run, CliError, Command, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(name = "revlog", version, about = "Batch sizes for a two-depot reverse-logistics inventory system")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; overrides outputPath. Standard output if neither is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format; overrides outputFormat.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Fill the cpuSeconds column with measured times.
    #[arg(long, global = true)]
    timing: bool,

    /// Weight-grid subdivisions for `pareto`; overrides gridSubdivisions.
    #[arg(long, global = true)]
    subdivisions: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Closed-form optimum of the holding cost.
    Solve,
    /// Optimum under the floor-space limits.
    SolveConstrained,
    /// Solutions over a range of lambda or Dr.
    Sweep,
    /// Holding cost, emissions and energy front.
    Pareto,
    /// Brute-force grid search.
    Oracle,
    /// Run the command named in the configuration.
    Run,
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Csv,
    Json,
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let path = cli
        .config
        .ok_or_else(|| CliError::Config("--config <path> is required".into()))?;
    let mut config = RunConfig::load(&path)?;
    if let Some(f) = cli.format {
        config.output_format = match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        };
    }
    if let Some(out) = cli.out {
        config.output_path = Some(out);
    }
    if let Some(m) = cli.subdivisions {
        config.grid_subdivisions = m;
    }
    config.record_timing |= cli.timing;

    let command = match cli.command {
        Cmd::Solve => Command::Solve,
        Cmd::SolveConstrained => Command::SolveConstrained,
        Cmd::Sweep => Command::Sweep,
        Cmd::Pareto => Command::Pareto,
        Cmd::Oracle => Command::Oracle,
        Cmd::Run => config
            .command
            .ok_or_else(|| CliError::Config("configuration has no command".into()))?,
    };
    let report = run(&config, command)?;
    for note in &report.notes {
        eprintln!("{note}");
    }
    let written = report.write(config.output_path.as_deref(), config.output_format)?;
    for file in written {
        eprintln!("wrote {}", file.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("revlog: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
