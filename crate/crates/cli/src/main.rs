use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use affmult_cli::job::{Format, Overrides};
use affmult_cli::report::EXIT_INPUT;
use affmult_cli::{multiplet_table, parse_rational, sweep, verify, InputError, RunOutput};

#[derive(Parser)]
#[command(
    name = "affmult",
    version,
    about = "Exact checks of multiplet identities for equal-rank pairs"
)]
struct Cli {
    /// Working precision in bits for asymptotic dimensions.
    #[arg(long, global = true, env = "AFFMULT_PRECISION")]
    precision: Option<usize>,
    /// Longest coset representative the enumerations may reach.
    #[arg(long, global = true)]
    max_length: Option<usize>,
    /// δ-depth for truncated characters, as a rational "p/q".
    #[arg(long, global = true)]
    depth: Option<String>,
    #[arg(long, global = true, value_parser = ["json", "table"])]
    format: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks listed in a job file.
    Verify { job: PathBuf },
    /// Run checks over a grid of algebras, pairs and automorphisms.
    Sweep { grid: PathBuf },
    /// Print the multiplet of a job's weight.
    Multiplet { job: PathBuf },
}

fn overrides(cli: &Cli) -> Result<Overrides, InputError> {
    let depth = match &cli.depth {
        Some(d) => Some(parse_rational(d).map_err(|e| InputError(format!("--depth: {e}")))?),
        None => None,
    };
    let format = match &cli.format {
        Some(f) => Some(f.parse::<Format>()?),
        None => None,
    };
    Ok(Overrides {
        max_length: cli.max_length,
        depth,
        precision: cli.precision,
        format,
    })
}

fn read(path: &PathBuf) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<RunOutput, InputError> {
    let over = overrides(cli)?;
    match &cli.command {
        Command::Verify { job } => verify(&read(job)?, &over),
        Command::Sweep { grid } => sweep(&read(grid)?, &over),
        Command::Multiplet { job } => multiplet_table(&read(job)?, &over),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    match &out.path {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &out.text) {
                eprintln!("error: {p}: {e}");
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        None => print!("{}", out.text),
    }
    ExitCode::from(out.code as u8)
}
