use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chainamp_cli::{
    cmd_amplitude, cmd_check, cmd_lattice, cmd_propagator, cmd_spectrum, cmd_twinslit,
    default_zero_tolerance, CliError, CliResult, ExitStatus, Format, Outcome, Sweep,
    DEFAULT_PATTERN_TOLERANCE, DEFAULT_RESIDUAL_TOLERANCE,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "chainamp", version, about = "Path-integral numerics on oriented cell complexes")]
struct Cli {
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Numeric tolerance (defaults depend on the subcommand)
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the two-worldline ladder complex as a graph file
    Lattice {
        #[arg(long)]
        n_time: usize,
    },
    /// Verify the chain condition and self-consistency criterion of a graph file
    Check {
        graph: PathBuf,
        /// Seed for the random test vector
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Eigenvalues of the action kernel, largest first
    Spectrum {
        graph: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
    /// Symmetry amplitude for a graph and its edge values
    Amplitude {
        graph: PathBuf,
        edge_values: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
    /// Frequency sweep of the two-oscillator Green's function
    Propagator {
        #[arg(long)]
        m: f64,
        #[arg(long)]
        k: f64,
        #[arg(long, allow_hyphen_values = true)]
        k12: f64,
        #[arg(long, allow_hyphen_values = true)]
        omega_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        omega_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
    },
    /// Twin-slit fringe pattern from a JSON config
    Twinslit { config: PathBuf },
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: Cli) -> CliResult<Outcome> {
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let zero_tol = cli.tol.unwrap_or_else(default_zero_tolerance);
    match cli.command {
        Command::Lattice { n_time } => cmd_lattice(n_time),
        Command::Check { graph, seed } => cmd_check(&read(&graph)?, zero_tol, seed, format),
        Command::Spectrum { graph, beta } => cmd_spectrum(&read(&graph)?, beta, zero_tol, format),
        Command::Amplitude { graph, edge_values, alpha, beta } => {
            cmd_amplitude(&read(&graph)?, &read(&edge_values)?, alpha, beta, zero_tol, format)
        }
        Command::Propagator { m, k, k12, omega_min, omega_max, steps, hbar } => {
            let sweep = Sweep { mass: m, spring: k, coupling: k12, hbar, omega_min, omega_max, steps };
            cmd_propagator(&sweep, cli.tol.unwrap_or(DEFAULT_RESIDUAL_TOLERANCE), format)
        }
        Command::Twinslit { config } => {
            cmd_twinslit(&read(&config)?, cli.tol.unwrap_or(DEFAULT_PATTERN_TOLERANCE), format)
        }
    }
}

fn emit(out: Option<&Path>, body: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, body)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::usage(format!("cannot write stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(ExitStatus::Usage as u8) } else { ExitCode::SUCCESS };
        }
    };
    let out = cli.out.clone();
    let result = run(cli).and_then(|outcome| {
        emit(out.as_deref(), &outcome.body)?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status as u8)
        }
    }
}
