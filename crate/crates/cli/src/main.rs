use std::path::PathBuf;
use std::process::ExitCode;

use casimir_qubit::Mode;
use casimir_qubit_cli::commands::{self, ModeView, ZetaFunction};
use casimir_qubit_cli::config::{resolve, Overrides, THREADS_ENV};
use casimir_qubit_cli::{emit, with_threads, CliError, Outcome};
use clap::{Parser, Subcommand};

/// Pseudo-density matrices of slab vacuum modes and the Casimir energy.
///
/// Settings are taken from defaults, then `--config`, then
/// CASIMIR_QUBIT_THREADS (thread count only), then flags.
#[derive(Debug, Parser)]
#[command(name = "casimir-qubit", version)]
struct Cli {
    /// Flat `key = value` configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every verification suite and print the report
    Verify,
    /// Casimir energy per unit area
    Energy,
    /// Inspect one mode `j,k,l,n`
    Mode {
        #[arg(value_parser = parse_mode, allow_hyphen_values = true)]
        mode: Mode,
        #[arg(long, value_enum, default_value = "rho")]
        what: ModeView,
    },
    /// Entropy pipeline over the beta grid, extrapolated to zero temperature
    EntropyEnergy,
    /// Evaluate one special function
    Zeta {
        #[arg(value_enum)]
        function: ZetaFunction,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [j, k, l, n] => Mode::new(j, k, l, n).map_err(|e| e.to_string()),
        _ => Err(format!("expected j,k,l,n, got {s:?}")),
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let env = std::env::var(THREADS_ENV).ok();
    let cfg = resolve(cli.config.as_deref(), env.as_deref(), &cli.overrides)?;
    let outcome = with_threads(cfg.threads, || match cli.command {
        Command::Verify => commands::cmd_verify(&cfg),
        Command::Energy => commands::cmd_energy(&cfg),
        Command::Mode { mode, what } => commands::cmd_mode(&cfg, mode, what),
        Command::EntropyEnergy => commands::cmd_entropy_energy(&cfg),
        Command::Zeta { function, s, a } => commands::cmd_zeta(&cfg, function, s, a),
    })??;
    emit(&outcome, cfg.out.as_deref())?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.exit_code() as u8),
        Err(e) => {
            eprintln!("casimir-qubit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
