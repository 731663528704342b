use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fockport_cli::commands::{run_classical_bound, run_reproduce, run_sweep_gain, run_teleport};
use fockport_cli::config::{self, ClassicalConfig, ReproduceConfig, SweepConfig, TeleportConfig};
use fockport_cli::error::{CliError, EXIT_OK};
use fockport_cli::output::{Format, Sink};

const THREADS_ENV: &str = "FOCKPORT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "fockport", version, about = "Fock-space simulation of dual-rail qubit teleportation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// JSON configuration file; defaults are used for missing fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; results go to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Teleport a dual-rail input mixture and report fidelities.
    Teleport(Common),
    /// Fidelity and photon-number fractions against feedforward gain.
    SweepGain(Common),
    /// Optimal measure-and-prepare strategy with a Monte Carlo check.
    ClassicalBound(Common),
    /// Regenerate every acceptance table and a pass/fail manifest.
    Reproduce(Common),
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Teleport(c) => {
            let cfg: TeleportConfig = config::load(c.config.as_deref(), c.seed)?;
            run_teleport(&cfg, c.format.unwrap_or(Format::Json), &Sink::new(c.out))
        }
        Command::SweepGain(c) => {
            let cfg: SweepConfig = config::load(c.config.as_deref(), c.seed)?;
            run_sweep_gain(&cfg, c.format.unwrap_or(Format::Csv), &Sink::new(c.out))
        }
        Command::ClassicalBound(c) => {
            let cfg: ClassicalConfig = config::load(c.config.as_deref(), c.seed)?;
            run_classical_bound(&cfg, c.format.unwrap_or(Format::Json), &Sink::new(c.out))
        }
        Command::Reproduce(c) => {
            if c.format == Some(Format::Csv) {
                return Err(CliError::Usage("reproduce writes a JSON manifest with CSV tables".into()));
            }
            let cfg: ReproduceConfig = config::load(c.config.as_deref(), c.seed)?;
            let manifest = run_reproduce(&cfg, &Sink::new(c.out))?;
            for o in &manifest.criteria {
                let status = match (o.passed, o.informational) {
                    (true, _) => "PASS",
                    (false, true) => "INFO",
                    (false, false) => "FAIL",
                };
                eprintln!("criterion {} {status}: {}: {}", o.id, o.name, o.summary);
            }
            if manifest.failures.is_empty() {
                Ok(())
            } else {
                let ids: Vec<String> = manifest.failures.iter().map(u8::to_string).collect();
                Err(CliError::CriteriaFailed { failed: ids.len(), ids: ids.join(", ") })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(EXIT_OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
