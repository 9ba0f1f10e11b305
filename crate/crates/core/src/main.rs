use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oscnet::cli::config::RunConfig;
use oscnet::cli::{run, CliError, Command, Overrides};
use oscnet::diffusion::DiffusionSource;

#[derive(Parser)]
#[command(
    name = "oscnet",
    version,
    about = "Open oscillator networks relaxing to a correlated Gibbs state"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Complete-positivity, Einstein and balance report (exit 4 if a hard constraint fails)
    Check(Common),
    /// Closed-form against oracle diffusion coefficients
    Diffusion(Common),
    /// Einstein-relation diagnostics per oscillator
    Einstein(Common),
    /// Covariance and logarithmic negativity along the time grid
    Evolve(Common),
    /// Sudden-death time and negativity extremes for each swept zeta
    Sweep(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Defaults to stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    /// `oracle` or `closed-form`
    #[arg(long, default_value = "oracle", value_parser = parse_source)]
    diffusion_source: DiffusionSource,
}

fn parse_source(s: &str) -> Result<DiffusionSource, String> {
    s.parse().map_err(|e: oscnet::Error| e.to_string())
}

fn execute(command: Command, common: &Common) -> Result<i32, CliError> {
    let config = RunConfig::load(&common.config)?;
    let overrides = Overrides {
        tmax: common.tmax,
        dt: common.dt,
        diffusion_source: common.diffusion_source,
    };
    let outcome = run(command, config, &overrides)?;
    let written = match &common.output {
        Some(path) => std::fs::write(path, &outcome.document),
        None => std::io::stdout()
            .lock()
            .write_all(outcome.document.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return Ok(1);
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match &cli.command {
        Sub::Check(c) => (Command::Check, c),
        Sub::Diffusion(c) => (Command::Diffusion, c),
        Sub::Einstein(c) => (Command::Einstein, c),
        Sub::Evolve(c) => (Command::Evolve, c),
        Sub::Sweep(c) => (Command::Sweep, c),
    };
    let code = match execute(command, common) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
