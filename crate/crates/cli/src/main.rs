//! Command-line front end for the magnetic-scattering library.
//!
//! Exit codes: 0 success, 1 computation error (JSON diagnostic on stderr),
//! 2 usage error.

mod commands;
mod error;
mod field;
mod output;
mod verify;

use clap::{Parser, Subcommand};

use crate::error::{CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "magscatter",
    version,
    about = "Scattering observables for compactly supported magnetic fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    #[command(flatten)]
    common: commands::CommonArgs,
}

#[derive(Subcommand)]
enum Cmd {
    /// Total flux of a 2D field
    Flux,
    /// Sample a magnetic potential on a point set
    Potential(commands::PotentialArgs),
    /// Half-plane flux f and line circulations over a fan of directions
    Circulation(commands::CirculationArgs),
    /// Leading scattering kernel of a 2D field
    Amplitude2d(commands::Amplitude2dArgs),
    /// Leading scattering kernel of a 3D field
    Amplitude3d(commands::Amplitude3dArgs),
    /// Essential spectrum of the scattering matrix on the unit circle
    Spectrum(commands::SpectrumArgs),
    /// Differential cross-section versus angular separation
    Crosssection(commands::CrossSectionArgs),
    /// Toroidal solenoid report: tangency data, fluxes, spectrum
    Solenoid(commands::SolenoidArgs),
    /// Run built-in invariant checks
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Which invariant suite to run
    #[arg(long, value_enum, default_value = "all")]
    suite: verify::Suite,
}

/// The MAGSCATTER_THREADS variable caps worker parallelism. All current
/// computations are single-threaded, so any positive value is accepted and
/// acts as an upper bound of one.
fn thread_cap() -> CliResult<usize> {
    match std::env::var("MAGSCATTER_THREADS") {
        Err(_) => Ok(1),
        Ok(s) => {
            let n: usize = s.parse().map_err(|_| {
                CliError::new(
                    "invalid_config",
                    format!("MAGSCATTER_THREADS must be a positive integer, got `{s}`"),
                    "MAGSCATTER_THREADS",
                )
            })?;
            if n == 0 {
                return Err(CliError::new(
                    "invalid_config",
                    "MAGSCATTER_THREADS must be positive",
                    "MAGSCATTER_THREADS",
                ));
            }
            Ok(n.min(1))
        }
    }
}

fn run(cli: &Cli) -> CliResult<i32> {
    thread_cap()?;
    match &cli.cmd {
        Cmd::Flux => commands::flux(&cli.common)?,
        Cmd::Potential(args) => commands::potential(&cli.common, args)?,
        Cmd::Circulation(args) => commands::circulation(&cli.common, args)?,
        Cmd::Amplitude2d(args) => commands::amplitude2d(&cli.common, args)?,
        Cmd::Amplitude3d(args) => commands::amplitude3d(&cli.common, args)?,
        Cmd::Spectrum(args) => commands::spectrum(&cli.common, args)?,
        Cmd::Crosssection(args) => commands::crosssection(&cli.common, args)?,
        Cmd::Solenoid(args) => commands::solenoid(&cli.common, args)?,
        Cmd::Verify(args) => return verify::run(args.suite),
    }
    Ok(0)
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("{}", e.to_json());
            std::process::exit(1);
        }
    }
}
