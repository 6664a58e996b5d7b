//! `ferroflow`: graph polynomials, Potts correlations through flows and
//! random currents, and verification suites for the identities linking them.
//!
//! Exit status: 0 when everything passed, 1 when an identity failed, 2 on a
//! usage error, 3 when a computation would exceed an enumeration cap.

mod catalogue;
mod commands;
mod config;
mod error;
mod graph_io;
mod output;
mod rational;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{decay, poly, sigma, verify};
use config::{CommonArgs, RunConfig};
use error::{exit, CliError, CliResult};
use output::emit;

#[derive(Debug, Parser)]
#[command(name = "ferroflow", version, about = "Flows, random currents and ferromagnetic correlations on small multigraphs")]
#[command(after_help = "Settings may also come from a key = value file (--config) or FERROFLOW_<FLAG> environment \
variables, e.g. FERROFLOW_TRUNCATION_TARGET=1e-9. Flags beat the environment, which beats the file.")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the Whitney function, Tutte polynomial, flow count or flow polynomial
    Poly(poly::PolyArgs),
    /// Two-point correlation sigma(x, y) by one of several routes
    Sigma(sigma::SigmaArgs),
    /// Run identity verification suites over a catalogue
    Verify(verify::VerifyArgs),
    /// Correlation against graph distance from --x (default 0)
    Decay(decay::DecayArgs),
}

fn run(cli: &Cli) -> CliResult<u8> {
    let cfg = RunConfig::resolve(&cli.common)?;
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Poly(args) => emit(&[poly::run(args, &cfg)?], cfg.format, &mut out)?,
        Command::Sigma(args) => emit(&[sigma::run(args, &cfg)?], cfg.format, &mut out)?,
        Command::Decay(args) => {
            let (rows, monotone) = decay::run(args, &cfg)?;
            emit(&rows, cfg.format, &mut out)?;
            if monotone == Some(false) {
                eprintln!("decay: correlation increases with distance along the path");
                return Ok(exit::FAIL);
            }
        }
        Command::Verify(args) => {
            let report = verify::run(args, &cfg)?;
            emit(&report.entries, cfg.format, &mut out)?;
            eprintln!(
                "verify: {} checks, {} pass, {} fail, {} uncertified",
                report.entries.len(),
                report.count(verify::Status::Pass),
                report.count(verify::Status::Fail),
                report.count(verify::Status::Uncertified),
            );
            if report.failed() {
                return Ok(exit::FAIL);
            }
        }
    }
    out.flush().map_err(CliError::Output)?;
    Ok(exit::PASS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.is_broken_pipe() => ExitCode::from(exit::PASS),
        Err(e) => {
            eprintln!("ferroflow: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
