mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coprime_spectra::Error;

use config::{BenchArgs, EstimateArgs, SimulateArgs, VerifyArgs};

/// Frequency estimation from multi-channel coprime sub-Nyquist sampling.
#[derive(Debug, Parser)]
#[command(name = "coprime-spectra", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize tones, sample them through a coprime scheme and write the samples
    Simulate(SimulateArgs),
    /// Estimate tone frequencies from a sample file
    Estimate(EstimateArgs),
    /// Check the decomposition and coverage properties of coprime lattices
    Verify(VerifyArgs),
    /// Monte Carlo RMSE sweeps
    Bench(BenchArgs),
}

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_ESTIMATION: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ZeroCoverage { .. } | Error::DegenerateSubspace(_) | Error::EigenFailure => {
                EXIT_ESTIMATION
            }
            _ => EXIT_VALIDATION,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => commands::simulate(args),
        Command::Estimate(args) => commands::estimate(args),
        Command::Verify(args) => commands::verify(args),
        Command::Bench(args) => commands::bench(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
