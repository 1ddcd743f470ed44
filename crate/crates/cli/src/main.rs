//! `polymodels`: exact checks of polynomial diffusion models from the command line.

mod commands;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "polymodels",
    version,
    about = "Polynomial-eigenvector diffusion models from finite subgroups of O(3)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Write the JSON report here (`-` for standard output).
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Omit timings so reruns are byte-identical.
    #[arg(long)]
    pub deterministic: bool,
}

/// A model name plus its family parameter.
#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Model name, e.g. `omega1` or `omega21`.
    #[arg(long)]
    pub model: String,
    /// Family parameter for `omega1` through `omega9`.
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Molien series of a group, optionally cross-checked with Reynolds dimensions.
    Molien {
        /// Group label: `T`, `OJ`, `TO`, `C5D5`, `D3`, `cornulier`, ...
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: Option<u32>,
        /// Prime for the four-dimensional group.
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 12)]
        terms: usize,
        /// Compare with the Reynolds dimension up to this degree.
        #[arg(long)]
        degree: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Print the catalog entry of a model.
    Model {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Run every exact check on one model.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        /// Valuation cap of the operator matrix.
        #[arg(long, default_value_t = 8)]
        degree: u32,
        /// Also run the floating-point checks with this many interior samples.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Verify every cataloged model and print the summary table.
    VerifyAll {
        /// Family parameter used for `omega1` through `omega9`.
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 6)]
        degree: u32,
        /// Parallel workers.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Draw the boundary contours to `<out>.svg` and `<out>.csv`.
    Render {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Output path without extension.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Spectrum of the sphere-image operator on filtered polynomials.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        /// Valuation cap.
        #[arg(long, default_value_t = 8)]
        degree: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Covering maps, the octahedral quartic identity and classical identifications.
    Covers {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// The four-dimensional negative control.
    Cornulier {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(outcome) if outcome.failing.is_empty() => ExitCode::SUCCESS,
        Ok(outcome) => {
            eprintln!("failing checks: {}", outcome.failing.join(", "));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
