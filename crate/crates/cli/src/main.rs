mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Largest `--max-degree` accepted without `--allow-high-degree`.
pub const DEGREE_CAP: u32 = 8;

#[derive(Parser, Debug)]
#[command(name = "dunkl", version, about = "Dunkl operators, Appell systems and Dunkl kernels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Run case fan-out on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List catalog root systems, their orbits and group orders.
    Groups {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Generate exact polynomial tables.
    Gen {
        #[arg(value_enum)]
        table: Table,
        #[command(flatten)]
        job: ExactJob,
    },
    /// Run exact identity suites.
    Verify {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        job: ExactJob,
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<FaultArg>,
    },
    /// Evaluate the Dunkl kernel, heat kernel or density numerically.
    Eval {
        #[arg(value_enum)]
        quantity: Quantity,
        #[command(flatten)]
        group: GroupArgs,
        /// First argument, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Second argument, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Time, required for `heat` and `theta`.
        #[arg(long)]
        t: Option<f64>,
        /// Target accuracy of the kernel series.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Highest series degree before giving up.
        #[arg(long, default_value_t = 200)]
        series_degree: u32,
        /// Evaluate `K(ix, y)` instead of `K(x, y)` (kernel only).
        #[arg(long)]
        imaginary: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Moments,
    Appell,
    Hermite,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Kernel,
    Heat,
    Theta,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    PerturbALambda,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// Root system family: Z2, A, B or D.
    #[arg(long)]
    pub family: String,
    /// Ambient dimension N.
    #[arg(long)]
    pub rank: usize,
    /// Multiplicities per root orbit as "p/q", comma separated; one value is
    /// used for every orbit.
    #[arg(long, allow_hyphen_values = true)]
    pub k: String,
}

#[derive(Args, Debug, Clone)]
pub struct ExactJob {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Gaussian time as "p/q".
    #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
    pub t: String,
    #[arg(long, default_value_t = 4)]
    pub max_degree: u32,
    /// Accept `--max-degree` above the built-in cap.
    #[arg(long)]
    pub allow_high_degree: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
