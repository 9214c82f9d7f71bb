//! Batch verification front end: property suites, cocycle norms, the
//! dichotomy verdict and exponent scans, with schema-validated JSON configs
//! and reproducible JSON/CSV reports.
//!
//! Exit codes: 0 success, 1 a scientific check failed, 2 configuration or
//! schema error.

mod commands;
mod config;
mod elements;
mod report;

use clap::{Parser, Subcommand};
use std::path::PathBuf;

use config::{CliError, OutputFormat};

#[derive(Debug, Parser)]
#[command(
    name = "iwasawa",
    version,
    about = "Numerical toolkit for the Iwasawa subgroup P = S ⋉ N of U(p,p)"
)]
pub struct Cli {
    /// Matrix size p (default 2)
    #[arg(long, global = true)]
    p: Option<usize>,

    /// Master seed for all stochastic estimates
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Monte Carlo sphere samples
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// JSON config file, validated against schema/runconfig.json
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Report destination (stdout when omitted)
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Report format
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Omit the timestamp so identical configs give byte-identical reports
    #[arg(long, global = true)]
    no_timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the group-law, θ-multiplicativity and Jacobian property suites
    VerifyGroup {
        /// Random trials per check
        #[arg(long)]
        trials: Option<usize>,
        /// Corrupt a skew-Hermitian input to exercise the corruption guard
        #[arg(long)]
        inject_fault: bool,
    },
    /// Closed-form vs direct cocycle norms, one row per element
    CocycleNorm,
    /// Aggregate special/bounded/unitary verdict for the configured p
    Verdict {
        /// Number of random s0 elements
        #[arg(long)]
        s_samples: Option<usize>,
        /// Number of random n elements
        #[arg(long)]
        n_samples: Option<usize>,
    },
    /// Sweep multiplier exponents q: convergence class, unitarity, norms
    Scan {
        /// Comma-separated exponents, e.g. 1.0,1.5,2.0
        #[arg(long, value_delimiter = ',')]
        q_grid: Option<Vec<f64>>,
    },
    /// Classify a skew-Hermitian matrix into its S-orbit
    OrbitClassify {
        /// Matrix as JSON, e.g. '[[[0.0,2.0]]]'
        #[arg(long)]
        matrix: Option<String>,
        /// Degeneracy tolerance
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Invert s ↦ i·s*·s on the principal orbit
    Factor {
        #[arg(long)]
        matrix: Option<String>,
    },
}

fn init_thread_pool() -> Result<(), CliError> {
    // IWASAWA_THREADS caps the worker count; estimates are reduced in fixed
    // index order, so the value never changes results.
    if let Ok(text) = std::env::var("IWASAWA_THREADS") {
        let n: usize = text
            .parse()
            .map_err(|_| CliError::Config(format!("IWASAWA_THREADS must be a positive integer, got {text:?}")))?;
        if n == 0 {
            return Err(CliError::Config("IWASAWA_THREADS must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    init_thread_pool()?;
    let resolved = config::resolve(&cli)?;
    match &cli.command {
        Command::VerifyGroup {
            trials,
            inject_fault,
        } => commands::verify_group::run(&resolved, *trials, *inject_fault),
        Command::CocycleNorm => commands::cocycle_norm::run(&resolved),
        Command::Verdict {
            s_samples,
            n_samples,
        } => commands::verdict::run(&resolved, *s_samples, *n_samples),
        Command::Scan { q_grid } => commands::scan::run(&resolved, q_grid.as_deref()),
        Command::OrbitClassify { matrix, tol } => {
            commands::orbit::classify(&resolved, matrix.as_deref(), *tol)
        }
        Command::Factor { matrix } => commands::orbit::factor(&resolved, matrix.as_deref()),
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(CliError::Config(msg)) => {
            eprintln!("config error: {msg}");
            2
        }
        Err(CliError::Check(msg)) => {
            eprintln!("check failed: {msg}");
            1
        }
        Err(CliError::Io(msg)) => {
            eprintln!("io error: {msg}");
            2
        }
    };
    std::process::exit(code);
}
