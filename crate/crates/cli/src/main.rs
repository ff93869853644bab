//! `fmzv`: compute, reduce and verify finite multiple zeta values.
//!
//! Exit codes: 0 when every check passed, 1 on a verification failure,
//! 2 on usage or parse errors, 3 on arithmetic domain errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fmzv_core::Error;

#[derive(Parser, Debug)]
#[command(name = "fmzv", version, about = "Finite multiple zeta values of general integer indices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyChoice {
    All,
    Leftmost,
    Rightmost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseChoice {
    All,
    Head,
    Middle,
    Tail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenfunPath {
    Recurrence,
    Closed,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Truncated sum modulo p^n over a < n_1 < ... < n_r < b
    Value {
        /// Comma-separated index, e.g. "3,-1" ("" is the empty index)
        #[arg(allow_hyphen_values = true)]
        index: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        pow: u32,
        /// Summation range as "a,b" (default 0,p)
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        /// Also print the exact rational value
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Rewrite an index into positive indices with polynomial coefficients
    Reduce {
        #[arg(allow_hyphen_values = true)]
        index: String,
        /// Set the lower endpoint to 0 and print coefficients in x
        #[arg(long)]
        single_var: bool,
        #[arg(long, value_enum, default_value_t = StrategyChoice::Leftmost)]
        strategy: StrategyChoice,
        /// Also print each rewriting step
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Check a reduction against the truncated sums modulo p^n for a range of primes
    CheckReduce {
        #[arg(allow_hyphen_values = true)]
        index: String,
        #[arg(long, default_value_t = 100)]
        primes_up_to: u64,
        #[arg(long, default_value_t = 5)]
        primes_from: u64,
        #[arg(long, default_value_t = 1)]
        pow: u32,
        #[arg(long, value_enum, default_value_t = StrategyChoice::All)]
        strategies: StrategyChoice,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Print the Bernoulli numbers B_0..B_N (B_1 = +1/2)
    Bernoulli {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Tabulate the polynomials P_r(k) from the generating series
    Genfun {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        max_k: u32,
        /// Compare every entry with direct enumeration
        #[arg(long)]
        check_oracle: bool,
        #[arg(long, default_value_t = 10)]
        b_up_to: u64,
        #[arg(long, value_enum, default_value_t = GenfunPath::Recurrence)]
        path: GenfunPath,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Check the depth-lowering identity numerically at sampled points
    NumericCheck {
        #[arg(long = "case", value_enum, default_value_t = CaseChoice::All)]
        case: CaseChoice,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Truncation (default 100000 for depth 2, 10000 for depth 3)
        #[arg(long)]
        trunc: Option<u64>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Run check-reduce for every index in a file (one per line, '#' comments)
    Sweep {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        primes_up_to: u64,
        #[arg(long, default_value_t = 5)]
        primes_from: u64,
        #[arg(long, default_value_t = 1)]
        pow: u32,
        #[arg(long, value_enum, default_value_t = StrategyChoice::All)]
        strategies: StrategyChoice,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

/// Usage problems detected after argument parsing.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Value { index, prime, pow, range, exact, format } => {
            commands::value(&index, prime, pow, range.as_deref(), exact, format)
        }
        Command::Reduce { index, single_var, strategy, trace, format } => {
            commands::reduce(&index, single_var, strategy, trace, format)
        }
        Command::CheckReduce { index, primes_up_to, primes_from, pow, strategies, format } => {
            commands::check_reduce(&index, primes_from, primes_up_to, pow, strategies, format)
        }
        Command::Bernoulli { n, format } => commands::bernoulli(n, format),
        Command::Genfun { depth, max_k, check_oracle, b_up_to, path, format } => {
            commands::genfun(depth, max_k, check_oracle.then_some(b_up_to), path, format)
        }
        Command::NumericCheck { case, samples, trunc, tol, seed, format } => {
            commands::numeric_check(case, samples, trunc, tol, seed, format)
        }
        Command::Sweep { file, primes_up_to, primes_from, pow, strategies, format } => {
            commands::sweep(&file, primes_from, primes_up_to, pow, strategies, format)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() || err.downcast_ref::<std::io::Error>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::InvalidRange { .. } | Error::NotPrime(_)) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
