//! `zerosum`: single-instance queries and exhaustive verification sweeps.
//!
//! Exit codes: 0 when every requested check holds, 1 on a counterexample or
//! failed hypothesis, 2 on usage errors.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "zerosum",
    version,
    about = "Zero-sum and product-one free sequence toolkit"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a theorem on one sequence.
    Verify {
        #[command(subcommand)]
        check: VerifyCheck,
    },
    /// Find the unit multiplier with the smallest bar-sum, e.g. `normalize "n=5: 3,3,3,3"`.
    Normalize { sequence: String },
    /// Print a sub-multiset whose bar-sum is `t`.
    Decompose {
        sequence: String,
        #[arg(long)]
        t: u64,
    },
    /// Subsequence sums (mod n and bar-sums) of a sequence.
    Sums { sequence: String },
    /// Dihedral group queries.
    Dihedral {
        #[command(subcommand)]
        action: DihedralAction,
    },
    /// Small Davenport constant of `cyclic:<n>`, `sum:<n1>x<n2>...` or `dihedral:<n>`.
    Davenport {
        group: String,
        /// Longest sequence length to search; defaults to the group order.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Run an exhaustive verification suite.
    Sweep {
        /// interval-theorem, normalizer, bounds, classification, davenport, oracle-equivalence or witness.
        suite: String,
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances for the witness suite.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Include `elapsed_ms` in the report (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCheck {
    /// Interval theorem and corollary, e.g. `verify theorem "n=7: 1,1,1,2" --k 3`.
    Theorem {
        sequence: String,
        /// Defaults to n - |S|.
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
    /// Multiplicity lower bound for a zero-sum free sequence of length n - k.
    Bounds {
        sequence: String,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DihedralAction {
    /// Enumerate product-one free length-n sequences over D_2n and compare with the predicted family.
    Classify {
        #[arg(long)]
        n: u32,
    },
    /// Product-one freeness of a sequence such as `D n=3: s0,s1,s2`.
    Check { sequence: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli);
    print!("{}", outcome.stdout);
    for line in &outcome.stderr {
        eprintln!("{line}");
    }
    ExitCode::from(outcome.code)
}
