//! The `expfun` command line.
//!
//! Every subcommand writes to `--out` (or stdout) and exits with `0` when all checks pass,
//! `1` on a verification mismatch and `2` on bad input; failures also print a one-line JSON
//! error record to stderr. All randomness comes from `--seed` (falling back to
//! `EXPFUN_SEED`, then 0), so identical invocations produce identical bytes.
//!
//! CSV layouts:
//!
//! - `tor`: `s,internal_degree,weight,dim`, a blank line, then `total_degree,weight,dim`;
//! - `symhom`: `i,dim`;
//! - `verify-tor`: `case,status,mismatches`.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Mismatch(_) => "mismatch",
            CliError::Input(_) => "input",
        }
    }
}

macro_rules! input_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}

input_errors!(
    std::io::Error,
    serde_json::Error,
    crate::hopfcore::HopfError,
    crate::catalogue::CatalogueError,
    crate::dieudonne::DieudonneError,
    crate::barhom::BarError,
    crate::symgrp::SymError,
    crate::exactla::LinAlgError
);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FiltrationArg {
    Coradical,
    Augmentation,
}

/// Exact computations with graded Hopf algebras, Dieudonné modules and bar constructions.
#[derive(Debug, Parser)]
#[command(name = "expfun", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// The prime.
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Degree bound (total degree for bar constructions).
    #[arg(long, global = true)]
    pub bound: Option<u32>,
    #[arg(long, global = true)]
    pub weight_bound: Option<u32>,
    /// Bound on the homological degree of bar constructions.
    #[arg(long, global = true)]
    pub hom_bound: Option<u32>,
    #[arg(long, global = true, env = "EXPFUN_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file (stdout if absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a catalogue algebra as hopf-v1 JSON. Kinds: S, Lambda, Gamma, S_n, Gamma_n, G_n, Morava.
    Catalogue {
        kind: String,
        #[arg(long, default_value_t = 2)]
        gen_degree: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
    },
    /// Check the axioms of a hopf-v1 file, or the relations of a dieu-v1 file.
    Verify { file: PathBuf },
    /// Tor table of a catalogue kind or a hopf-v1 file.
    Tor {
        input: String,
        #[arg(long, default_value_t = 2)]
        gen_degree: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        iterate: usize,
    },
    /// Compare computed Tor tables with the closed forms.
    VerifyTor {
        /// Run the whole grid at `--p`.
        #[arg(long)]
        all: bool,
        kind: Option<String>,
        #[arg(long, default_value_t = 2)]
        gen_degree: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        iterate: usize,
    },
    /// Emit the string module `r:word` (e.g. `0:FVV`, `1:V^2F^∞`) as dieu-v1 JSON.
    String { spec: String },
    /// Decompose a dieu-v1 module into string modules.
    Decompose { file: PathBuf },
    /// Signature (multiset of P/Q profile pairs) of a dieu-v1 module.
    Signature { file: PathBuf },
    /// Fake truncations φ_0, …, φ_k of a signature file.
    Phi {
        file: PathBuf,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Reconstruct a signature from a φ file.
    Reconstruct { file: PathBuf },
    /// Admissible tuples of length k, as JSON lines.
    Nakaoka {
        #[arg(long)]
        k: usize,
    },
    /// Predicted dims of H_i(𝔖_d, V^{⊗d}).
    Symhom {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        dim_v: u32,
        /// Also run the group-homology oracle and compare.
        #[arg(long)]
        check: bool,
    },
    /// Check the explicit self-duality of the cyclically graded algebra.
    SelfdualCheck,
    /// Associated graded of a hopf-v1 file.
    Gr {
        file: PathBuf,
        #[arg(long, value_enum)]
        filtration: FiltrationArg,
    },
}

/// What a subcommand produced: the bytes to emit, and a summary if a check failed.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub output: Vec<u8>,
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(output: impl Into<Vec<u8>>) -> Self {
        Self { output: output.into(), failure: None }
    }

    fn checked(output: impl Into<Vec<u8>>, failure: Option<String>) -> Self {
        Self { output: output.into(), failure }
    }
}

/// Runs a parsed configuration.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    commands::dispatch(config)
}

fn emit(config: &RunConfig, bytes: &[u8]) -> Result<(), CliError> {
    match &config.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn report(e: &CliError) -> ExitCode {
    let record = serde_json::json!({"error": e.kind(), "message": e.to_string()});
    eprintln!("{record}");
    ExitCode::from(e.exit_code())
}

/// Entry point of the binary.
pub fn main_exit() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return report(&CliError::Input(e.to_string()));
        }
    };
    let outcome = match run(&config) {
        Ok(o) => o,
        Err(e) => return report(&e),
    };
    if let Err(e) = emit(&config, &outcome.output) {
        return report(&e);
    }
    match outcome.failure {
        None => ExitCode::SUCCESS,
        Some(summary) => report(&CliError::Mismatch(summary)),
    }
}
