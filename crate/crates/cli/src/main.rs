//! `qhyper`: command-line front end for qhyper-core.
//!
//! Exit codes: 0 success (any verdict), 1 usage, 2 parse error,
//! 3 validation or numeric error, 4 size cap exceeded.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qhyper_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "qhyper",
    version,
    about = "Qubit states as hypermatrices: HOSVD, LU tests, hyperdeterminants, n-tangles"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Absolute tolerance for comparisons
    #[arg(long, global = true, env = "QHYPER_TOL", default_value_t = qhyper_core::DEFAULT_TOL, value_parser = positive_f64)]
    pub tol: f64,

    /// Seed for randomized commands
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Fast,
    Reduced,
    General,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Via {
    Hdet,
    Spinflip,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignWhat {
    Ent,
    Sigma,
}

/// A state source: a file path, `-` for stdin, or inline ket text (anything
/// containing `|`). Files may hold ket text or state JSON.
pub type StateArg = String;

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Read ket text or state JSON, validate it and write state JSON
    Parse {
        #[arg(long = "in", value_name = "SOURCE")]
        input: StateArg,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<String>,
        /// Scale the input to unit norm
        #[arg(long, conflicts_with = "no_normalize")]
        renormalize: bool,
        /// Keep the amplitudes as written
        #[arg(long)]
        no_normalize: bool,
    },
    /// Per-mode singular values
    Svals {
        #[arg(long)]
        state: StateArg,
        /// Only this mode (1-based)
        #[arg(long)]
        mode: Option<usize>,
    },
    /// Full HOSVD: singular values, factors and core
    Hosvd {
        #[arg(long)]
        state: StateArg,
    },
    /// Three-valued local-unitary equivalence test
    LuEquiv {
        #[arg(long)]
        a: StateArg,
        #[arg(long)]
        b: StateArg,
    },
    /// Relabel qubits by a permutation of the modes
    Permute {
        #[arg(long)]
        state: StateArg,
        /// Images of modes 1..n, e.g. "3,2,1"
        #[arg(long)]
        perm: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Combinatorial hyperdeterminant
    Hdet {
        #[arg(long)]
        state: StateArg,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
    },
    /// n-tangle of a 2n-qubit state
    Tangle {
        #[arg(long)]
        state: StateArg,
        #[arg(long, value_enum, default_value_t = Via::Spinflip)]
        via: Via,
    },
    /// Anti-diagonal sign string of Ent_n or sigma_y^(2n)
    Signs {
        #[arg(long, value_enum)]
        what: SignWhat,
        #[arg(long)]
        n: u32,
        /// Print the P/N block word instead of signs
        #[arg(long)]
        blocks: bool,
    },
    /// Check Ent_n = ((-1)^n / 2) sigma_y^(2n)
    Verify {
        #[arg(long)]
        n: u32,
    },
    /// Time hdet fast against reduced on random 2n-qubit states
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        reps: usize,
    },
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("tolerance must be positive and finite".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    pub fn io(path: &str, e: std::io::Error) -> Self {
        Failure {
            code: 3,
            message: format!("{path}: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Json(_) => 2,
            Error::SizeCap { .. } => 4,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
