//! Command-line front end for `heitmann-core`: poset and ring inputs in JSON,
//! certificates out in JSON, and independent re-verification of certificates.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use heitmann_core::{Budget, ErrorKind};
use serde_json::Value;

mod commands;
pub mod json;

/// Exit status of a run.
pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] heitmann_core::Error),
    #[error("{0}")]
    Input(String),
    /// A certificate was read but failed verification.
    #[error("certificate rejected: {0}")]
    Rejected(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Refusal => EXIT_REFUSED,
                ErrorKind::Resource => EXIT_RESOURCE,
                ErrorKind::Input => EXIT_INPUT,
            },
            CliError::Input(_) => EXIT_INPUT,
            CliError::Rejected(_) => EXIT_REFUSED,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "heitmann",
    version,
    about = "Lattice dimensions and generator-reduction certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finite distributive lattices given by their prime posets.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Finite spectral spaces.
    #[command(subcommand)]
    Spectra(SpectraCmd),
    /// Certificates over polynomial rings.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Re-verify a certificate from scratch.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DimArg {
    Kdim,
    Jdim,
    Hdim,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StrategyArg {
    Upper,
    Lower,
    Generators,
    Chain,
}

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    /// Print one dimension of the lattice.
    Dim {
        #[arg(long, value_enum, default_value = "kdim")]
        kind: DimArg,
        #[arg(long)]
        poset: PathBuf,
        /// Evaluation route for the Krull dimension.
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
    },
    /// Size, dimensions and distinguished points.
    Info {
        #[arg(long)]
        poset: PathBuf,
    },
    /// Glue a diagram of lattices along principal quotients.
    Glue {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Quotient `T/(zero = 0, one = 1)`; elements are named by generating points.
    Quotient {
        #[arg(long)]
        poset: PathBuf,
        /// Points whose downsets are sent to 0, comma separated.
        #[arg(long, default_value = "")]
        zero: String,
        /// Points whose downsets are sent to 1, comma separated.
        #[arg(long, default_value = "")]
        one: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpectraCmd {
    /// Max, Min, jspec and Jspec with the dimensions.
    Info {
        #[arg(long)]
        poset: PathBuf,
    },
    /// Glue spaces along shared quasi-compact opens.
    Glue {
        #[arg(long)]
        diagram: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// Ring description `{"char": 0, "vars": [...]}`.
    #[arg(long)]
    pub ring: PathBuf,
    /// Generators of the modulus `M`, comma separated.
    #[arg(long, default_value = "")]
    pub modulus: String,
}

#[derive(Debug, Subcommand)]
pub enum RingCmd {
    /// Collapse certificate for a sequence of elements.
    KdimCert {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        xs: String,
        #[arg(long, default_value_t = heitmann_core::zariski::DEFAULT_DEGREE_BOUND)]
        degree_bound: u32,
    },
    /// Radically equivalent generators, at most one more than the dimension.
    Kronecker {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = heitmann_core::zariski::DEFAULT_DEGREE_BOUND)]
        degree_bound: u32,
        /// Use the localized construction instead of collapse certificates.
        #[arg(long)]
        localized: bool,
    },
    /// Stable range: unimodular `(a, bs)` to unimodular `bs + a·xs`.
    Bass {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        bs: String,
    },
    /// Elementary operations taking a unimodular vector to `e₁`.
    UnimodE1 {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        v: String,
    },
    /// Split a free rank-one summand off the image of a projection.
    SerreSplit {
        #[command(flatten)]
        ring: RingArgs,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        k: usize,
    },
    /// Fewer generators for a finitely presented module.
    Swan {
        #[command(flatten)]
        ring: RingArgs,
        /// Presentation matrix; rows separated by `;`, entries by `,`.
        #[arg(long)]
        presentation: String,
        /// Number of generators wanted; defaults to the least the bounds allow.
        #[arg(long)]
        target: Option<usize>,
    },
    /// Automorphisms of `N ⊕ A` sending `(C, a)` to `(0, 1)`.
    Cancel {
        #[command(flatten)]
        ring: RingArgs,
        /// Projection with image `N`; rows separated by `;`.
        #[arg(long)]
        projection: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        a: String,
        /// Order of the minors generating the unit ideal.
        #[arg(long)]
        k: usize,
    },
}

/// Budget from `HEITMANN_BUDGET`: either a number of S-pairs, or a comma
/// separated list of `pairs=`, `degree=` and `radical=` settings.
pub fn budget_from_env(value: Option<&str>) -> Result<Budget, CliError> {
    let mut b = Budget::default();
    let Some(text) = value.map(str::trim).filter(|s| !s.is_empty()) else {
        return Ok(b);
    };
    let num = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| CliError::Input(format!("HEITMANN_BUDGET: bad number {s:?}")))
    };
    if let Ok(n) = text.parse::<u64>() {
        b.max_pairs = n as usize;
        return Ok(b);
    }
    for part in text.split(',') {
        let (key, val) = part.split_once('=').ok_or_else(|| {
            CliError::Input(format!("HEITMANN_BUDGET: expected key=value, got {part:?}"))
        })?;
        let n = num(val)?;
        match key.trim() {
            "pairs" => b.max_pairs = n as usize,
            "degree" => b.max_degree = n as u32,
            "radical" => b.max_radical_exponent = n as u32,
            other => {
                return Err(CliError::Input(format!(
                    "HEITMANN_BUDGET: unknown key {other:?}"
                )))
            }
        }
    }
    Ok(b)
}

pub(crate) fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Runs one command and returns the text it prints.
pub fn execute(cli: &Cli, budget: &Budget) -> Result<String, CliError> {
    commands::dispatch(&cli.command, budget)
}

/// Parses arguments, runs, writes the output, and returns the exit status.
pub fn main_with<I, T>(args: I, budget_var: Option<&str>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = budget_from_env(budget_var).and_then(|b| execute(&cli, &b));
    match result {
        Ok(text) => match &cli.out {
            Some(path) => match fs::write(path, text + "\n") {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    EXIT_INPUT
                }
            },
            None => {
                // A closed pipe (`| head`) is not an error.
                let _ = writeln!(std::io::stdout(), "{text}");
                EXIT_OK
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
