//! Command-line front end: model analysis, table generation and generator
//! verification.
//!
//! Exit codes: 0 on success, 1 on a contract violation (error JSON on
//! stderr), 2 when generated data disagrees with the reference tables.

mod commands;
mod model;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] nhtopo::Error),
    #[error("{0}")]
    Io(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io(_) => "Io",
            CliError::Json(_) => "Json",
            CliError::Usage(_) => "Usage",
        }
    }
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    message: String,
}

#[derive(Parser, Debug)]
#[command(name = "nhtopo", version, about = "Symmetry classes, gaps and topological invariants of non-Hermitian Bloch Hamiltonians")]
pub struct Cli {
    /// Numerical tolerance for residuals, gaps and quantization.
    #[arg(long, global = true, default_value_t = 1e-8, allow_hyphen_values = true)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the 54 symmetry classes; `*` marks the first class of each i-map orbit.
    Classes,
    /// Detect the class of a model's symmetries and check its residuals.
    Classify { model: PathBuf },
    /// Point and line gap margins.
    Gaps { model: PathBuf },
    /// Compute one topological invariant.
    Invariant {
        model: PathBuf,
        #[arg(long, value_enum)]
        kind: InvariantArg,
        /// Reference energy for the determinant winding, as `re,im`.
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        eref: String,
    },
    /// Flatten a line-gapped model and write the result as a model file.
    Flatten {
        model: PathBuf,
        #[arg(long, default_value = "real")]
        axis: nhtopo::gaps::Axis,
        /// Output path; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate classification tables and compare them with the reference data.
    Table {
        /// Every class and every dimension.
        #[arg(long, conflicts_with = "class")]
        all: bool,
        #[arg(long)]
        class: Option<String>,
        /// A single dimension, 0 to 7; all eight when absent.
        #[arg(long)]
        delta: Option<u8>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Check the zero-dimensional generators against the table engine's blocks.
    VerifyGenerators {
        /// Block number, slug or class name.
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// List catalog entries, check one, or export its models as files.
    Catalog {
        id: Option<String>,
        /// Write one model file per model into this directory.
        #[arg(long, requires = "id")]
        export: Option<PathBuf>,
        /// Parameter overrides as `name=value`.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvariantArg {
    Winding,
    Detwinding,
    Chern,
    Signature,
    Signdet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Md,
}

/// What a command printed and how the process should exit.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }
}

fn fail(e: &CliError) -> ExitCode {
    let body = ErrorJson { error: e.kind(), message: e.to_string() };
    eprintln!("{}", serde_json::to_string(&body).expect("error JSON serializes"));
    ExitCode::from(1)
}

fn main() -> ExitCode {
    // Usage errors exit with 1 like any other contract violation; 2 is kept
    // for disagreement with the reference data.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.render().to_string().trim().to_string())),
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            ExitCode::from(out.code)
        }
        Err(e) => fail(&e),
    }
}
