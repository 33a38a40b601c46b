//! `origami` command-line front end.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 runtime failure.

pub mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use origami_core::algebra::AlgebraError;
use origami_core::cyclic::CyclicError;
use origami_core::euclid::EuclidError;
use origami_core::numerics::{Precision, PRECISION_ENV};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Runtime(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 1,
            CliError::Runtime(_) | CliError::Io { .. } => 2,
        }
    }
}

impl From<CyclicError> for CliError {
    fn from(e: CyclicError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<EuclidError> for CliError {
    fn from(e: EuclidError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Parse { .. } => CliError::Parse(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

/// Writes via a temporary file in the target directory and renames it into
/// place, so a failed command never leaves a partial file.
pub fn write_atomic(path: &Path, content: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(content.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[derive(Debug, Parser)]
#[command(name = "origami", version, about = "Origami constructions, cyclic polygons, pyramids and polynomial certificates")]
pub struct Cli {
    /// Working precision in significant decimal digits (minimum 30).
    #[arg(long, global = true, env = PRECISION_ENV)]
    pub precision: Option<u32>,
    /// Suppress the report on standard output.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Execute a construction script (.ori).
    Run {
        script: PathBuf,
        /// Print the step-by-step trace.
        #[arg(long)]
        trace: bool,
    },
    /// Construct the convex cyclic polygon with the given sides.
    Cyclic {
        /// Comma-separated side lengths, e.g. 1,2,3,4,5 (decimals or p/q).
        #[arg(long)]
        sides: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Build the pyramid with lateral edges R over the given sides.
    Pyramid {
        #[arg(long = "R", value_name = "R")]
        big_r: String,
        #[arg(long)]
        sides: String,
        #[arg(long)]
        obj: Option<PathBuf>,
    },
    /// Polynomial certificates.
    Poly {
        #[command(subcommand)]
        action: PolyAction,
    },
    /// Regular n-gon with unit side through the 2^k-gon descent.
    Ngon {
        n: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Solve x^3 + a x + b = 0 by a single O6 fold.
    Cubic {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum PolyAction {
    /// Real roots, irreducibility and the S_p criterion.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
    },
}

fn dispatch(cli: &Cli, prec: Precision) -> Result<String, CliError> {
    use commands::*;
    Ok(match &cli.command {
        Command::Run { script, trace } => run(script, *trace, prec)?.to_string(),
        Command::Cyclic { sides, svg } => cyclic(&parse_sides(sides)?, svg.as_deref(), prec)?.to_string(),
        Command::Pyramid { big_r, sides, obj } => {
            pyramid_cmd(&parse_number(big_r)?, &parse_sides(sides)?, obj.as_deref(), prec)?.to_string()
        }
        Command::Poly { action: PolyAction::Analyze { polynomial } } => poly_analyze(polynomial, prec)?.to_string(),
        Command::Ngon { n, svg } => ngon(*n, svg.as_deref(), prec)?.to_string(),
        Command::Cubic { a, b } => cubic(&parse_number(a)?, &parse_number(b)?, prec)?.to_string(),
    })
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let prec = match cli.precision.map(Precision::new).transpose() {
        Ok(p) => p.unwrap_or_default(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    prec.set_default();
    match dispatch(&cli, prec) {
        Ok(report) => {
            if !cli.quiet {
                let _ = write!(out, "{report}");
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
