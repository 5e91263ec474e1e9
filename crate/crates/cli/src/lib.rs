//! Commands behind the `robdd` binary. Each returns data; printing and exit
//! codes are left to `main`.

pub mod bench;
pub mod check;
pub mod compiled;
pub mod report;
pub mod selftest;

use std::path::Path;

use robdd::frontend::parse;
use robdd::Formula;
use thiserror::Error;

pub use compiled::{Backend, BackendKind, CompileOptions, Compiled};
pub use report::{RunReport, Verdict};

/// Anything that ends a command with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{source}")]
    Parse {
        path: String,
        #[source]
        source: robdd::frontend::ParseError,
    },
    #[error(transparent)]
    Robdd(#[from] robdd::Error),
    #[error("resource limit: {0}")]
    Limit(String),
    #[error("backends disagree: {0}")]
    Disagreement(String),
    #[error("{0}")]
    Usage(String),
}

/// Reads and parses one formula file.
pub fn load_formula(path: &Path) -> Result<Formula, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

/// Rejects formulas using variables beyond `max_vars`.
pub fn check_var_limit(formulas: &[Formula], max_vars: Option<u32>) -> Result<(), CliError> {
    if let Some(limit) = max_vars {
        if let Some(m) = formulas.iter().map(Formula::max_var).max().filter(|&m| m > limit) {
            return Err(CliError::Limit(format!("formula uses x{m}, over --max-vars {limit}")));
        }
    }
    Ok(())
}
