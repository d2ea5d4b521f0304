//! Command-line harness around the `graybox` library: instance generation
//! and evaluation, hill climbing, partition crossover, iterated local
//! search, and spectral interaction checks. Every stochastic run is driven
//! by an explicit seed and emits a machine-readable record, so results are
//! reproducible byte for byte (wall-clock fields aside).

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub mod commands;
pub mod config;
pub mod instances;
pub mod run;

/// Harness failure tagged with its process exit code: a bad invocation or
/// missing file (2), malformed input content (3), or a size cap (4).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Capacity(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Capacity(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Parse(m) => write!(f, "{m}"),
            CliError::Capacity(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

pub(crate) fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Writes `text` to the given path, or to stdout when no path is set.
pub(crate) fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}")))
        }
    }
}
