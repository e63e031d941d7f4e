//! Exit-coded errors and deterministic file emission.
//!
//! Exit codes: 0 success, 2 input/parse error, 3 infeasible, 4 degenerate
//! data. All numeric output uses 17-significant-digit decimals so repeated
//! runs are byte-comparable.

use std::path::{Path, PathBuf};

pub use slipfree_core::numfmt::dec17;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn infeasible(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    pub fn degenerate(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
}

/// JSON rendering for an optional number: `null` when absent.
pub fn json_opt(x: Option<f64>) -> String {
    match x {
        Some(v) => dec17(v),
        None => "null".to_string(),
    }
}

/// Writes a file into the output directory, which must already exist.
pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}
