//! Command-line driver for `belldecomp`: JSON inputs, text and CSV reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod files;
pub mod format;

use std::fs::File;
use std::io::{BufWriter, Write};

pub use config::{Command, ExperimentConfig};
pub use error::{CliError, Exit, Result};

/// Runs one command. The report goes to `--output` when given, otherwise to
/// `stdout`; warnings go to `stderr`.
pub fn run(cfg: &ExperimentConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Exit> {
    for (name, v) in [("--tol-eq", cfg.tol_eq), ("--tol-inv", cfg.tol_inv)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(CliError::Usage(format!(
                "{name} must be a finite non-negative number, got {v}"
            )));
        }
    }
    let mut file;
    let out: &mut dyn Write = match cfg.resolved_output() {
        Some(path) => {
            file = BufWriter::new(
                File::create(&path).map_err(|source| CliError::Io { path, source })?,
            );
            &mut file
        }
        None => stdout,
    };
    let exit = match &cfg.command {
        Command::Decompose(a) => commands::decompose(a, cfg.tol_inv, out, stderr)?,
        Command::Teleport(a) => commands::teleport(a, cfg.tol_inv, out, stderr)?,
        Command::Verify(a) => commands::verify(a, cfg.tol_eq, cfg.tol_inv, out, stderr)?,
        Command::Sweep(a) => commands::sweep(a, cfg.tol_inv, out, stderr)?,
    };
    out.flush()?;
    Ok(exit)
}
