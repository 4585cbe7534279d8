//! Verification commands, scans and figures for annulus closure chains.

pub mod commands;
pub mod config;
pub mod report;
pub mod scan_io;
pub mod svg;
pub mod verify;

pub use config::{Overrides, SceneConfig};
pub use report::{Report, Residual};

use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}
