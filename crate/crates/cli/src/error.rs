// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: parse error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse {
        path: PathBuf,
        line: Option<usize>,
        message: String,
    },

    #[error("invalid scenario: {0}")]
    Validation(#[from] ckosc::Error),

    #[error("{0}")]
    UnknownFigure(#[from] ckosc::figures::UnknownFigure),

    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 validation/check failure, 2 usage/parse error, 3 I/O error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::ChecksFailed { .. } => 1,
            CliError::Parse { .. } | CliError::UnknownFigure(_) => 2,
            CliError::Io { .. } | CliError::Csv(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
