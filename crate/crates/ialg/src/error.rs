use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: undefined name '{name}'")]
    UndefinedName { line: usize, col: usize, name: String },
    #[error("{0}")]
    Core(ialg_core::Error),
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Invalid(String),
}

impl From<ialg_core::Error> for CliError {
    fn from(e: ialg_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn is_parse(&self) -> bool {
        matches!(self, CliError::Parse { .. } | CliError::UndefinedName { .. })
    }
}
