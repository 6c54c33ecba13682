use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema mismatch: {0}")]
    Schema(String),
    #[error("missing precondition: {0}")]
    Precondition(String),
    #[error("data file: {0}")]
    Data(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] invtool_core::Error),
    #[error("output: {0}")]
    Output(String),
}
