use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{context}: {source}")]
    Json { context: String, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] doho::Error),
    #[error("tester `{tester}` has no constant `{name}`")]
    UnknownConstant { tester: String, name: String },
    #[error("{0}")]
    Invalid(String),
    #[error("calibration target unreachable: {0}")]
    Unreachable(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }

    pub fn json(context: impl Into<String>, source: serde_json::Error) -> Self {
        HarnessError::Json { context: context.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
