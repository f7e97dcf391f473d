//! Crate-wide error type.

use std::path::PathBuf;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid configuration: bad field values, inconsistent sizes,
    /// unknown identifiers.
    #[error("config error: {0}")]
    Config(String),

    /// Structural problems in a dataset: missing or duplicate ids,
    /// unresolvable references, empty bags.
    #[error("dataset structure error: {0}")]
    Structure(String),

    /// A file exists but its content does not match the declared format.
    #[error("format error: {0}")]
    Format(String),

    /// Synthetic-data consistency violation, e.g. a bag label that
    /// contradicts its instances' true labels.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// A statistical fit cannot be performed (zero-variance channel).
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    /// The digit pool cannot supply the requested instances without reuse.
    #[error("pool exhaustion: {0}")]
    PoolExhausted(String),

    /// Training produced a non-finite loss.
    #[error("training diverged at epoch {epoch}: {detail}")]
    Diverged { epoch: usize, detail: String },

    /// Metric preconditions violated (e.g. single-class AUC input).
    #[error("metric error: {0}")]
    Metric(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("image error on {path}: {detail}")]
    Image { path: PathBuf, detail: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the CLI: distinct codes per failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Structure(_) | Error::Format(_) | Error::Consistency(_) => 3,
            Error::Diverged { .. } => 4,
            _ => 1,
        }
    }
}
