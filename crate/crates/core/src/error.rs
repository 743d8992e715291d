use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::corpus::Polarity;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{path}: invalid UTF-8 at line {line}")]
    Decode { path: PathBuf, line: usize },

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("{0}")]
    Format(String),

    #[error("class {0} empty")]
    Stratification(Polarity),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("inconsistent tables: {0}")]
    Consistency(String),

    #[error("training failed: {0}")]
    Training(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("model format version {found} is newer than supported version {supported}")]
    ModelVersion { found: u32, supported: u32 },

    #[error("dataset {dataset}, size {size}, classifier {classifier}: {source}")]
    Experiment {
        dataset: String,
        size: usize,
        classifier: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this error: 2 for I/O, 3 for bad data or
    /// configuration, 4 for broken internal invariants.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            Error::Decode { .. }
            | Error::EmptyCorpus
            | Error::Format(_)
            | Error::Stratification(_)
            | Error::Argument(_)
            | Error::Training(_)
            | Error::Config(_)
            | Error::ModelVersion { .. } => 3,
            Error::Consistency(_) => 4,
            Error::Experiment { source, .. } => source.exit_code(),
        }
    }
}
