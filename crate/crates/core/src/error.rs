use std::io;
use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid theory parameters: {0}")]
    Params(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("malformed file {path} at line {line}: {msg}")]
    Format {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("unsupported store format version {found} (expected {expected})")]
    Version { found: u32, expected: u32 },

    #[error("cannot merge stores with different sweep parameters: {0}")]
    Mismatch(String),

    #[error("store contains no outputs")]
    EmptyStore,

    #[error("profile boundary slope violation between points {0} and {1}")]
    Slope(usize, usize),

    #[error("log-domain overflow: {0}")]
    Overflow(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
