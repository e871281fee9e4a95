//! Crate-wide error type.

use std::path::PathBuf;
use thiserror::Error;

/// Errors produced by graph construction, the data pipeline, the network
/// and the trainer.
#[derive(Debug, Error)]
pub enum Error {
    /// I/O failure, annotated with the path involved.
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// JSON that failed to parse.
    #[error("json parse error{}: {source}", context_suffix(.context))]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },

    /// Malformed file contents: bad magic, wrong version, truncated
    /// payload, wrong keypoint count.
    #[error("format error: {0}")]
    Format(String),

    /// Invalid configuration: negative alpha, even temporal kernel,
    /// missing template, inconsistent channel plan.
    #[error("configuration error: {0}")]
    Config(String),

    /// Invalid input value: empty frame list, out-of-range class label.
    #[error("input error: {0}")]
    Input(String),

    /// Index outside the valid range of a fixed-size structure.
    #[error("index {index} out of range for {what} (len {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    /// Array shape mismatch, naming the offending axis.
    #[error("dimension mismatch on {axis}: expected {expected}, got {got}")]
    Dimension {
        axis: &'static str,
        expected: usize,
        got: usize,
    },

    /// Violation of an internal invariant.
    #[error("internal error: {0}")]
    Internal(String),
}

fn context_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" in {context}")
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
