use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::querygen::PlanError;
use crate::schema::SchemaError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    /// A line-delimited input file had a bad record. `index` is the 0-based
    /// position among non-blank lines.
    #[error("{source_name}: record {index}: field `{field}`: {message}")]
    Record {
        source_name: String,
        index: usize,
        field: String,
        message: String,
    },

    #[error(transparent)]
    Schema(#[from] SchemaError),

    #[error(transparent)]
    Plan(#[from] PlanError),

    #[error("unknown synset `{0}`")]
    UnknownSynset(String),

    #[error("lexicon: {0}")]
    Lexicon(String),

    #[error("external annotation has {found} tokens, text has {expected}")]
    AnnotationMismatch { expected: usize, found: usize },

    #[error("index file: {0}")]
    IndexFormat(String),

    #[error("no gold label for instance `{0}`")]
    MissingGold(String),

    #[error("unknown instance `{0}`")]
    UnknownInstance(String),

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn record(
        source_name: impl Into<String>,
        index: usize,
        field: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Error::Record {
            source_name: source_name.into(),
            index,
            field: field.into(),
            message: message.into(),
        }
    }
}
