use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid UTF-8 at byte offset {offset}")]
    InvalidUtf8 { offset: usize },

    #[error("empty term")]
    EmptyTerm,

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("knowledge base cache: {0}")]
    Cache(String),

    #[error("cache was built with {found}, but {expected} was requested")]
    ParamsMismatch { expected: String, found: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
