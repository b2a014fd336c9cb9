use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown parameter set `{0}` (expected poly32, poly64 or poly128)")]
    UnknownParams(String),

    #[error("invalid parameter set: {0}")]
    InvalidParams(String),

    #[error("{what}: expected {expected} bytes, got {actual}")]
    Length {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("{0}: nonzero padding bits")]
    Padding(&'static str),

    #[error("{0}: coefficient out of range")]
    Coefficient(&'static str),

    #[error("{0}")]
    Integrity(&'static str),

    #[error("analysis: {0}")]
    Analysis(String),

    #[error("kat: {0}")]
    Kat(String),
}

pub type Result<T> = core::result::Result<T, Error>;
