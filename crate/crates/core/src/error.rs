use std::path::PathBuf;

use thiserror::Error;

use crate::qrationals::Rational;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("interpolation needs exactly {expected} samples, got {got}")]
    SampleCount { expected: usize, got: usize },

    #[error("duplicate sample at d = {0}")]
    DuplicateSample(u32),

    #[error("sample d = {d} is below the admissible bound {bound}")]
    SampleBelowBound { d: u32, bound: u32 },

    #[error("fitted polynomial disagrees with the engine at d = {d}: expected {expected}, got {actual}")]
    VerificationFailed { d: u32, expected: Box<Rational>, actual: Box<Rational> },

    #[error("enumerative count unavailable: {0}")]
    Unsupported(String),

    #[error("cache {path}: {reason}")]
    Cache { path: PathBuf, reason: String },

    #[error("memo conflict for {key}: stored {stored}, new {new}")]
    MemoConflict { key: String, stored: Box<Rational>, new: Box<Rational> },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
