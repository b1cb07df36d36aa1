//! Crate-wide error type.

use std::fmt;
use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by decomposition, segmentation, evaluation and I/O.
#[derive(Debug)]
pub enum Error {
    /// A decomposition level outside the supported range was requested.
    InvalidLevel { level: usize },
    /// An operation that needs at least one pixel received an empty image.
    EmptyImage,
    /// The input image contains NaN or infinite samples.
    NonFiniteSamples,
    /// A segmentation range reaches past the available decomposition levels.
    LevelOutOfRange { last: usize, available: usize },
    /// A level range violates 1 <= first <= last.
    InvalidLevelRange { first: usize, last: usize },
    /// Two planes that must share dimensions do not.
    DimensionMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },
    /// A file could not be opened or read.
    Read { path: PathBuf, source: std::io::Error },
    /// A file was read but could not be decoded as an image.
    Decode { path: PathBuf, message: String },
    /// The file is not one of the supported image formats.
    UnsupportedFormat { path: PathBuf },
    /// The decoded image has zero width or height.
    ZeroDimension { path: PathBuf },
    /// An output file could not be written.
    Write { path: PathBuf, message: String },
    /// A fixture specification is inconsistent.
    InvalidFixture { message: String },
    /// Shape placement gave up before reaching the requested count.
    Placement { placed: usize, requested: usize },
    /// Command line arguments are missing or malformed.
    Usage { message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidLevel { level } => {
                write!(f, "decomposition level {level} is outside the supported range")
            }
            Error::EmptyImage => write!(f, "image has zero pixels"),
            Error::NonFiniteSamples => write!(f, "image contains non-finite samples"),
            Error::LevelOutOfRange { last, available } => write!(
                f,
                "segmentation level {last} exceeds the {available} available decomposition levels"
            ),
            Error::InvalidLevelRange { first, last } => {
                write!(f, "invalid level range: first {first} must satisfy 1 <= first <= last ({last})")
            }
            Error::DimensionMismatch { expected, actual } => write!(
                f,
                "dimension mismatch: expected {}x{}, got {}x{}",
                expected.0, expected.1, actual.0, actual.1
            ),
            Error::Read { path, source } => {
                write!(f, "cannot read {}: {source}", path.display())
            }
            Error::Decode { path, message } => {
                write!(f, "cannot decode {}: {message}", path.display())
            }
            Error::UnsupportedFormat { path } => {
                write!(f, "unsupported image format: {}", path.display())
            }
            Error::ZeroDimension { path } => {
                write!(f, "image has zero width or height: {}", path.display())
            }
            Error::Write { path, message } => {
                write!(f, "cannot write {}: {message}", path.display())
            }
            Error::InvalidFixture { message } => write!(f, "invalid fixture spec: {message}"),
            Error::Placement { placed, requested } => write!(
                f,
                "placed only {placed} of {requested} shapes; canvas too small for non-overlapping placement"
            ),
            Error::Usage { message } => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Read { source, .. } => Some(source),
            _ => None,
        }
    }
}
