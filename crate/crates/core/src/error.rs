use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed image {path}: {reason}")]
    MalformedImage { path: PathBuf, reason: String },

    #[error("wrong channel layout in {path}: {reason}")]
    ChannelLayout { path: PathBuf, reason: String },

    #[error("bad magic: expected \"CFLD\", found {found:?}")]
    BadMagic { found: [u8; 4] },

    #[error("unsupported field container version {0}")]
    UnsupportedVersion(u32),

    #[error("invalid dimensions {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },

    #[error("size mismatch: expected {expected} {unit}, found {found}")]
    SizeMismatch {
        expected: usize,
        found: usize,
        unit: &'static str,
    },

    #[error("dimension mismatch: {left_width}x{left_height} vs {right_width}x{right_height}")]
    DimensionMismatch {
        left_width: usize,
        left_height: usize,
        right_width: usize,
        right_height: usize,
    },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("index {index} out of range (view count {count})")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("{0}: denominator is zero (all-zero input)")]
    ZeroInput(&'static str),

    #[error("{0}: no pixels survive the ground-truth mask")]
    EmptyMask(&'static str),

    #[error("hologram {width}x{height} does not fit the {slm_width}x{slm_height} panel")]
    TooLargeForPanel {
        width: usize,
        height: usize,
        slm_width: usize,
        slm_height: usize,
    },

    #[error("empty region at ({x}, {y}) size {width}x{height}")]
    EmptyRegion {
        x: usize,
        y: usize,
        width: usize,
        height: usize,
    },

    #[error("json error on {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn dims(left: (usize, usize), right: (usize, usize)) -> Self {
        Error::DimensionMismatch {
            left_width: left.0,
            left_height: left.1,
            right_width: right.0,
            right_height: right.1,
        }
    }
}
