use std::fmt;

use holopipe::Error;

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_DATA: u8 = 4;
pub const EXIT_INTERNAL: u8 = 5;

/// A failure carrying the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        Self { code: EXIT_CONFIG, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { code: EXIT_IO, message: message.into() }
    }

    pub fn data(message: impl Into<String>) -> Self {
        Self { code: EXIT_DATA, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn code_of(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter { .. } | Error::IndexOutOfRange { .. } | Error::EmptyRegion { .. } => EXIT_CONFIG,
        Error::Io { .. } => EXIT_IO,
        Error::Csv(c) if c.is_io_error() => EXIT_IO,
        Error::MalformedImage { .. }
        | Error::ChannelLayout { .. }
        | Error::BadMagic { .. }
        | Error::UnsupportedVersion(_)
        | Error::InvalidDimensions { .. }
        | Error::SizeMismatch { .. }
        | Error::DimensionMismatch { .. }
        | Error::ZeroInput(_)
        | Error::EmptyMask(_)
        | Error::TooLargeForPanel { .. }
        | Error::Json { .. } => EXIT_DATA,
        _ => EXIT_INTERNAL,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self { code: code_of(&e), message: e.to_string() }
    }
}

/// Reports every per-view failure on stderr and folds them into one error
/// carrying the first failure's exit code.
pub fn summarize_failures(command: &str, total: usize, failures: Vec<(usize, CliError)>) -> CliResult<()> {
    let Some(code) = failures.first().map(|(_, e)| e.code) else {
        return Ok(());
    };
    for (view, e) in &failures {
        eprintln!("{command}: view {view}: {e}");
    }
    Err(CliError {
        code,
        message: format!("{command}: {} of {total} views failed", failures.len()),
    })
}
