use std::fmt;
use std::path::PathBuf;

use schur_hadamard::Error;

/// Failures surfaced by the command-line tool, each with its exit code.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: PathBuf, source: std::io::Error },
    Input(String),
}

impl CliError {
    /// 1: hypotheses unmet, 2: bad input, 3: numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::NotApplicable { .. } | Error::Bracket { .. } => 1,
                Error::InvalidInput(_)
                | Error::DegreeMismatch { .. }
                | Error::Unsupported(_)
                | Error::UnsupportedDegree { .. } => 2,
                Error::Unconverged { .. } | Error::MarginalZone { .. } => 3,
            },
            CliError::Io { .. } | CliError::Input(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(Error::NotApplicable { reason, index: Some(k) }) => {
                write!(f, "not applicable: {reason} (index {k})")
            }
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Input(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn io_error(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
