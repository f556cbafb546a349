use std::fmt;

/// Failure of one CLI run, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Library(woods_saxon::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Library(e) => library_exit_code(e),
            CliError::Io(_) => 1,
        }
    }
}

pub fn library_exit_code(e: &woods_saxon::Error) -> u8 {
    use woods_saxon::Error::*;
    match e {
        // a too-short --r-max is a bad argument, not a solver failure
        InvalidParameter { .. } | Domain(_) | TruncatedTail { .. } => 1,
        NoBoundState { .. } => 2,
        _ => 3,
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<woods_saxon::Error> for CliError {
    fn from(e: woods_saxon::Error) -> Self {
        CliError::Library(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
