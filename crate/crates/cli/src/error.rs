use std::fmt;

use paulian::Error;

/// Failure of a command, carrying the process exit status it maps to.
#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse { context: String, line: usize, column: usize, message: String },
    Validation(Vec<String>),
    NotCorrectable(String),
    Certification(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse { .. } | CliError::Validation(_) => 2,
            CliError::NotCorrectable(_) => 3,
            CliError::Certification(_) => 5,
            CliError::Core(e) => core_exit_code(e),
        }
    }
}

fn core_exit_code(e: &Error) -> i32 {
    match e {
        Error::NotCorrectable { .. } | Error::UncorrectableSyndrome(_) => 3,
        Error::CapacityExceeded(_)
        | Error::TooManyErrors { .. }
        | Error::InsufficientSpace(_)
        | Error::InsufficientSpares { .. } => 4,
        Error::NotAnInvolution { .. }
        | Error::NotSelfAdjoint { .. }
        | Error::NotIsometry { .. }
        | Error::NotUnitary { .. }
        | Error::NotInvariant { .. }
        | Error::NotPaulian(_)
        | Error::TableInvalid(_)
        | Error::ZeroProjection => 5,
        _ => 2,
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Parse { context, line, column, message } => {
                write!(f, "parse error in {context} at line {line}, column {column}: {message}")
            }
            CliError::Validation(issues) => {
                write!(f, "validation failed:")?;
                for issue in issues {
                    write!(f, "\n  - {issue}")?;
                }
                Ok(())
            }
            CliError::NotCorrectable(m) => write!(f, "not correctable: {m}"),
            CliError::Certification(m) => write!(f, "certification failed: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
