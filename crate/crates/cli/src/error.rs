use cosk_core::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const SUITE_FAILED: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const SYMMETRY: u8 = 3;
    pub const NOT_APPLICABLE: u8 = 4;
}

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(exit::PARSE, message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Symmetry { .. } => exit::SYMMETRY,
            Error::Format(_)
            | Error::Json(_)
            | Error::InvalidArgument(_)
            | Error::UnsupportedDimension { .. }
            | Error::DimensionMismatch(..) => exit::PARSE,
            _ => exit::SUITE_FAILED,
        };
        Self::new(code, e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
