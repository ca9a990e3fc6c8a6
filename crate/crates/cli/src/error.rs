//! Error type for the driver, with a fixed mapping onto process exit codes.

use lfbesov::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{0}")]
    Config(String),

    #[error("{path}: {err}")]
    Io {
        path: String,
        #[source]
        err: std::io::Error,
    },

    #[error("check failed: {0}")]
    Check(String),
}

pub type CliResult<T> = Result<T, CliError>;

/// 1 = a verified check failed, 2 = unusable input, 3 = the computation
/// would leave the configured precision or size window.
pub fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Core(core) => match core {
            CoreError::PrecisionOverflow { .. }
            | CoreError::GridLimit { .. }
            | CoreError::TableLimit { .. } => 3,
            _ => 2,
        },
        CliError::Config(_) | CliError::Io { .. } => 2,
        CliError::Check(_) => 1,
    }
}

pub fn io_err(path: &std::path::Path, err: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        err,
    }
}
