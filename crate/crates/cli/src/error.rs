use fockport::FockError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CRITERION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Io(String),

    #[error(transparent)]
    Model(#[from] FockError),

    #[error("{failed} acceptance criteria failed: {ids}")]
    CriteriaFailed { failed: usize, ids: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::CriteriaFailed { .. } => EXIT_CRITERION,
            CliError::Model(e) => match e {
                FockError::Io(_) => EXIT_IO,
                FockError::InvalidParameter(_)
                | FockError::UnphysicalParameters { .. }
                | FockError::Parse(_)
                | FockError::ComplementNotOrthogonal { .. }
                | FockError::EmptyDataset => EXIT_USAGE,
                _ => EXIT_CRITERION,
            },
        }
    }

    pub(crate) fn io(context: &str, e: impl std::fmt::Display) -> Self {
        CliError::Io(format!("{context}: {e}"))
    }
}
