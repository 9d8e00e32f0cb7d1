use hlp_core::error::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(CoreError),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 usage, 3 unknown type, 4 cap exceeded, 5 precondition,
    /// 6 no Lefschetz property on a factor, 7 parse, 8 i/o.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(CoreError::InvalidType { .. }) => 3,
            CliError::Core(CoreError::CapExceeded { .. }) => 4,
            CliError::Core(CoreError::Precondition(_)) => 5,
            CliError::Core(CoreError::NoHlp(_)) => 6,
            CliError::Core(CoreError::Parse(_)) => 7,
            CliError::Io(_) | CliError::Json(_) => 8,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}
