use thiserror::Error;

#[derive(Debug, Error)]
pub enum FilterError {
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("numeric contract violated: {0}")]
    Numeric(#[from] hermite_harmonic::Error),
}

impl FilterError {
    /// Process exit status for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            FilterError::Config(_) => 2,
            FilterError::Io(_) => 3,
            FilterError::Numeric(_) => 4,
        }
    }
}

impl From<std::io::Error> for FilterError {
    fn from(e: std::io::Error) -> Self {
        FilterError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, FilterError>;
