use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unknown example `{0}`; known examples: {1}")]
    UnknownExample(String, String),
    #[error(transparent)]
    Core(#[from] mincq_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
