use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{source}")]
    Library {
        #[source]
        source: dynsamp::Error,
        context: String,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("unknown golden suite `{0}` (expected carleson, frames, repr or hardy)")]
    UnknownSuite(String),
}

impl CliError {
    pub fn io(path: impl AsRef<std::path::Path>, err: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            message: err.to_string(),
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Config(_) => "ConfigError",
            CliError::Library { source, .. } => source.code(),
            CliError::Io { .. } => "IOError",
            CliError::UnknownSuite(_) => "UnknownSuite",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::UnknownSuite(_) => 2,
            _ => 1,
        }
    }

    /// The object written to standard error.
    pub fn to_json(&self) -> Value {
        let context = match self {
            CliError::Library { context, .. } => json!(context),
            CliError::Io { path, .. } => json!(path),
            _ => Value::Null,
        };
        json!(ErrorObject {
            code: self.code(),
            message: self.to_string(),
            context,
        })
    }
}

#[derive(Serialize)]
struct ErrorObject {
    code: &'static str,
    message: String,
    context: Value,
}

/// Attaches a command context to library errors.
pub trait Context<T> {
    fn context(self, what: &str) -> Result<T, CliError>;
}

impl<T> Context<T> for dynsamp::Result<T> {
    fn context(self, what: &str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Library {
            source,
            context: what.to_string(),
        })
    }
}
