use paramag_core::ErrorKind;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: paramag_core::Error,
    },

    #[error("cannot write output: {0}")]
    Io(String),
}

impl CliError {
    pub fn core(context: impl Into<String>, source: paramag_core::Error) -> Self {
        CliError::Core {
            context: context.into(),
            source,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Core { source, .. } => match source.kind() {
                ErrorKind::Input => "config",
                ErrorKind::Domain => "domain",
                ErrorKind::Numerical => "numerical",
            },
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind() {
            "config" => 2,
            "domain" => 3,
            "numerical" => 4,
            _ => 1,
        }
    }

    /// One-line JSON record written to stderr on failure.
    pub fn record(&self) -> serde_json::Value {
        json!({
            "error": {
                "kind": self.kind(),
                "exit_code": self.exit_code(),
                "message": self.to_string(),
            }
        })
    }
}
