use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        })
    }
}

impl From<magic_trap::Error> for CliError {
    fn from(e: magic_trap::Error) -> Self {
        match e {
            magic_trap::Error::Io { path, message } => CliError::Io(format!("{path}: {message}")),
            magic_trap::Error::Configuration(message) => CliError::Config(message),
            magic_trap::Error::Invariant(_) => CliError::Numerical(e.to_string()),
            e if e.is_numerical() => CliError::Numerical(e.to_string()),
            e => CliError::Config(e.to_string()),
        }
    }
}
