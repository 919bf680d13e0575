use thiserror::Error;

use crate::system_file::Position;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{position}: {message}")]
    Parse { position: Position, message: String },
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] parcross::Error),
}

impl CliError {
    /// 2 when an internal check could not be carried out, 1 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(parcross::Error::Indecomposable(_)) => 2,
            _ => 1,
        }
    }
}
