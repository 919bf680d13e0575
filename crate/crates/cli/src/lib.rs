//! Command-line front end: file formats and the reports behind each subcommand.

pub mod error;
pub mod report;
pub mod system_file;

use std::path::Path;

use parcross::corpus::named_system;
use parcross::PartialSystem;

pub use error::CliError;
pub use system_file::{BlockEntry, Position, SystemFile};

/// Load a system from a file, `-` for standard input, or a named family such
/// as `shift_n(3)` when no file of that name exists.
pub fn load_system(source: &str) -> Result<PartialSystem, CliError> {
    let io = |e| CliError::Io {
        path: source.to_string(),
        source: e,
    };
    if source == "-" {
        let text = std::io::read_to_string(std::io::stdin()).map_err(io)?;
        return SystemFile::parse_system(&text);
    }
    if !Path::new(source).exists() && source.contains('(') {
        return Ok(named_system(source)?);
    }
    let text = std::fs::read_to_string(source).map_err(io)?;
    SystemFile::parse_system(&text)
}
