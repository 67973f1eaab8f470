//! File formats, expression parsing, exporters and the example registry
//! behind the `mincq` command-line tool.

pub mod error;
pub mod export;
pub mod expr;
pub mod format;
pub mod registry;
pub mod verify;

pub use error::{CliError, CliResult};
