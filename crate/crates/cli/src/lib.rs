//! Command-line front end for the torsion library: the `torsionlab-v1` job
//! document and one function per subcommand.

pub mod commands;
pub mod document;
mod error;

pub use document::JobDocument;
pub use error::{CliError, CliResult, ErrorKind};
