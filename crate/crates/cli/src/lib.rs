//! Library side of the `polarbool` command-line tool: the function-file
//! format, metric reports, the nonlinearity table and verification targets.

pub mod analyze;
pub mod error;
pub mod file;
pub mod table;
pub mod verify;

pub use error::{CliError, CliResult};
pub use file::FunctionFile;
