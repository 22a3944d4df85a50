//! Command-line front end for `ehrhart-core`, plus the JSON and CSV formats it reads
//! and writes.

pub mod commands;
pub mod formats;

pub use commands::{run, Cli, CliError, Command, Outcome, OutputFormat, EXIT_INVALID_INPUT};
