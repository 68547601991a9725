//! File formats and subcommands behind the `polar-order` binary.
//!
//! Everything here is deterministic: identical inputs give byte-identical
//! outputs.

pub mod commands;
pub mod format;

pub use format::CliError;
