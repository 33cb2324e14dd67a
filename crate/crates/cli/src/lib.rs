//! Library side of the `expfam` command-line tool: spec parsing, command
//! bodies and sweep grids. The binary only does argument parsing and I/O.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod format;
pub mod spec;
pub mod sweep;

pub use error::{CliError, CliResult, ErrorKind};
