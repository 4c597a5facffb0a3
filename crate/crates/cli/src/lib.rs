#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! File formats, reports and subcommands of the `kgspec` command-line tool.
//!
//! The numerics live in [`kgspec`]; this crate adds CSV/JSON IO,
//! deterministic report rendering and thread-parallel sweeps.

pub mod commands;
pub mod error;
pub mod io;
pub mod report;
pub mod sweep;

pub use error::{CliError, Outcome, Result};
