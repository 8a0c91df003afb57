//! File formats, JSON reports, conjecture sweeps and the `defcol` command
//! line on top of `defcol-core`.

pub mod cli;
pub mod edgelist;
pub mod error;
pub mod graph6;
pub mod input;
pub mod report;
pub mod sweep;
pub mod weights;

pub use error::{CliError, ExitCode};
