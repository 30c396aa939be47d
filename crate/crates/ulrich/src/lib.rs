//! Command line, certificate files and parallel search on top of
//! [`ulrich_core`].

pub mod cli;
pub mod error;
pub mod json;
pub mod parallel;
pub mod parse;

pub use error::{CliError, Result};
