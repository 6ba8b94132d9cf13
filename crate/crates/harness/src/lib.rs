//! Instance files, generators, the `tspn` command line and benchmark suites.

pub mod bench;
pub mod generate;
pub mod io;
pub mod oracle;
pub mod sample;
pub mod solve;
pub mod svg;

/// Bad flags or mismatched inputs; the CLI exits with status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);
