//! Command-line layer over `hecke-core`: instance configuration, the table
//! cache, canonical JSON export and verification reports.

pub mod cache;
pub mod chartable_file;
pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod json;
pub mod tables;

use std::ffi::OsString;

use clap::Parser;

pub use cli::Cli;
pub use commands::{execute, Outcome};
pub use config::{GroupSpec, InstanceConfig, FORMAT_VERSION};
pub use error::{CliError, CliResult};

/// Parses arguments, runs the command and writes the report. Returns the
/// exit status: 0 if every requested check passed, 1 if one failed, 2 on
/// input errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli).and_then(|o| commands::write_report(&cli.global, &o).map(|()| o)) {
        Ok(o) => i32::from(!o.passed),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
