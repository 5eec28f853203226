//! Command-line front end for `reservo-core`.
//!
//! Every subcommand resolves flags (and an optional `--config` file) into a
//! [`config::RunConfig`], runs one analysis and writes a single CSV or JSON
//! document that embeds the resolved configuration.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;

use std::ffi::OsString;

use config::{Command, RunConfig};
use error::CliError;

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run(args: Vec<OsString>) -> u8 {
    let cli = match config::parse(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("reservo: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(cmd)?;
    let bytes = match cmd {
        Command::Steady(_) => commands::steady(&cfg)?,
        Command::ShowRates(_) => commands::show_rates(&cfg)?,
        Command::Sweep(_) => commands::sweep(&cfg)?,
        Command::Dynamics(_) => commands::dynamics(&cfg)?,
        Command::FidelityMap(_) => commands::fidelity_map_cmd(&cfg)?,
        Command::Compensate(_) => commands::compensate(&cfg)?,
    };
    io::emit(&cfg, &bytes)
}
