//! Command-line front end: argument parsing, CSV and SVG output, and figure
//! regeneration.

pub mod commands;
pub mod config;
pub mod csv;
pub mod error;
pub mod figures;
pub mod svg;

pub use commands::run;
pub use config::{parse_cli, parse_cli_with_env, RunConfig};
pub use error::{CliError, CliResult};

/// Parses `argv`, runs, and returns the process exit code.
pub fn main_with_args<I, S>(
    argv: I,
    stdout: &mut dyn std::io::Write,
    stderr: &mut dyn std::io::Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let result = parse_cli(argv).and_then(|cfg| run(&cfg, stdout));
    match result {
        Ok(()) => 0,
        Err(CliError::Info(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "barbell: {e}");
            e.exit_code()
        }
    }
}
