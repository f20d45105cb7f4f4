//! `oddperfect` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 theorem violation or failed
//! consistency check, 3 I/O or resource failure.

mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, Format};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VIOLATION: u8 = 2;
pub const EXIT_IO: u8 = 3;

/// Why a command did not exit cleanly.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    /// A nonexistence theorem or proven identity failed on actual output.
    Violation(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Violation(_) => EXIT_VIOLATION,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

impl From<oddperfect_core::Error> for Failure {
    fn from(e: oddperfect_core::Error) -> Self {
        use oddperfect_core::Error as E;
        match e {
            E::Consistency(_) => Failure::Violation(e.to_string()),
            E::Io { .. }
            | E::CorruptCheckpoint { .. }
            | E::ConfigMismatch { .. }
            | E::ResourceLimit { .. } => Failure::Io(e.to_string()),
            E::Precondition(_)
            | E::ZeroValuation
            | E::DivisionByZero
            | E::ParameterMismatch { .. } => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Parses `argv`, runs the command, and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = out.write_all(rendered.as_bytes());
                return EXIT_OK;
            }
            let _ = err.write_all(rendered.as_bytes());
            return EXIT_USAGE;
        }
    };
    match commands::dispatch(&cli, out, err) {
        Ok(()) => match out.flush() {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_IO
            }
        },
        Err(failure) => {
            let _ = out.flush();
            let (label, msg) = match &failure {
                Failure::Usage(m) => ("error", m),
                Failure::Violation(m) => ("theorem violation", m),
                Failure::Io(m) => ("error", m),
            };
            let _ = writeln!(err, "{label}: {msg}");
            failure.exit_code()
        }
    }
}
