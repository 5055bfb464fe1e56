//! Library half of the `ghm` executable: parsing, execution and report
//! serialization, kept here so the tests can drive them without a process.

pub mod config;
pub mod run;

pub use config::{parse_args, to_args, Command, FamilyKind, Format, Params, RunConfig};
pub use run::{build_family, emit_report, execute, run_verify, Outcome};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown flag {0}")]
    UnknownFlag(String),
    #[error("malformed rational: {0}")]
    MalformedRational(String),
    #[error("missing parameter {0}")]
    MissingParameter(String),
    #[error("incompatible command: {0}")]
    IncompatibleCommand(String),
    #[error("{0}")]
    Usage(String),
    /// `--help` / `--version` text; not a failure.
    #[error("{0}")]
    Help(String),
    #[error(transparent)]
    Core(#[from] ghm_core::Error),
    #[error("cannot write {0}")]
    Io(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Help(_) => EXIT_OK,
            _ => EXIT_USAGE,
        }
    }
}

/// Parses, runs and writes; returns the process exit code.
pub fn main_with_args<S: AsRef<str>>(argv: &[S], stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32 {
    let cfg = match parse_args(argv) {
        Ok(c) => c,
        Err(CliError::Help(text)) => {
            let _ = write!(stdout, "{text}");
            return EXIT_OK;
        }
        Err(e) => {
            let _ = writeln!(stderr, "ghm: {e}");
            return e.exit_code();
        }
    };
    match execute(&cfg) {
        Ok(out) => match &cfg.output {
            Some(path) => match std::fs::write(path, &out.text) {
                Ok(()) => out.exit_code,
                Err(e) => {
                    let _ = writeln!(stderr, "ghm: {}", CliError::Io(format!("{}: {e}", path.display())));
                    EXIT_USAGE
                }
            },
            None => {
                let _ = stdout.write_all(out.text.as_bytes());
                out.exit_code
            }
        },
        Err(e) => {
            let _ = stdout.write_all(run::error_document(&cfg, &e).as_bytes());
            let _ = writeln!(stderr, "ghm: {e}");
            e.exit_code()
        }
    }
}
