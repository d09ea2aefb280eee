//! Command-line front end for the hybrid readout cavity simulator:
//! configuration loading, deterministic artifact emission, and the
//! subcommand implementations behind the `hrc` binary.

use hrc_core::error::HrcError;

pub mod commands;
pub mod config;
pub mod output;

/// Errors surfaced by the CLI, split by the exit code they map to.
#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration or input data; exit code 2.
    Validation(String),
    /// Numerical failure during computation; exit code 3.
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(msg) => write!(f, "validation error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

/// Map a core error to the CLI error class: bad arguments are the
/// caller's fault (validation), everything else is a numerical failure.
pub fn core_err(e: HrcError) -> CliError {
    match e {
        HrcError::InvalidArgument(_) | HrcError::NonPhysicalMirror { .. } => {
            CliError::Validation(e.to_string())
        }
        HrcError::SingularMatrix { .. }
        | HrcError::SingularResonance { .. }
        | HrcError::NoSplitResonance { .. }
        | HrcError::FitFailure(_) => CliError::Numerical(e.to_string()),
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Version string stamped into every artifact's provenance block.
pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}
