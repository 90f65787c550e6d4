//! Command-line experiment drivers for the contactq toolkit: configuration
//! handling, the experiment runners, and CSV emission.

use std::fmt;
use std::path::PathBuf;

pub mod args;
pub mod config;
pub mod experiments;

pub use args::{parse_args, USAGE};
pub use config::{apply_config_text, ExperimentConfig, ExperimentKind};
pub use experiments::{
    run, run_compare, run_convergence, run_longhorizon, run_optimize, run_simulate,
};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config file, or parameter values.
    Config(String),
    /// Filesystem failure while writing an artifact.
    Io(PathBuf, std::io::Error),
    /// Error surfaced from the numerical core.
    Core(contactq::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}
