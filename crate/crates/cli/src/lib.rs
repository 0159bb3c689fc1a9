//! Batch experiment runner for `dynsamp`: JSON configs in, CSV or JSON
//! tables out, plus golden-file regeneration.

pub mod config;
pub mod error;
pub mod goldens;
pub mod output;
pub mod run;

pub use config::ExperimentConfig;
pub use error::CliError;
pub use run::{execute, run, RunReport};

/// Sizes the global thread pool from `DYNSAMP_THREADS` when set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("DYNSAMP_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Config(format!(
            "DYNSAMP_THREADS must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}
