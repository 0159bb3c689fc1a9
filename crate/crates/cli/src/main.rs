use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dynsamp_cli::goldens::{self, Suite};
use dynsamp_cli::{configure_threads, run, CliError, ExperimentConfig};

#[derive(Parser)]
#[command(
    name = "dynsamp",
    version,
    about = "Dynamical sampling and Carleson-frame experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one experiment described by a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Rewrite the golden file of one suite (carleson, frames, repr, hardy).
    Goldens {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value = "goldens")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn dispatch(cli: Cli) -> Result<String, CliError> {
    configure_threads()?;
    match cli.command {
        Cmd::Run { config } => {
            let config = ExperimentConfig::load(&config)?;
            let report = run(&config)?;
            Ok(serde_json::to_string_pretty(&report).expect("report serializes"))
        }
        Cmd::Goldens {
            suite,
            out_dir,
            seed,
        } => {
            let suite: Suite = suite.parse()?;
            let path = goldens::regenerate(suite, &out_dir, seed)?;
            Ok(
                serde_json::json!({ "suite": suite.name(), "file": path.display().to_string() })
                    .to_string(),
            )
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(report) => {
            println!("{report}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
