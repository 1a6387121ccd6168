use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use beetle_core::benchmarks::io::{metadata_path, write_dataset_with_metadata};
use beetle_core::benchmarks::synth::generate_synthetic_dataset;
use beetle_opt::{
    run_experiment, summarize_trials_csv, write_outputs, ExperimentConfig, GenDataConfig,
    HarnessError,
};

#[derive(Parser)]
#[command(
    name = "beetle-opt",
    version,
    about = "Seeded benchmark experiments for the BAS and BSAS optimizers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a multi-trial experiment and write trials.csv, summary.json and a
    /// config snapshot into the output directory.
    Run {
        /// Experiment config (TOML).
        #[arg(long)]
        config: PathBuf,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
        /// Worker threads for trials (overrides the config; 0 = default).
        #[arg(long)]
        workers: Option<usize>,
        /// Base seed (overrides the config).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Generate a synthetic RC identification dataset (CSV plus a metadata
    /// companion recording truth parameters and generation settings).
    GenData {
        /// Generation config (TOML with [truth] and [generation] sections).
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute the summary statistics from a trials.csv.
    Summarize {
        /// trials.csv produced by `run`.
        #[arg(long)]
        trials: PathBuf,
        /// Output JSON path.
        #[arg(long)]
        out: PathBuf,
        /// Histogram bin count.
        #[arg(long, default_value_t = 15)]
        bins: usize,
    },
}

const EXIT_CONFIG: u8 = 1;
const EXIT_RUNTIME: u8 = 2;

struct AppError {
    code: u8,
    error: HarnessError,
}

fn config_err(error: HarnessError) -> AppError {
    AppError {
        code: EXIT_CONFIG,
        error,
    }
}

fn runtime_err(error: HarnessError) -> AppError {
    AppError {
        code: EXIT_RUNTIME,
        error,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outputs, not usage errors.
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(EXIT_CONFIG)
                }
            };
        }
    };

    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError { code, error }) => {
            eprintln!("error: {error}");
            ExitCode::from(code)
        }
    }
}

fn execute(command: Command) -> Result<(), AppError> {
    match command {
        Command::Run {
            config,
            out,
            workers,
            seed,
        } => {
            let mut config = ExperimentConfig::load(&config).map_err(config_err)?;
            if let Some(w) = workers {
                config.experiment.workers = w;
            }
            if let Some(s) = seed {
                config.experiment.base_seed = s;
            }
            // Surface dataset/bounds problems as config errors before the
            // (potentially long) run starts.
            config.build_problem().map_err(config_err)?;

            let report = run_experiment(&config).map_err(runtime_err)?;
            for stats in &report.summary.variants {
                println!(
                    "{:<10} trials={} mean={:.6} sd={:.6} min={:.6} max={:.6}",
                    stats.label, stats.count, stats.mean, stats.std_dev, stats.min, stats.max
                );
            }
            for variant in &report.variants {
                for trial in &variant.trials {
                    if let beetle_opt::TrialOutcome::Failure { seed, error, .. } = trial {
                        eprintln!("warning: {} seed {} failed: {}", variant.label, seed, error);
                    }
                }
            }
            let files = write_outputs(&report, &out).map_err(runtime_err)?;
            for file in files {
                println!("wrote {}", file.display());
            }
            Ok(())
        }
        Command::GenData { config, out } => {
            let config = GenDataConfig::load(&config).map_err(config_err)?;
            let dataset = generate_synthetic_dataset(&config.truth, &config.generation)
                .map_err(|e| runtime_err(e.into()))?;
            write_dataset_with_metadata(&dataset, &config.generation, &out)
                .map_err(|e| runtime_err(e.into()))?;
            println!("wrote {} ({} samples)", out.display(), dataset.len());
            println!("wrote {}", metadata_path(&out).display());
            Ok(())
        }
        Command::Summarize { trials, out, bins } => {
            if bins == 0 {
                return Err(config_err(HarnessError::Config(
                    "bins must be positive".into(),
                )));
            }
            let summary = summarize_trials_csv(&trials, bins).map_err(runtime_err)?;
            let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
            std::fs::write(&out, json + "\n").map_err(|source| {
                runtime_err(HarnessError::Io {
                    path: out.clone(),
                    source,
                })
            })?;
            println!("wrote {}", out.display());
            Ok(())
        }
    }
}
