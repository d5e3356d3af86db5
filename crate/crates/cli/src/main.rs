//! Command-line driver: save simulations, compare algorithms in memory or
//! from saved files, score external results, and dump the configuration
//! report.

use anyhow::{bail, Context, Result};
use causalbench::config::{parse_config, RunConfig};
use causalbench::harness::{
    compare_external, compare_from_files, compare_from_simulations, configuration_report_text,
    save_to_files,
};
use clap::{Parser, Subcommand};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "causalbench",
    about = "Benchmark causal structure-learning algorithms on simulated data",
    version
)]
struct Cli {
    /// Override the master seed from the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate graphs and data, writing save1..saveK under the output root.
    Save {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the configured algorithms over previously saved simulations;
    /// the report goes to `<root>/Comparison.txt`.
    CompareFiles {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        root: PathBuf,
    },
    /// Simulate in memory and compare; the report goes to
    /// `<out>/Comparison.txt`.
    CompareSim {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score externally produced results stored under the data root's
    /// results/ and elapsed/ trees.
    CompareExternal {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        data_root: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the catalog of registered simulations, algorithms, tests,
    /// scores, statistics, and parameter defaults.
    ConfigReport {
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_config(path: &PathBuf) -> Result<RunConfig> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config `{}`", path.display()))?;
    parse_config(&text).with_context(|| format!("in config `{}`", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Save { config, out } => {
            let cfg = load_config(&config)?;
            if cfg.simulations.is_empty() {
                bail!("config declares no simulations");
            }
            let styles = cfg.simulation_styles()?;
            let seed = cfg.comparison_config(cli.seed).master_seed;
            save_to_files(&out, &styles, &cfg.grid, seed)?;
            println!("{}", out.display());
        }
        Command::CompareFiles { config, root } => {
            let cfg = load_config(&config)?;
            let outcome = compare_from_files(
                &root,
                &cfg.build_variants()?,
                &cfg.statistics_spec()?,
                &cfg.grid,
                &cfg.comparison_config(cli.seed),
            )?;
            println!("{}", outcome.report_path.display());
        }
        Command::CompareSim { config, out } => {
            let cfg = load_config(&config)?;
            if cfg.simulations.is_empty() {
                bail!("config declares no simulations");
            }
            let outcome = compare_from_simulations(
                &out,
                &cfg.simulation_styles()?,
                &cfg.build_variants()?,
                &cfg.statistics_spec()?,
                &cfg.grid,
                &cfg.comparison_config(cli.seed),
            )?;
            println!("{}", outcome.report_path.display());
        }
        Command::CompareExternal { config, data_root, out } => {
            let cfg = load_config(&config)?;
            let outcome = compare_external(
                &data_root,
                &out,
                &cfg.build_variants()?,
                &cfg.statistics_spec()?,
                &cfg.grid,
                &cfg.comparison_config(cli.seed),
            )?;
            println!("{}", outcome.report_path.display());
        }
        Command::ConfigReport { out } => {
            if let Some(parent) = out.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent)
                        .with_context(|| format!("cannot create `{}`", parent.display()))?;
                }
            }
            fs::write(&out, configuration_report_text())
                .with_context(|| format!("cannot write `{}`", out.display()))?;
            println!("{}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes, not usage errors.
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
