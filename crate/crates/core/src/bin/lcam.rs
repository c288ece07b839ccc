use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lcam::harness::{self, RunStatus, WrittenRun};
use lcam::Error;

/// Loss-controlled asymmetric momentum experiments.
#[derive(Parser)]
#[command(name = "lcam", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment config and write its trace.
    Run { config: PathBuf },
    /// Summarise two or more traces side by side.
    Compare {
        #[arg(required = true, num_args = 2..)]
        traces: Vec<PathBuf>,
        /// Loss level for the iterations-to-threshold column.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Check analytic gradients against central differences.
    GradCheck {
        #[arg(long)]
        landscape: Option<String>,
    },
    /// Run a config once per value of one key.
    Sweep {
        config: PathBuf,
        /// Dotted key, e.g. `optimizer.beta_nonsparse`.
        #[arg(long)]
        param: String,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<String>,
    },
    /// Run a packaged comparison.
    Preset {
        preset: Preset,
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    FourGroup,
}

fn report_run(run: &WrittenRun) -> bool {
    match &run.outcome.status {
        RunStatus::Completed => {
            println!(
                "{}: {} iterations -> {}",
                run.outcome.name,
                run.outcome.records.len(),
                run.trace_path.display()
            );
            false
        }
        RunStatus::Diverged {
            last_good_iteration,
            reason,
        } => {
            let last = last_good_iteration.map_or("none".to_string(), |i| i.to_string());
            eprintln!(
                "{}: diverged after iteration {last} ({reason}); partial trace at {}",
                run.outcome.name,
                run.trace_path.display()
            );
            true
        }
    }
}

fn execute(cli: Cli) -> Result<u8, Error> {
    let diverged = match cli.command {
        Command::Run { config } => report_run(&harness::run_command(config)?),
        Command::Compare { traces, threshold } => {
            print!("{}", harness::compare_command(&traces, threshold)?);
            false
        }
        Command::GradCheck { landscape } => {
            let rows = harness::grad_check_command(landscape.as_deref())?;
            let mut failed = false;
            for row in &rows {
                println!(
                    "{:<18} points={:<3} max_rel={:.3e} max_abs={:.3e} tol={:.0e} {}",
                    row.target,
                    row.points,
                    row.max_relative,
                    row.max_absolute,
                    row.tolerance,
                    if row.passed() { "ok" } else { "FAIL" }
                );
                failed |= !row.passed();
            }
            if failed {
                return Err(Error::Config {
                    key: "grad-check".into(),
                    reason: "analytic gradient disagrees with finite differences".into(),
                });
            }
            false
        }
        Command::Sweep {
            config,
            param,
            values,
        } => {
            let runs = harness::sweep_command(config, &param, &values)?;
            runs.iter().map(report_run).fold(false, |a, b| a | b)
        }
        Command::Preset {
            preset: Preset::FourGroup,
            problem,
            seed,
        } => {
            let result = harness::four_group_command(&problem, seed)?;
            let diverged = result.runs.iter().map(report_run).fold(false, |a, b| a | b);
            print!("{}", result.report);
            println!("report -> {}", result.report_path.display());
            diverged
        }
    };
    Ok(if diverged { 3 } else { 0 })
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
