//! Command-line driver.
//!
//! `scenario run <scenario.json> [--seed N] [--out DIR] [--jobs K]`
//! `scenario validate <scenario.json>`
//! `scenario plots <report.json> [--out DIR]`
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 input error.

use clap::{Parser, Subcommand};
use scenario_cli::config::Scenario;
use scenario_cli::plots::plots_from_report;
use scenario_cli::report::RunReport;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "scenario", about = "experiment orchestrator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario and write its report and artifacts
    Run {
        scenario: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// output directory (default: SCENARIO_OUT_DIR or ./out)
        #[arg(long)]
        out: Option<PathBuf>,
        /// worker hint for data-parallel inner loops; results are
        /// schedule-independent by construction
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Parse and validate a scenario without running it
    Validate { scenario: PathBuf },
    /// Regenerate the SVG plots embedded in a report
    Plots {
        report: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn default_out() -> PathBuf {
    std::env::var_os("SCENARIO_OUT_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            scenario,
            seed,
            out,
            jobs,
        } => {
            let sc = match Scenario::from_path(&scenario) {
                Ok(sc) => sc,
                Err(e) => {
                    eprintln!("input error: {e}");
                    return ExitCode::from(2);
                }
            };
            let out_dir = out.unwrap_or_else(default_out);
            match scenario_cli::run_scenario(&sc, &out_dir, seed, jobs) {
                Ok(report) => {
                    print!("{}", report.summary());
                    println!(
                        "report: {} ({} artifacts)",
                        out_dir.join("report.json").display(),
                        report.artifacts.len()
                    );
                    if report.all_pass() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("run failed: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Validate { scenario } => match Scenario::from_path(&scenario) {
            Ok(_) => {
                println!("ok");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("input error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Plots { report, out } => {
            let text = match std::fs::read_to_string(&report) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("input error: cannot read {}: {e}", report.display());
                    return ExitCode::from(2);
                }
            };
            let rep: RunReport = match serde_json::from_str(&text) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("input error: {e}");
                    return ExitCode::from(2);
                }
            };
            let out_dir = out.unwrap_or_else(default_out);
            if let Err(e) = std::fs::create_dir_all(&out_dir) {
                eprintln!("input error: {e}");
                return ExitCode::from(2);
            }
            for (name, svg) in plots_from_report(&rep) {
                if let Err(e) = std::fs::write(out_dir.join(&name), svg) {
                    eprintln!("write error: {e}");
                    return ExitCode::from(1);
                }
                println!("wrote {name}");
            }
            ExitCode::SUCCESS
        }
    }
}
