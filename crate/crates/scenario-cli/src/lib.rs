//! Scenario configuration, experiment orchestration, and report/plot
//! emission for the geometry, asymptotics, wave and reconstruction
//! crates.
//!
//! A scenario is a strict JSON file naming one experiment kind with its
//! parameters; running it produces a `RunReport` (one verdict per check)
//! plus CSV/JSON/SVG artifacts, deterministic for a fixed seed.

pub mod config;
pub mod experiments;
pub mod parallel;
pub mod plots;
pub mod report;
pub mod writer;

use config::Scenario;
use report::RunReport;
use std::path::Path;

pub fn run_scenario(
    scenario: &Scenario,
    out_dir: &Path,
    seed_override: Option<u64>,
    jobs: usize,
) -> Result<RunReport, experiments::anyhow_like::Error> {
    let mut scenario = scenario.clone();
    if let Some(seed) = seed_override {
        scenario.seed = seed;
    }
    let started = std::time::Instant::now();
    let mut report = RunReport::new(scenario.clone(), scenario.seed);
    let mut writer = writer::ArtifactWriter::new(out_dir.to_path_buf())?;
    experiments::run_experiment_with_jobs(&scenario, &mut report, &mut writer, jobs)?;
    report.wall_clock_seconds = started.elapsed().as_secs_f64();
    let json = serde_json::to_string_pretty(&report)?;
    std::fs::write(out_dir.join("report.json"), json)?;
    Ok(report)
}
