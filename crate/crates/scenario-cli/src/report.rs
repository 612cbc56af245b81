//! Run reports: one named verdict per check, measured values against
//! their tolerances, emitted artifacts, and the seed.  Deterministic for
//! a fixed (scenario, seed) apart from the wall clock.

use crate::config::Scenario;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub tolerance: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub scenario: Scenario,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub artifacts: Vec<String>,
    /// named data series for the plot generator
    pub series: serde_json::Map<String, serde_json::Value>,
    pub wall_clock_seconds: f64,
}

impl RunReport {
    pub fn new(scenario: Scenario, seed: u64) -> Self {
        RunReport {
            scenario,
            seed,
            checks: Vec::new(),
            artifacts: Vec::new(),
            series: serde_json::Map::new(),
            wall_clock_seconds: 0.0,
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, measured: f64, tolerance: &str) {
        assert!(
            self.checks.iter().all(|c| c.name != name),
            "duplicate check name {name}"
        );
        self.checks.push(Check {
            name: name.into(),
            pass,
            measured,
            tolerance: tolerance.into(),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn push_series(&mut self, name: &str, value: serde_json::Value) {
        self.series.insert(name.into(), value);
    }

    /// summary lines, one per check
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{}: {} (measured {:.6e}, tolerance {})\n",
                c.name,
                if c.pass { "PASS" } else { "FAIL" },
                c.measured,
                c.tolerance
            ));
        }
        s
    }
}
