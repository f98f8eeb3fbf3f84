//! Versioned JSON reports and their flat CSV projections.

use serde::Serialize;
use serde_json::Value;
use springer_core::pointcount::CountSeries;
use springer_core::verify::{CheckOutcome, SuiteOutcome};
use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

pub const SCHEMA: &str = "springer-lab/v1";

/// Everything that may differ between identical invocations.
#[derive(Debug, Serialize)]
pub struct RunInfo {
    pub timestamp_unix: u64,
    pub elapsed_ms: f64,
    pub jobs: usize,
    pub check_timings_ms: BTreeMap<String, f64>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub anchor: String,
    pub parameters: Value,
    pub checks: Vec<CheckOutcome>,
    pub result: BTreeMap<String, Value>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<CountSeries>,
    pub run: RunInfo,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

impl Report {
    pub fn new(command: &str, anchor: &str, parameters: Value, outcome: SuiteOutcome, elapsed: Duration) -> Self {
        let check_timings_ms = outcome.checks.iter().map(|c| (c.name.clone(), ms(c.elapsed))).collect();
        Self {
            schema: SCHEMA,
            command: command.into(),
            anchor: anchor.into(),
            parameters,
            passed: outcome.passed(),
            checks: outcome.checks,
            result: outcome.data,
            samples: Vec::new(),
            run: RunInfo {
                timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
                elapsed_ms: ms(elapsed),
                jobs: rayon::current_num_threads(),
                check_timings_ms,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Writes `<stem>.json`, `<stem>-checks.csv` and, when samples exist,
    /// `<stem>-samples.csv` into `dir`.
    pub fn write(&self, dir: &Path, stem: &str) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(format!("{stem}.json")), self.to_json() + "\n")?;
        let mut w = csv::Writer::from_path(dir.join(format!("{stem}-checks.csv")))?;
        w.write_record(["name", "mode", "passed", "count", "witness"])?;
        for c in &self.checks {
            let mode = serde_json::to_value(c.mode).expect("mode serializes");
            w.write_record([
                c.name.as_str(),
                mode.as_str().unwrap_or_default(),
                if c.passed { "true" } else { "false" },
                &c.count.to_string(),
                c.witness.as_deref().unwrap_or(""),
            ])?;
        }
        w.flush()?;
        if !self.samples.is_empty() {
            let file = fs::File::create(dir.join(format!("{stem}-samples.csv")))?;
            springer_core::pointcount::write_csv(&self.samples, file)?;
        }
        Ok(())
    }
}
