use std::path::Path;

use serde::Serialize;
use serde_json::Value;

/// One named verdict with free-form details.
#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub details: Value,
}

impl CheckEntry {
    pub fn new(name: impl Into<String>, passed: bool, details: Value) -> Self {
        CheckEntry { name: name.into(), passed, details }
    }
}

/// Machine-readable result of one invocation. Identical config and seed
/// reproduce every field byte-for-byte except `timing_ms`.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Value,
    pub seed: u64,
    pub checks: Vec<CheckEntry>,
    pub passed: bool,
    pub timing_ms: u128,
}

impl ReportDocument {
    pub fn new(command: &str, config: Value, checks: Vec<CheckEntry>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        ReportDocument {
            tool: "plasmakit",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config,
            seed: 0,
            checks,
            passed,
            timing_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), self.to_json())
    }

    pub fn print_human(&self) {
        for check in &self.checks {
            let tag = if check.passed { "PASS" } else { "FAIL" };
            println!("{tag} {}", check.name);
            if !check.passed {
                if let Ok(text) = serde_json::to_string(&check.details) {
                    println!("     {text}");
                }
            }
        }
        println!(
            "{}: {} of {} checks passed",
            if self.passed { "ok" } else { "FAILED" },
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        );
    }
}
