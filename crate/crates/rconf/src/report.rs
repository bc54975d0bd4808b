//! Reproduction report.

use serde::{Deserialize, Serialize};

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    /// Dotted check name, e.g. `trace.gamma3`.
    pub name: String,
    /// Acceptance criterion the check belongs to (1-based).
    pub criterion: u8,
    /// Mathematical statement being checked.
    pub anchor: String,
    /// Expected value.
    pub expected: String,
    /// Computed value.
    pub computed: String,
    /// Whether the check passed.
    pub pass: bool,
    /// Wall time in milliseconds, present only when timings are requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Full report of a `reproduce` run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproReport {
    /// Seed of the randomized checks.
    pub seed: u64,
    /// Tracing precision.
    pub precision: String,
    /// Number of passing checks.
    pub passed: usize,
    /// Number of failing checks.
    pub failed: usize,
    /// Checks in declaration order.
    pub checks: Vec<CheckReport>,
}

impl ReproReport {
    /// Assemble a report and its counts.
    pub fn new(seed: u64, precision: &str, checks: Vec<CheckReport>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        ReproReport { seed, precision: precision.to_string(), passed, failed: checks.len() - passed, checks }
    }

    /// Whether every check passed.
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// Pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Parse a JSON report.
    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// One line per check plus a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let time = c.elapsed_ms.map(|t| format!(" [{t} ms]")).unwrap_or_default();
            out.push_str(&format!("{status} {}{time}\n", c.name));
            if !c.pass {
                out.push_str(&format!("     expected: {}\n     computed: {}\n", c.expected, c.computed));
            }
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}
