//! Experiment reports: tabular data with provenance, deterministic CSV
//! bytes, and an optional JSON mirror.

use serde::Serialize;

/// One pass/fail line of a suite or acceptance-style check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// Tabular report: named columns over the r-grid (or sample index), plus
/// the check lines. CSV bytes are deterministic for a fixed config/seed.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub experiment: String,
    pub version: String,
    pub config_echo: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(experiment: impl Into<String>, config_echo: String) -> Self {
        Self {
            experiment: experiment.into(),
            version: crate::VERSION.to_string(),
            config_echo,
            columns: Vec::new(),
            rows: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn with_table(mut self, columns: Vec<String>, rows: Vec<Vec<f64>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == columns.len()));
        self.columns = columns;
        self.rows = rows;
        self
    }

    pub fn push_check(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Fixed-format float so CSV bytes do not depend on locale or platform
    /// quirks; 12 significant digits of mantissa.
    pub fn fmt_f64(x: f64) -> String {
        if x.is_nan() {
            "nan".to_string()
        } else if x.is_infinite() {
            if x > 0.0 {
                "inf".to_string()
            } else {
                "-inf".to_string()
            }
        } else {
            format!("{x:.12e}")
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# valdist {} experiment={}\n",
            self.version, self.experiment
        ));
        out.push_str(&format!("# config: {}\n", self.config_echo));
        out.push_str(&format!("# columns: {}\n", self.columns.join(",")));
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|&v| Self::fmt_f64(v)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        for c in &self.checks {
            out.push_str(&format!(
                "# check {} {} {}\n",
                c.name,
                if c.pass { "PASS" } else { "FAIL" },
                c.detail
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary to stdout: one line per check.
    pub fn summary_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "[{}] {}: {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                )
            })
            .collect()
    }
}
