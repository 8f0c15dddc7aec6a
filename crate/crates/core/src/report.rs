//! The result record every verification suite and CLI command produces.

use crate::opfile::sig15;

/// Outcome of one verification run. `pass` is derived, not stored by the
/// caller: it is `max_abs_error <= tolerance` (so a NaN error never passes).
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: String,
    pub trials: u64,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(
        suite: impl Into<String>,
        trials: u64,
        max_abs_error: f64,
        tolerance: f64,
        seed: u64,
        elapsed_ms: u64,
    ) -> Self {
        Report {
            suite: suite.into(),
            trials,
            max_abs_error,
            tolerance,
            pass: max_abs_error <= tolerance,
            seed,
            elapsed_ms,
        }
    }

    /// One-line human-readable form: space-separated `key=value` pairs with
    /// floats at 15 significant digits.
    pub fn to_line(&self) -> String {
        format!(
            "suite={} trials={} max_abs_error={} tolerance={} pass={} seed={} elapsed_ms={}",
            self.suite,
            self.trials,
            sig15(self.max_abs_error),
            sig15(self.tolerance),
            self.pass,
            self.seed,
            self.elapsed_ms
        )
    }

    /// Single-line JSON object with the same fields. Non-finite floats
    /// become `null` since JSON has no representation for them.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"suite\":\"{}\",\"trials\":{},\"max_abs_error\":{},\"tolerance\":{},\"pass\":{},\"seed\":{},\"elapsed_ms\":{}}}",
            escape(&self.suite),
            self.trials,
            json_number(self.max_abs_error),
            json_number(self.tolerance),
            self.pass,
            self.seed,
            self.elapsed_ms
        )
    }
}

fn json_number(x: f64) -> String {
    if x.is_finite() {
        sig15(x)
    } else {
        "null".to_string()
    }
}

fn escape(s: &str) -> String {
    s.chars()
        .flat_map(|c| match c {
            '"' => vec!['\\', '"'],
            '\\' => vec!['\\', '\\'],
            c => vec![c],
        })
        .collect()
}
