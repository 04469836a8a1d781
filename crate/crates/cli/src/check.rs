use std::collections::BTreeSet;

use serde::Serialize;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Passes when `residual < tolerance`; NaN fails.
    pub fn below(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check { name: name.into(), passed: residual < tolerance, residual: Some(residual), tolerance: Some(tolerance), detail: None }
    }

    /// Passes when `value > threshold`.
    pub fn above(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), passed: value > threshold, residual: Some(value), tolerance: Some(threshold), detail: None }
    }

    pub fn exact(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, residual: None, tolerance: None, detail: Some(detail.into()) }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn status(&self) -> &'static str {
        if self.passed {
            "pass"
        } else {
            "fail"
        }
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        let mut s = format!("{} {}", self.status().to_uppercase(), self.name);
        if let (Some(r), Some(t)) = (self.residual, self.tolerance) {
            s.push_str(&format!(" value={r:.3e} bound={t:.1e}"));
        }
        if let Some(d) = &self.detail {
            s.push_str(&format!(" ({d})"));
        }
        s
    }
}

/// Checks and artifacts of one verification run or scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub artifacts: Vec<String>,
}

impl Report {
    /// Panics on duplicate check names; every check appears once.
    pub fn new(scenario: impl Into<String>, checks: Vec<Check>, artifacts: Vec<String>) -> Self {
        let mut seen = BTreeSet::new();
        for c in &checks {
            assert!(seen.insert(c.name.as_str()), "duplicate check {}", c.name);
        }
        let passed = checks.iter().all(|c| c.passed);
        Report { scenario: scenario.into(), passed, checks, artifacts }
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_never_passes() {
        assert!(!Check::below("x", f64::NAN, 1.0).passed);
        assert!(!Check::above("x", f64::NAN, 1.0).passed);
    }

    #[test]
    #[should_panic(expected = "duplicate check")]
    fn duplicate_names_rejected() {
        Report::new("s", vec![Check::exact("a", true, ""), Check::exact("a", true, "")], vec![]);
    }
}
