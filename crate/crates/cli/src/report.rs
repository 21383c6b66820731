use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes when `measured <= tolerance`; NaN always fails.
    pub fn at_most(name: &str, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            measured,
            tolerance,
            pass: measured <= tolerance,
            note: None,
        }
    }

    /// A check that could not be evaluated.
    pub fn failed(name: &str, tolerance: f64, why: impl std::fmt::Display) -> Self {
        Self {
            name: name.to_string(),
            measured: f64::INFINITY,
            tolerance,
            pass: false,
            note: Some(why.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl SuiteResult {
    pub fn new(suite: &str, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            suite: suite.to_string(),
            checks,
            pass,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Everything written for one `verify` run. Wall times are reported on
/// stderr only so that the file is reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn new(seed: u64, suites: Vec<SuiteResult>) -> Self {
        let pass = suites.iter().all(|s| s.pass);
        Self { seed, suites, pass }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_logic() {
        assert!(Check::at_most("a", 0.0, 0.0).pass);
        assert!(!Check::at_most("a", f64::NAN, 1.0).pass);
        let s = SuiteResult::new("x", vec![Check::at_most("a", 1.0, 2.0), Check::at_most("b", 3.0, 2.0)]);
        assert!(!s.pass);
        assert_eq!(s.failures().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["b"]);
        assert!(serde_json::to_string(&s).unwrap().find("note").is_none());
    }
}
