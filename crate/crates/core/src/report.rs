//! Check outcomes.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Where the check failed, e.g. a generator triple.
    pub at: String,
    /// Nonzero residual, printed in the input syntax.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub failures: Vec<Failure>,
    pub millis: Option<u64>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>) -> Self {
        CheckResult { name: name.into(), failures: Vec::new(), millis: None }
    }

    pub fn fail(&mut self, at: impl Into<String>, residual: impl Into<String>) {
        self.failures.push(Failure { at: at.into(), residual: residual.into() });
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Residual summary: `at: expr` entries joined by `; `.
    pub fn residual(&self) -> Option<String> {
        if self.failures.is_empty() {
            return None;
        }
        let parts: Vec<String> = self
            .failures
            .iter()
            .map(|f| if f.at.is_empty() { f.residual.clone() } else { format!("{}: {}", f.at, f.residual) })
            .collect();
        Some(parts.join("; "))
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.residual() {
            None => write!(f, "CHECK {}: PASS", self.name),
            Some(r) => write!(f, "CHECK {}: FAIL residual={}", self.name, r),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
