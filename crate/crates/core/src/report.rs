//! Pass/fail reports shared by every verification suite.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub pass: bool,
    /// First nonzero term (or another short reason) on failure.
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(id: impl Into<String>) -> Self {
        CheckResult { id: id.into(), pass: true, witness: None }
    }

    pub fn fail(id: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult { id: id.into(), pass: false, witness: Some(witness.into()) }
    }

    /// Passes iff `residual` is zero; otherwise its leading term is the witness.
    pub fn zero(id: impl Into<String>, residual: &crate::engine::Element) -> Self {
        match residual.witness() {
            None => Self::pass(id),
            Some(w) => Self::fail(id, w),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, r: CheckResult) {
        self.results.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.results.extend(other.results);
    }

    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.results.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.pass)
    }

    /// Prefixes every id, for merging sub-reports.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for r in &mut self.results {
            r.id = format!("{prefix}{}", r.id);
        }
        self
    }
}

impl FromIterator<CheckResult> for Report {
    fn from_iter<T: IntoIterator<Item = CheckResult>>(iter: T) -> Self {
        Report { results: iter.into_iter().collect() }
    }
}
