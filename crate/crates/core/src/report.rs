//! Pass/fail records produced by every verification routine.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

/// One named check. A failing check always carries its counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: Option<String>,
    /// Filled in by callers that can measure time.
    pub elapsed: Option<Duration>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, detail: None, elapsed: None }
    }

    pub fn pass_with(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, detail: Some(detail.into()), elapsed: None }
    }

    pub fn fail(name: impl Into<String>, counterexample: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Fail, detail: Some(counterexample.into()), elapsed: None }
    }

    /// Passes when `failure` is `None`.
    pub fn from_failure(name: impl Into<String>, failure: Option<String>) -> Self {
        match failure {
            None => Check::pass(name),
            Some(d) => Check::fail(name, d),
        }
    }

    /// Passes iff `ok`; the detail is kept either way.
    pub fn expect(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Check::pass_with(name, detail)
        } else {
            Check::fail(name, detail)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    /// `None` only for an empty merge.
    pub p: Option<u32>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, p: u32) -> Self {
        VerificationReport { suite: suite.into(), p: Some(p), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn total(&self) -> usize {
        self.checks.len()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn failed_count(&self) -> usize {
        self.failures().count()
    }

    /// Concatenates reports in order. All reports must share `p`.
    pub fn merge(reports: impl IntoIterator<Item = VerificationReport>) -> Result<VerificationReport> {
        let mut reports = reports.into_iter();
        let Some(first) = reports.next() else {
            return Ok(VerificationReport { suite: "merged".to_string(), p: None, checks: Vec::new() });
        };
        let mut out = first;
        for r in reports {
            match (out.p, r.p) {
                (Some(a), Some(b)) if a != b => return Err(Error::MismatchedP(a, b)),
                (None, b) => out.p = b,
                _ => {}
            }
            if out.suite != r.suite {
                out.suite = "merged".to_string();
            }
            out.checks.extend(r.checks);
        }
        Ok(out)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.p {
            Some(p) => writeln!(f, "suite {} (p = {p})", self.suite)?,
            None => writeln!(f, "suite {}", self.suite)?,
        }
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(d) => writeln!(f, "  {tag} {}: {d}", c.name)?,
                None => writeln!(f, "  {tag} {}", c.name)?,
            }
        }
        write!(f, "{} checks, {} failed", self.total(), self.failed_count())
    }
}
