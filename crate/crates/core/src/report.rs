//! Structured verification results.

use std::fmt;

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: &str = "kahlergrad.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Informational entry such as a rank; never a failure.
    Info,
    /// Not run, for example because the term budget ran out.
    #[serde(rename = "n/a")]
    Skipped,
}

/// One checked identity at one parameter point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub identity: String,
    pub params: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub results: Vec<CheckResult>,
}

impl Default for VerificationReport {
    fn default() -> Self {
        Self::new()
    }
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport {
            schema: REPORT_SCHEMA.to_string(),
            results: Vec::new(),
        }
    }

    /// Records a check; `witness` is only evaluated on failure.
    pub fn check(
        &mut self,
        identity: &str,
        params: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) -> bool {
        self.results.push(CheckResult {
            identity: identity.to_string(),
            params: params.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: if ok { None } else { Some(witness()) },
        });
        ok
    }

    pub fn info(&mut self, identity: &str, params: impl Into<String>, value: impl Into<String>) {
        self.results.push(CheckResult {
            identity: identity.to_string(),
            params: params.into(),
            status: Status::Info,
            witness: Some(value.into()),
        });
    }

    pub fn skip(&mut self, identity: &str, params: impl Into<String>, reason: impl Into<String>) {
        self.results.push(CheckResult {
            identity: identity.to_string(),
            params: params.into(),
            status: Status::Skipped,
            witness: Some(reason.into()),
        });
    }

    pub fn skipped(&self) -> usize {
        self.results
            .iter()
            .filter(|r| r.status == Status::Skipped)
            .count()
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.results.extend(other.results);
    }

    pub fn passed(&self) -> usize {
        self.results
            .iter()
            .filter(|r| r.status == Status::Pass)
            .count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn failed(&self) -> usize {
        self.failures().count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    /// Results whose identity name equals `identity`.
    pub fn of(&self, identity: &str) -> impl Iterator<Item = &CheckResult> + '_ {
        let id = identity.to_string();
        self.results.iter().filter(move |r| r.identity == id)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
                Status::Skipped => "N/A",
            };
            write!(f, "{tag} {} [{}]", r.identity, r.params)?;
            if let Some(w) = &r.witness {
                write!(f, " {w}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{} passed, {} failed", self.passed(), self.failed())?;
        match self.skipped() {
            0 => Ok(()),
            n => write!(f, ", {n} not applicable"),
        }
    }
}
