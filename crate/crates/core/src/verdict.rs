use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    /// A failure that the input declared in advance (negative controls).
    ExpectedFail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
            Status::ExpectedFail => "expected-fail",
        })
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub status: Status,
    /// Largest numeric residual, for floating-point checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    /// True when the check was decided in exact arithmetic.
    pub exact: bool,
    pub details: String,
}

impl Verdict {
    pub fn new(check: impl Into<String>, status: Status, details: impl Into<String>) -> Self {
        Verdict {
            check: check.into(),
            status,
            residual: None,
            exact: false,
            details: details.into(),
        }
    }

    pub fn from_bool(check: impl Into<String>, ok: bool, details: impl Into<String>) -> Self {
        Verdict::new(check, if ok { Status::Pass } else { Status::Fail }, details)
    }

    pub fn not_applicable(check: impl Into<String>, reason: impl Into<String>) -> Self {
        Verdict::new(check, Status::NotApplicable, reason)
    }

    pub fn with_residual(mut self, residual: f64) -> Self {
        self.residual = Some(residual);
        self
    }

    pub fn exact(mut self) -> Self {
        self.exact = true;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}
