//! Machine-readable verdicts with bounded witness lists.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Violations kept per certificate; the total is always reported.
pub const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    UniqueCase,
    OutsideRange,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub check: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
}

impl Certificate {
    pub fn new(check: impl Into<String>, verdict: Verdict) -> Self {
        Certificate { check: check.into(), verdict, witness: None }
    }

    pub fn pass(check: impl Into<String>) -> Self {
        Self::new(check, Verdict::Pass)
    }

    pub fn fail(check: impl Into<String>, witness: Value) -> Self {
        Certificate { check: check.into(), verdict: Verdict::Fail, witness: Some(witness) }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn from_bool(check: impl Into<String>, ok: bool, witness: Value) -> Self {
        let c = Self::new(check, if ok { Verdict::Pass } else { Verdict::Fail });
        c.with_witness(witness)
    }

    /// Pass when `violations` is empty, otherwise fail with at most
    /// [`MAX_WITNESSES`] of them plus the total count.
    pub fn from_violations(check: impl Into<String>, violations: Vec<Value>) -> Self {
        if violations.is_empty() {
            return Self::pass(check);
        }
        let total = violations.len();
        let shown: Vec<Value> = violations.into_iter().take(MAX_WITNESSES).collect();
        Self::fail(check, serde_json::json!({ "total": total, "violations": shown }))
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// An ordered bundle of certificates; passes iff none of them failed.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    pub certificates: Vec<Certificate>,
}

impl Report {
    pub fn new(certificates: Vec<Certificate>) -> Self {
        Report { certificates }
    }

    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn get(&self, check: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.check == check)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Certificate> {
        self.certificates.iter().filter(|c| c.verdict == Verdict::Fail)
    }
}
