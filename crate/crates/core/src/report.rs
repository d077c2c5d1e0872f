//! Verification reports: one item per checked identity.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// Nothing to check (empty index set).
    Vacuous,
    /// A probe whose outcome is recorded, never a failure.
    Finding,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Vacuous => "vacuous",
            Status::Finding => "finding",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportItem {
    pub label: String,
    /// Short name of the statement being checked.
    pub anchor: String,
    pub status: Status,
    /// Serialized counterexample or recorded value; present for fail and finding.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub items: Vec<ReportItem>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, item: ReportItem) {
        debug_assert!(
            !matches!(item.status, Status::Fail | Status::Finding) || item.witness.is_some(),
            "fail and finding items carry a witness"
        );
        self.items.push(item);
    }

    /// Records a pass, or a fail with `witness` when `ok` is false.
    pub fn check(
        &mut self,
        label: impl Into<String>,
        anchor: &str,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) {
        let (status, witness) = if ok {
            (Status::Pass, None)
        } else {
            (Status::Fail, Some(witness()))
        };
        self.push(ReportItem {
            label: label.into(),
            anchor: anchor.into(),
            status,
            witness,
        });
    }

    pub fn vacuous(&mut self, label: impl Into<String>, anchor: &str) {
        self.push(ReportItem {
            label: label.into(),
            anchor: anchor.into(),
            status: Status::Vacuous,
            witness: None,
        });
    }

    pub fn finding(&mut self, label: impl Into<String>, anchor: &str, witness: String) {
        self.push(ReportItem {
            label: label.into(),
            anchor: anchor.into(),
            status: Status::Finding,
            witness: Some(witness),
        });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.items.extend(other.items);
    }

    pub fn count(&self, status: Status) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportItem> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }
}
