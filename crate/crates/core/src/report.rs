//! Law reports and claim reports.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub detail: String,
}

/// Outcome of checking an equational law over an enumerated domain.
///
/// An empty `violations` list means the law holds on every checked case;
/// `exhaustive == false` means some cases were skipped (sampled labels,
/// depth-limited terms, or an exhausted budget).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub violations: Vec<Violation>,
    pub checked: u64,
    pub exhaustive: bool,
}

impl LawReport {
    pub fn new(law: impl Into<String>) -> Self {
        LawReport { law: law.into(), violations: Vec::new(), checked: 0, exhaustive: true }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violate(&mut self, law: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation { law: law.into(), detail: detail.into() });
    }

    pub fn merge(&mut self, other: LawReport) {
        self.violations.extend(other.violations);
        self.checked += other.checked;
        self.exhaustive &= other.exhaustive;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Holds,
    Fails,
    Budget,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Budget => "budget",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A claim checked on one instance, with witnesses for failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub claim: String,
    pub instance: String,
    pub status: Status,
    pub witnesses: Vec<String>,
}

impl Report {
    pub fn new(claim: impl Into<String>, instance: impl Into<String>) -> Self {
        Report { claim: claim.into(), instance: instance.into(), status: Status::Holds, witnesses: Vec::new() }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.status = Status::Fails;
        self.witnesses.push(witness.into());
    }

    /// Marks the report as budget-limited unless it already failed.
    pub fn out_of_budget(&mut self, note: impl Into<String>) {
        if self.status == Status::Holds {
            self.status = Status::Budget;
        }
        self.witnesses.push(note.into());
    }

    pub fn from_law(claim: impl Into<String>, instance: impl Into<String>, law: &LawReport) -> Self {
        let mut report = Report::new(claim, instance);
        for v in &law.violations {
            report.fail(alloc::format!("{}: {}", v.law, v.detail));
        }
        if report.status == Status::Holds && !law.exhaustive {
            // Partial coverage is still a pass; record it as a note.
            report.witnesses.push(alloc::format!("partial coverage: {} cases checked", law.checked));
        }
        report
    }

    /// Folds a sub-report into this one: any failure fails, budget beats holds.
    pub fn absorb(&mut self, other: &Report) {
        match other.status {
            Status::Fails => self.status = Status::Fails,
            Status::Budget if self.status == Status::Holds => self.status = Status::Budget,
            _ => {}
        }
        for w in &other.witnesses {
            if other.instance.is_empty() {
                self.witnesses.push(w.clone());
            } else {
                self.witnesses.push(alloc::format!("[{}] {}", other.instance, w));
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.claim, self.instance, self.status)?;
        for w in &self.witnesses {
            write!(f, "\n  {}", w)?;
        }
        Ok(())
    }
}
