//! Check results shared by every module and the command-line front end.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub task: String,
    pub check: String,
    pub status: Status,
    pub location: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl Entry {
    pub fn new(check: impl Into<String>, status: Status, location: impl Into<String>) -> Self {
        Entry {
            task: String::new(),
            check: check.into(),
            status,
            location: location.into(),
            expected: None,
            actual: None,
            residual: None,
            notes: Vec::new(),
        }
    }

    pub fn pass(check: impl Into<String>, location: impl Into<String>) -> Self {
        Entry::new(check, Status::Pass, location)
    }

    pub fn fail(check: impl Into<String>, location: impl Into<String>) -> Self {
        Entry::new(check, Status::Fail, location)
    }

    pub fn info(check: impl Into<String>, location: impl Into<String>) -> Self {
        Entry::new(check, Status::Info, location)
    }

    pub fn expected(mut self, s: impl fmt::Display) -> Self {
        self.expected = Some(s.to_string());
        self
    }

    pub fn actual(mut self, s: impl fmt::Display) -> Self {
        self.actual = Some(s.to_string());
        self
    }

    pub fn residual(mut self, s: impl fmt::Display) -> Self {
        self.residual = Some(s.to_string());
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub info: usize,
}

/// An ordered list of entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// Stamp every entry that has no task name yet.
    pub fn with_task(mut self, task: &str) -> Self {
        for e in &mut self.entries {
            if e.task.is_empty() {
                e.task = task.to_string();
            }
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn find(&self, check: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.check == check)
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for e in &self.entries {
            match e.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Info => s.info += 1,
            }
        }
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tw = self.entries.iter().map(|e| e.task.chars().count()).max().unwrap_or(0);
        let cw = self.entries.iter().map(|e| e.check.chars().count()).max().unwrap_or(0);
        for e in &self.entries {
            let status = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            write!(f, "{}  {:<tw$}  {:<cw$}  {}", status, e.task, e.check, e.location, tw = tw, cw = cw)?;
            if let Some(x) = &e.expected {
                write!(f, "  expected: {}", x)?;
            }
            if let Some(x) = &e.actual {
                write!(f, "  actual: {}", x)?;
            }
            if let Some(x) = &e.residual {
                write!(f, "  residual: {}", x)?;
            }
            for n in &e.notes {
                write!(f, "  [{}]", n)?;
            }
            writeln!(f)?;
        }
        let s = self.summary();
        write!(f, "{} passed, {} failed", s.passed, s.failed)
    }
}
