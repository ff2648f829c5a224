//! Check results shared by audits, the acceptance suite and the CLI.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    /// Number of individual cases examined.
    pub checked: usize,
    pub violations: Vec<String>,
    /// Informational lines (counts, observed data).
    pub notes: Vec<String>,
    pub skipped: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            skipped: Some(reason.into()),
            ..Default::default()
        }
    }

    pub fn violation(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn status(&self) -> Status {
        if self.skipped.is_some() {
            Status::Skipped
        } else if self.violations.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    /// `CHECK <name> <PASS|FAIL|SKIPPED> <detail>`
    pub fn summary_line(&self) -> String {
        let detail = match (&self.skipped, self.violations.first()) {
            (Some(reason), _) => reason.clone(),
            (None, Some(first)) => format!(
                "checked={} violations={} first: {first}",
                self.checked,
                self.violations.len()
            ),
            (None, None) => format!("checked={} violations=0", self.checked),
        };
        format!("CHECK {} {} {}", self.name, self.status(), detail)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.name)?;
        if let Some(reason) = &self.skipped {
            writeln!(f, "skipped: {reason}")?;
        }
        writeln!(f, "cases checked: {}", self.checked)?;
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        for v in self.violations.iter().take(20) {
            writeln!(f, "  VIOLATION {v}")?;
        }
        if self.violations.len() > 20 {
            writeln!(f, "  ... {} more", self.violations.len() - 20)?;
        }
        writeln!(f, "{}", self.summary_line())
    }
}
