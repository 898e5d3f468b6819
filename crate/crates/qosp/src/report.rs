//! Pass/fail reports produced by the verification routines.

use std::fmt;

/// Outcome of a single named identity check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A group of checks run under one label.
#[derive(Debug, Clone)]
pub struct Report {
    pub label: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(label: impl Into<String>) -> Self {
        Report {
            label: label.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, true, "");
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Merge another report's checks, prefixing their names.
    pub fn absorb(&mut self, other: Report) {
        for c in other.checks {
            self.checks.push(Check {
                name: format!("{}/{}", other.label, c.name),
                ..c
            });
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.label,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for c in &self.checks {
            let mark = if c.passed { "ok" } else { "FAILED" };
            if c.detail.is_empty() {
                writeln!(f, "  [{mark}] {}", c.name)?;
            } else {
                writeln!(f, "  [{mark}] {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}
