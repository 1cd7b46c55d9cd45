use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of an exhaustive axiom check: every violated instance is listed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub subject: String,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport { subject: subject.into(), checks: 0, violations: Vec::new() }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records one check; `msg` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(msg());
        }
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.checks += 1;
        self.violations.push(msg.into());
    }

    /// Appends another report's findings, prefixing them with its subject.
    pub fn absorb(&mut self, other: ValidationReport) {
        self.checks += other.checks;
        for v in other.violations {
            self.violations.push(format!("{}: {}", other.subject, v));
        }
    }

    /// True when some violation mentions `needle`.
    pub fn mentions(&self, needle: &str) -> bool {
        self.violations.iter().any(|v| v.contains(needle))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "{}: valid ({} checks)", self.subject, self.checks)
        } else {
            writeln!(f, "{}: {} violation(s) in {} checks", self.subject, self.violations.len(), self.checks)?;
            for v in self.violations.iter().take(20) {
                writeln!(f, "  - {v}")?;
            }
            if self.violations.len() > 20 {
                writeln!(f, "  ... and {} more", self.violations.len() - 20)?;
            }
            Ok(())
        }
    }
}
