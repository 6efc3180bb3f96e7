//! Verdicts returned by every checker.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// One failing instance of an identity: which condition, at which basis
/// tuple (1-based indices), and the nonzero residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: String,
    pub indices: Vec<usize>,
    pub residual: Vec<Scalar>,
}

/// Outcome of a named condition inside a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub name: String,
    pub passed: bool,
}

/// Result of a checker: per-condition verdicts plus all violations found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub conditions: Vec<Condition>,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Report {
            check: check.to_string(),
            conditions: Vec::new(),
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// A report whose conditions are declared up front; each starts as passed
    /// and flips when a violation names it.
    pub fn with_conditions(check: &str, names: &[&str]) -> Self {
        let mut r = Report::new(check);
        for n in names {
            r.conditions.push(Condition {
                name: n.to_string(),
                passed: true,
            });
        }
        r
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.conditions.iter().all(|c| c.passed)
    }

    /// Records `residual` as a violation unless it is zero. Returns whether a
    /// violation was recorded.
    pub fn record(&mut self, condition: &str, indices: &[usize], residual: Vec<Scalar>) -> bool {
        if residual.iter().all(Scalar::is_zero) {
            return false;
        }
        self.fail(condition);
        self.violations.push(Violation {
            condition: condition.to_string(),
            indices: indices.iter().map(|i| i + 1).collect(),
            residual,
        });
        true
    }

    /// Marks a condition failed without a residual (adding it if unknown).
    pub fn fail(&mut self, condition: &str) {
        match self.conditions.iter_mut().find(|c| c.name == condition) {
            Some(c) => c.passed = false,
            None => self.conditions.push(Condition {
                name: condition.to_string(),
                passed: false,
            }),
        }
    }

    /// Declares a condition with an explicit verdict.
    pub fn set(&mut self, condition: &str, passed: bool) {
        match self.conditions.iter_mut().find(|c| c.name == condition) {
            Some(c) => c.passed = c.passed && passed,
            None => self.conditions.push(Condition {
                name: condition.to_string(),
                passed,
            }),
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn condition(&self, name: &str) -> Option<bool> {
        self.conditions.iter().find(|c| c.name == name).map(|c| c.passed)
    }

    /// Folds another report in, prefixing its condition names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        let name = |n: &str| {
            if prefix.is_empty() {
                n.to_string()
            } else {
                alloc::format!("{}/{}", prefix, n)
            }
        };
        for c in other.conditions {
            self.set(&name(&c.name), c.passed);
        }
        for v in other.violations {
            self.violations.push(Violation {
                condition: name(&v.condition),
                ..v
            });
        }
        self.notes.extend(other.notes);
    }
}
