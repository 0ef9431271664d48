//! Validation reports shared by every checker.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub degree: usize,
    pub identity: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> ValidationReport {
        ValidationReport::default()
    }

    pub fn push(&mut self, degree: usize, identity: impl Into<String>) {
        self.violations.push(Violation {
            degree,
            identity: identity.into(),
        });
    }

    pub fn check(&mut self, ok: bool, degree: usize, identity: impl Into<String>) {
        if !ok {
            self.push(degree, identity);
        }
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_failing_degree(&self) -> Option<usize> {
        self.violations.iter().map(|v| v.degree).min()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "degree {}: {}", v.degree, v.identity)?;
        }
        Ok(())
    }
}
