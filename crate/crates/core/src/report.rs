use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed check, naming the members involved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub members: Vec<String>,
    pub detail: String,
}

/// Structured outcome of a verification pass.
///
/// `passed` holds iff there are no failures and, for numeric checks, the
/// largest residual stays within `tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub passed: bool,
    pub checks_run: u64,
    pub max_residual: f64,
    pub tolerance: Option<f64>,
    pub failures: Vec<Failure>,
    pub covered: Option<u64>,
    pub expected: Option<u64>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        VerificationReport {
            name: name.into(),
            passed: true,
            checks_run: 0,
            max_residual: 0.0,
            tolerance: None,
            failures: Vec::new(),
            covered: None,
            expected: None,
        }
    }

    pub fn numeric(name: impl Into<String>, tolerance: f64) -> Self {
        let mut r = Self::new(name);
        r.tolerance = Some(tolerance);
        r
    }

    pub fn fail(&mut self, members: Vec<String>, detail: impl Into<String>) {
        self.failures.push(Failure {
            members,
            detail: detail.into(),
        });
        self.passed = false;
    }

    pub fn record_residual(&mut self, residual: f64) {
        if residual > self.max_residual || residual.is_nan() {
            self.max_residual = residual;
        }
        if let Some(tol) = self.tolerance {
            if !(self.max_residual <= tol) {
                self.passed = false;
            }
        }
    }

    pub fn set_counts(&mut self, covered: u64, expected: u64) {
        self.covered = Some(covered);
        self.expected = Some(expected);
    }

    /// Combines two reports; the result passes only if both do.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        if self.name.is_empty() {
            self.name = other.name.clone();
        } else if !other.name.is_empty() {
            self.name = format!("{} + {}", self.name, other.name);
        }
        self.passed &= other.passed;
        self.checks_run += other.checks_run;
        if other.max_residual > self.max_residual || other.max_residual.is_nan() {
            self.max_residual = other.max_residual;
        }
        self.tolerance = match (self.tolerance, other.tolerance) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.failures.extend(other.failures);
        self.covered = self.covered.or(other.covered);
        self.expected = self.expected.or(other.expected);
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}: {} checks", self.name, self.checks_run)?;
        if let Some(tol) = self.tolerance {
            write!(f, ", max residual {:.3e} (tol {:.1e})", self.max_residual, tol)?;
        }
        if let (Some(c), Some(e)) = (self.covered, self.expected) {
            write!(f, ", covered {c}/{e}")?;
        }
        writeln!(f)?;
        const SHOWN: usize = 10;
        for failure in self.failures.iter().take(SHOWN) {
            writeln!(f, "  {}: {}", failure.members.join(" vs "), failure.detail)?;
        }
        if self.failures.len() > SHOWN {
            writeln!(f, "  ... {} more failures", self.failures.len() - SHOWN)?;
        }
        Ok(())
    }
}
