use std::fmt;

use serde::{Deserialize, Serialize};

/// First counterexample recorded by a verifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of a verification run. `passed` holds exactly when no failure
/// was recorded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<Failure>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            checked: 0,
            failed: 0,
            first_failure: None,
        }
    }

    /// Records one check; the failure is only rendered when needed.
    pub fn record<F: FnOnce() -> Failure>(&mut self, ok: bool, failure: F) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            self.passed = false;
            if self.first_failure.is_none() {
                self.first_failure = Some(failure());
            }
        }
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn record_eq<T: PartialEq + fmt::Display>(
        &mut self,
        location: impl FnOnce() -> String,
        lhs: &T,
        rhs: &T,
    ) {
        self.record(lhs == rhs, || Failure {
            location: location(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    pub fn record_error(&mut self, location: impl Into<String>, err: impl fmt::Display) {
        self.record(false, || Failure {
            location: location.into(),
            lhs: err.to_string(),
            rhs: String::new(),
        });
    }

    /// Folds another report into this one, keeping the earliest failure.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.failed += other.failed;
        self.passed &= other.passed;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure.map(|mut f| {
                f.location = format!("{}: {}", other.name, f.location);
                f
            });
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {}/{} pass",
            self.name,
            self.checked - self.failed,
            self.checked
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.summary())?;
        if let Some(fail) = &self.first_failure {
            write!(
                f,
                "\n  first failure at {}\n    lhs: {}\n    rhs: {}",
                fail.location, fail.lhs, fail.rhs
            )?;
        }
        Ok(())
    }
}
