//! Independent ground-truth oracles used to validate the solvers at desk
//! scale.

mod audit;
mod brute;
mod gradcheck;
mod rate;
mod reference;

pub use audit::audit_trace;
pub use brute::{brute_gap, brute_lmo_value, MAX_BRUTE_DIM};
pub use gradcheck::{grad_check, GRAD_CHECK_RTOL};
pub use rate::{rate_slope, RateEntry, RateReport};
pub use reference::{project, reference_minimum, reference_minimum_with, ReferenceOptions};

use serde::Serialize;

/// Where a check failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Iterate(usize),
    Point(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Largest excess over the allowed bound; zero when the check passed.
    pub worst_violation: f64,
    /// First violating iterate or probe point; present whenever `passed` is false.
    pub location: Option<Location>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AuditReport {
    pub checks: Vec<Check>,
    /// Checks that could not run for lack of data.
    pub skipped: Vec<String>,
}

impl AuditReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn total(&self) -> usize {
        self.checks.len()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{}/{} checks passed", self.passed(), self.total());
        if !self.skipped.is_empty() {
            s.push_str(&format!(" ({} skipped: {})", self.skipped.len(), self.skipped.join(", ")));
        }
        s
    }
}

/// Folds per-row excesses into one [`Check`].
#[derive(Debug)]
pub(crate) struct CheckAcc {
    name: &'static str,
    worst: f64,
    first: Option<Location>,
}

impl CheckAcc {
    pub(crate) fn new(name: &'static str) -> Self {
        Self { name, worst: 0.0, first: None }
    }

    /// Positive (or NaN) `excess` is a violation.
    pub(crate) fn observe(&mut self, excess: f64, loc: impl FnOnce() -> Location) {
        let violated = excess > 0.0 || excess.is_nan();
        if violated {
            let mag = if excess.is_nan() { f64::INFINITY } else { excess };
            self.worst = self.worst.max(mag);
            if self.first.is_none() {
                self.first = Some(loc());
            }
        }
    }

    pub(crate) fn finish(self) -> Check {
        Check { name: self.name.to_string(), passed: self.first.is_none(), worst_violation: self.worst, location: self.first }
    }
}
