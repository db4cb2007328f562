use alloc::string::String;
use alloc::vec::Vec;

use super::{Convention, Mode};
use crate::sugano::PlaceCase;

/// First series coefficient at which the two sides of a check differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub t_power: u64,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one identity check. `error` is set when the check could not
/// be evaluated at all (for instance on hitting the term limit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch>,
    pub error: Option<String>,
}

impl Check {
    pub fn passed(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: true,
            first_mismatch: None,
            error: None,
        }
    }

    pub fn failed(name: impl Into<String>, mismatch: Mismatch) -> Self {
        Check {
            name: name.into(),
            pass: false,
            first_mismatch: Some(mismatch),
            error: None,
        }
    }

    pub fn errored(name: impl Into<String>, error: &crate::Error) -> Self {
        Check {
            name: name.into(),
            pass: false,
            first_mismatch: None,
            error: Some(alloc::format!("{error}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub case: PlaceCase,
    pub mode: Mode,
    pub order: usize,
    pub seed: u64,
    /// Sample parameters as `("s<i>.<var>", "num/den")`, in sample order.
    pub params: Vec<(String, String)>,
    pub checks: Vec<Check>,
    /// Split-case enumeration convention whose checks are reported.
    pub convention: Option<Convention>,
    /// Whether each tried convention passed every sample.
    pub conventions: Vec<(Convention, bool)>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
