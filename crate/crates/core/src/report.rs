//! Machine-readable verification reports.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::ring::{CoeffMismatch, ScalarJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A degree interval on which a check compared coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckedRange {
    pub check: String,
    pub variable: String,
    pub lo: i64,
    pub hi: i64,
}

/// The first coefficient that disagreed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub location: String,
    pub left: Option<ScalarJson>,
    pub right: Option<ScalarJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub checked_ranges: Vec<CheckedRange>,
    pub status: Status,
    pub first_failure: Option<Failure>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            params: BTreeMap::new(),
            checked_ranges: Vec::new(),
            status: Status::Pass,
            first_failure: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn checked(&mut self, check: impl Into<String>, variable: &str, lo: i64, hi: i64) {
        self.checked_ranges.push(CheckedRange {
            check: check.into(),
            variable: variable.to_string(),
            lo,
            hi,
        });
    }

    /// Records a failure; only the first one is kept.
    pub fn fail(&mut self, failure: Failure) {
        self.status = Status::Fail;
        if self.first_failure.is_none() {
            self.first_failure = Some(failure);
        }
    }

    pub fn fail_coeff(&mut self, check: impl Into<String>, m: &CoeffMismatch) {
        self.fail(Failure {
            check: check.into(),
            location: format!("z^{}", m.degree),
            left: m.left.as_ref().map(|s| s.to_json()),
            right: m.right.as_ref().map(|s| s.to_json()),
        });
    }

    /// Runs a comparison, recording the range on success and the mismatch
    /// otherwise.
    pub fn compare(
        &mut self,
        check: &str,
        lo: i64,
        hi: i64,
        outcome: std::result::Result<(), CoeffMismatch>,
    ) {
        match outcome {
            Ok(()) => self.checked(check, "z", lo, hi),
            Err(m) => self.fail_coeff(check, &m),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Scalar;

    #[test]
    fn keeps_first_failure() {
        let mut r = Report::new("demo").param("r", 2);
        assert!(r.passed());
        r.checked("a", "z", -3, 0);
        for d in [5, 7] {
            r.fail_coeff(
                "b",
                &CoeffMismatch {
                    degree: d,
                    left: Some(Scalar::one(0)),
                    right: None,
                },
            );
        }
        assert!(!r.passed());
        assert_eq!(r.first_failure.as_ref().unwrap().location, "z^5");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["status"], "fail");
        assert_eq!(v["params"]["r"], 2);
        assert_eq!(v["checked_ranges"][0]["lo"], -3);
    }
}
