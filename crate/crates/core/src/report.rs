//! Suite reports: per-check status with renderings, anchors and
//! counterexamples. Field names are part of the JSON contract.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    DerivedMismatch,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::DerivedMismatch => "derived-mismatch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
    pub anchor: String,
}

impl Check {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            status: Status::Pass,
            lhs: String::new(),
            rhs: String::new(),
            detail: String::new(),
            anchor: anchor.into(),
        }
    }

    pub fn sides(mut self, lhs: impl Into<String>, rhs: impl Into<String>) -> Check {
        self.lhs = lhs.into();
        self.rhs = rhs.into();
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = detail.into();
        self
    }

    pub fn status(mut self, status: Status) -> Check {
        self.status = status;
        self
    }

    pub fn passed_if(self, ok: bool) -> Check {
        self.status(if ok { Status::Pass } else { Status::Fail })
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates a per-sample identity check, keeping the first failure.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub total: usize,
    pub failed: usize,
    pub counterexample: Option<String>,
}

impl Tally {
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failed += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        self.failed += other.failed;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn into_check(self, check: Check) -> Check {
        let ok = self.ok();
        let detail = match &self.counterexample {
            None => format!("{} samples, all exact", self.total),
            Some(c) => format!("{}/{} samples failed; first counterexample: {c}", self.failed, self.total),
        };
        check.detail(detail).passed_if(ok)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub mismatch: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, seed: u64, checks: Vec<Check>) -> SuiteReport {
        let mut r = SuiteReport {
            suite: suite.into(),
            seed,
            checks,
            summary: Summary::default(),
            elapsed_ms: 0,
        };
        r.recount();
        r
    }

    pub fn recount(&mut self) {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::DerivedMismatch => s.mismatch += 1,
            }
        }
        self.summary = s;
    }

    /// Appends another report's checks, prefixing their ids.
    pub fn absorb(&mut self, other: SuiteReport) {
        for mut c in other.checks {
            c.id = format!("{}/{}", other.suite, c.id);
            self.checks.push(c);
        }
        self.recount();
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn find(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (seed {})", self.suite, self.seed);
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}", c.status.label(), c.id);
            if !c.lhs.is_empty() || !c.rhs.is_empty() {
                let _ = writeln!(out, "    lhs: {}", c.lhs);
                let _ = writeln!(out, "    rhs: {}", c.rhs);
            }
            if !c.detail.is_empty() {
                let _ = writeln!(out, "    {}", c.detail);
            }
            if !c.anchor.is_empty() {
                let _ = writeln!(out, "    anchor: {}", c.anchor);
            }
        }
        let _ = writeln!(
            out,
            "summary: {} pass, {} fail, {} derived-mismatch",
            self.summary.pass, self.summary.fail, self.summary.mismatch
        );
        if self.elapsed_ms > 0 {
            let _ = writeln!(out, "elapsed: {} ms", self.elapsed_ms);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts_statuses() {
        let r = SuiteReport::new(
            "x",
            7,
            vec![
                Check::new("a", ""),
                Check::new("b", "").passed_if(false),
                Check::new("c", "").status(Status::DerivedMismatch),
            ],
        );
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, mismatch: 1 });
        assert!(!r.passed());
    }

    #[test]
    fn json_field_names_are_stable() {
        let r = SuiteReport::new("s", 1, vec![Check::new("id", "anchor").sides("l", "r")]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["suite", "seed", "checks", "summary", "elapsed_ms"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        let c = &v["checks"][0];
        for key in ["id", "status", "lhs", "rhs", "detail", "anchor"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
        assert_eq!(c["status"], "pass");
        assert_eq!(v["summary"]["mismatch"], 0);
    }

    #[test]
    fn tally_keeps_first_counterexample() {
        let mut t = Tally::default();
        t.record(true, || "a".into());
        t.record(false, || "b".into());
        t.record(false, || "c".into());
        let c = t.into_check(Check::new("x", ""));
        assert_eq!(c.status, Status::Fail);
        assert!(c.detail.contains("2/3"));
        assert!(c.detail.contains(": b"));
    }
}
