use std::time::{Duration, Instant};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub id: String,
    pub locus: String,
    pub status: Status,
    /// Informational checks are reported but never fail a run unless strict.
    pub informational: bool,
    /// Serialized residual; `0` on success.
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_us: Option<u64>,
}

/// Ordered list of check records produced by one verification routine.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checks: Vec<CheckRecord>,
}

impl RelationReport {
    pub fn new() -> Self {
        RelationReport::default()
    }

    /// Records a mandatory check that passes iff `residual` prints as `0`.
    pub fn residual(&mut self, suite: &str, id: impl Into<String>, locus: impl Into<String>, residual: String, elapsed: Duration) {
        let status = if residual == "0" { Status::Pass } else { Status::Fail };
        self.checks.push(CheckRecord {
            suite: suite.into(),
            id: id.into(),
            locus: locus.into(),
            status,
            informational: false,
            witness: residual,
            duration_us: Some(elapsed.as_micros() as u64),
        });
    }

    pub fn boolean(&mut self, suite: &str, id: impl Into<String>, locus: impl Into<String>, ok: bool, witness: impl Into<String>, elapsed: Duration) {
        self.checks.push(CheckRecord {
            suite: suite.into(),
            id: id.into(),
            locus: locus.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            informational: false,
            witness: witness.into(),
            duration_us: Some(elapsed.as_micros() as u64),
        });
    }

    pub fn info(&mut self, suite: &str, id: impl Into<String>, locus: impl Into<String>, ok: bool, witness: impl Into<String>) {
        self.checks.push(CheckRecord {
            suite: suite.into(),
            id: id.into(),
            locus: locus.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            informational: true,
            witness: witness.into(),
            duration_us: None,
        });
    }

    pub fn extend(&mut self, other: RelationReport) {
        self.checks.extend(other.checks);
    }

    /// True when every mandatory check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.informational || c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.informational && c.status == Status::Fail)
    }

    pub fn find(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// Runs `f` and returns its value together with the elapsed time.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}
