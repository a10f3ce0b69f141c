//! Reports, verification suites, single-instance pipelines and the resumable
//! cube-like search. The command-line front end is a thin layer over this.

pub mod commands;
pub mod enumerate;
pub mod search;
pub mod suites;

use serde::Serialize;
use serde_json::Value;

pub const TOOL: &str = concat!("chromacay ", env!("CARGO_PKG_VERSION"));

/// Violation messages kept verbatim in a report; the rest are only counted.
const MAX_LISTED_VIOLATIONS: usize = 20;

/// A computed quantity and the operation that produced it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub operation: String,
    pub value: Value,
}

/// Outcome of a verification suite.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Verdict {
    pub passed: bool,
    pub checked: u64,
    pub unknown: u64,
    pub violation_count: u64,
    pub violations: Vec<String>,
}

impl Verdict {
    pub fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violation(msg());
        }
    }

    pub fn violation(&mut self, msg: String) {
        self.violation_count += 1;
        if self.violations.len() < MAX_LISTED_VIOLATIONS {
            self.violations.push(msg);
        }
    }

    pub fn merge(&mut self, other: Verdict) {
        self.checked += other.checked;
        self.unknown += other.unknown;
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < MAX_LISTED_VIOLATIONS {
                self.violations.push(v);
            }
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.violation_count == 0 && self.unknown == 0;
        self
    }
}

/// How a command ended, mapped to the process exit code by the front end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// A budget ran out and some quantity is reported as unknown.
    Unknown,
    /// An asserted property failed.
    Violation,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Unknown => 3,
            Status::Violation => 4,
        }
    }
}

/// Machine-readable result of one command. Deterministic for fixed inputs and
/// seed: no timings, maps are ordered.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub status: Status,
    pub claims: Vec<Claim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            tool: TOOL.to_string(),
            command: command.into(),
            group: None,
            set: None,
            seed: None,
            status: Status::Ok,
            claims: Vec::new(),
            verdict: None,
        }
    }

    pub fn group(mut self, g: &crate::FgAbelianGroup) -> Self {
        self.group = Some(g.to_string());
        self
    }

    pub fn set(mut self, s: &crate::cayley::SymmetricSet) -> Self {
        self.set = Some(s.labels());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn claim(&mut self, operation: &str, value: impl Serialize) {
        self.claims.push(Claim {
            operation: operation.to_string(),
            value: serde_json::to_value(value).expect("report values serialize"),
        });
    }

    pub fn get(&self, operation: &str) -> Option<&Value> {
        self.claims
            .iter()
            .find(|c| c.operation == operation)
            .map(|c| &c.value)
    }

    /// Attaches a suite verdict and derives the status from it.
    pub fn conclude(mut self, verdict: Verdict) -> Self {
        let verdict = verdict.finish();
        self.status = if verdict.violation_count > 0 {
            Status::Violation
        } else if verdict.unknown > 0 {
            Status::Unknown
        } else {
            Status::Ok
        };
        self.verdict = Some(verdict);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
