//! Structured run reports for the command-line interface.
//!
//! Every invocation prints exactly one JSON report: the command name, an
//! overall verdict, an optional counterexample witness, a metrics map, and
//! command-specific payload fields flattened into the same object. Key
//! order is fixed (maps are ordered), so identical runs print identical
//! bytes; the only intentionally unstable metric, elapsed time, is emitted
//! only when explicitly requested.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::monotone::Witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportVerdict {
    Ok,
    Violation,
    Unsat,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub verdict: ReportVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, Value>,
    #[serde(flatten)]
    pub payload: BTreeMap<String, Value>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            verdict: ReportVerdict::Ok,
            witness: None,
            metrics: BTreeMap::new(),
            payload: BTreeMap::new(),
        }
    }

    pub fn metric(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metrics.insert(key.into(), value.into());
        self
    }

    /// Serializes a payload value under `key`; panics only on
    /// non-serializable values, which no caller constructs.
    pub fn field(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).expect("report payload serializes");
        self.payload.insert(key.into(), v);
        self
    }

    pub fn verdict(mut self, verdict: ReportVerdict) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn witness(mut self, witness: Witness) -> Self {
        self.verdict = ReportVerdict::Violation;
        self.witness = Some(witness);
        self
    }

    /// The process exit code the verdict maps to: `0` for ok, `1` for
    /// violation or unsat, `2` for errors.
    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            ReportVerdict::Ok => 0,
            ReportVerdict::Violation | ReportVerdict::Unsat => 1,
            ReportVerdict::Error => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
