//! Machine-readable verification reports.
//!
//! A report is a flat list of named checks plus witness data. Exact field
//! elements are written twice, as a canonical string and as a float. The
//! JSON layout is described in `docs/report-schema.md` at the repository root.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::QRoot2;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub exact: String,
    pub float: f64,
}

impl From<&QRoot2> for ExactValue {
    fn from(q: &QRoot2) -> Self {
        ExactValue { exact: q.canonical_string(), float: q.to_f64() }
    }
}

impl ExactValue {
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("plain struct")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub witness: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            params: BTreeMap::new(),
            passed: true,
            checks: Vec::new(),
            witness: BTreeMap::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.params.insert(key.into(), to_value(value));
        self
    }

    pub fn witness(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.witness.insert(key.into(), to_value(value));
        self
    }

    /// Records a check. The counterexample is kept only when the check fails.
    pub fn check(&mut self, name: &str, passed: bool, value: impl Serialize, counterexample: impl Serialize) -> bool {
        let value = to_value(value);
        let counterexample = if passed {
            None
        } else {
            match to_value(counterexample) {
                Value::Null => Some(value.clone()),
                v => Some(v),
            }
        };
        self.checks.push(Check {
            name: name.into(),
            passed,
            value: (!value.is_null()).then_some(value),
            counterexample,
        });
        self.passed &= passed;
        passed
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad report JSON: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in &self.params {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            match &c.value {
                Some(v) => {
                    let _ = writeln!(out, "{tag} {}: {}", c.name, compact(v));
                }
                None => {
                    let _ = writeln!(out, "{tag} {}", c.name);
                }
            }
            if let Some(cx) = &c.counterexample {
                let _ = writeln!(out, "     counterexample: {}", compact(cx));
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(
            out,
            "{}: {passed}/{} checks passed",
            if self.passed { "OK" } else { "FAILED" },
            self.checks.len()
        );
        out
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.len() > 160 {
        format!("{}...", &s[..157])
    } else {
        s
    }
}
