//! The JSON document every command prints on standard output.

use std::collections::BTreeMap;

use opeq_core::ConditionReport;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::matrix_file::MatrixFile;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Solved,
    Unsolvable,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Solved => 0,
            Self::Unsolvable => 1,
            Self::Error => 2,
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Solved
        } else {
            Self::Unsolvable
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// Input name to `sha256:<hex>` of the file bytes.
    pub inputs: BTreeMap<String, String>,
    pub outcome: Outcome,
    pub residuals: BTreeMap<String, f64>,
    pub conditions: Vec<ConditionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<MatrixFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            inputs: BTreeMap::new(),
            outcome: Outcome::Error,
            residuals: BTreeMap::new(),
            conditions: Vec::new(),
            solution: None,
            seed: None,
            tool_version: TOOL_VERSION.to_string(),
            details: serde_json::Value::Null,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_digest() {
        assert_eq!(
            digest(b""),
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn report_round_trip() {
        let mut r = RunReport::new("check range");
        r.outcome = Outcome::Unsolvable;
        r.residuals.insert("range".into(), 0.5);
        let back: RunReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!r.to_json().contains("solution"));
    }
}
