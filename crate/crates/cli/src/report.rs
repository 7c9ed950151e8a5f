//! The JSON report written to standard output.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit codes of the `spbw` binary.
pub mod exit {
    /// Everything holds, or the command only computes.
    pub const OK: i32 = 0;
    /// A property check failed with a witness.
    pub const FAILS: i32 = 1;
    /// The instance, a literal, a property name or the search budget was rejected.
    pub const INPUT: i32 = 2;
    /// An implication was contradicted: an engine bug.
    pub const VIOLATION: i32 = 3;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// SHA-256 of the canonical instance JSON.
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub degree: u32,
    pub max_space: u128,
    pub order: String,
    pub seed: u64,
    pub consistency_bound: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub engine_version: &'static str,
    pub command: String,
    pub args: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    pub result: Value,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Error payload for reports that stop before a result.
pub fn error_result(kind: &str, message: &str) -> Value {
    serde_json::json!({ "error": { "kind": kind, "message": message } })
}
