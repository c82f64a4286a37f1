use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::ElementSet;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct NamedElements {
    pub label: String,
    pub elements: Vec<u32>,
}

impl NamedElements {
    pub fn new(label: &str, s: &ElementSet) -> Self {
        NamedElements { label: label.to_string(), elements: s.to_vec() }
    }
}

/// One output document. Field order is the serialized key order; only
/// `wall_time_ms` varies between identical runs.
#[derive(Debug, Serialize)]
pub struct Document<R: Serialize> {
    pub schema_version: &'static str,
    pub command: Vec<String>,
    pub group: String,
    pub provenance: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub payload: Vec<NamedElements>,
    pub result: R,
    pub passed: bool,
    pub wall_time_ms: u64,
}

impl<R: Serialize> Document<R> {
    pub fn new(argv: &[String], group: &str, provenance: &str, payload: Vec<NamedElements>, result: R) -> Self {
        Document {
            schema_version: SCHEMA_VERSION,
            command: argv.to_vec(),
            group: group.to_string(),
            provenance: provenance.to_string(),
            payload,
            result,
            passed: false,
            wall_time_ms: 0,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct ErrorDocument {
    pub schema_version: &'static str,
    pub command: Vec<String>,
    pub error: ErrorBody,
}

impl ErrorDocument {
    pub fn new(argv: &[String], kind: &str, message: &str) -> Self {
        ErrorDocument {
            schema_version: SCHEMA_VERSION,
            command: argv.to_vec(),
            error: ErrorBody { kind: kind.to_string(), message: message.to_string() },
        }
    }

    pub fn from_error(argv: &[String], e: &Error) -> Self {
        let debug = format!("{e:?}");
        let kind: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
        Self::new(argv, &kind, &e.to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("error document serializes")
    }
}
