use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Reproducible run report: identical inputs and parameters give
/// byte-identical output except for the timing field.
#[derive(Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub parameters: BTreeMap<String, Value>,
    pub input_digest: String,
    pub results: Value,
    pub timing_ms: f64,
}

impl RunReport {
    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("report serializes")
        } else {
            serde_json::to_string(self).expect("report serializes")
        }
    }
}

/// Machine-readable error object for domain failures (exit code 2).
#[derive(Serialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

pub fn error_json(kind: &str, message: &str) -> String {
    serde_json::to_string(&ErrorReport {
        error: ErrorBody { kind: kind.to_string(), message: message.to_string() },
    })
    .expect("error serializes")
}
