//! Report envelope shared by the CLI and the test harnesses. Reports are
//! deterministic: identical config and seed produce byte-identical output,
//! so timing data never goes into the files themselves.

use serde::Serialize;

pub const TOOL_NAME: &str = "twistmat";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    /// Echo of the resolved configuration the run used.
    pub config: serde_json::Value,
    /// The algebraic identities this run exercised, as plain formula text.
    pub identities: Vec<String>,
    pub result: T,
}

impl<T: Serialize> ReportEnvelope<T> {
    pub fn new(seed: u64, config: serde_json::Value, identities: Vec<String>, result: T) -> Self {
        ReportEnvelope {
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            seed,
            config,
            identities,
            result,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Minimal CSV quoting: wrap fields containing separators or quotes.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_line(fields: &[String]) -> String {
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
}
