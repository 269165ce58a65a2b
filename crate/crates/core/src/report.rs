//! Self-describing JSON report envelope.
//!
//! The header carries everything that identifies a run, including the only
//! time-dependent field. The body depends on the configuration alone, so two
//! runs that differ only in worker count produce identical bodies.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = "rngfx";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    /// Report kind, e.g. `census` or `audit.tail`.
    pub kind: String,
    pub config: serde_json::Value,
    /// Seconds since the Unix epoch.
    pub generated_at: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub header: Header,
    pub body: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(kind: &str, config: impl Serialize, body: T) -> Self {
        let generated_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            header: Header {
                schema_version: SCHEMA_VERSION,
                tool: TOOL.to_string(),
                version: VERSION.to_string(),
                kind: kind.to_string(),
                config: serde_json::to_value(config).expect("config serializes"),
                generated_at,
            },
            body,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The body alone, for reproducibility comparisons.
    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_shape() {
        let r = Report::new(
            "census",
            serde_json::json!({"map": "identity"}),
            vec![1u64, 2],
        );
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["header"]["schema_version"], 1);
        assert_eq!(v["header"]["tool"], "rngfx");
        assert_eq!(v["header"]["config"]["map"], "identity");
        assert_eq!(v["body"], serde_json::json!([1, 2]));
        // counts beyond 2^53 stay exact
        let big = Report::new("x", (), 4_294_967_296u64 * 4_000_000);
        assert!(big.to_json().contains("17179869184000000"));
    }
}
