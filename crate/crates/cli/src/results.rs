//! The versioned `results.json` document written by `benchmark`.

use serde::{Deserialize, Serialize};

use maxcut_core::eval::{approx_ratio, BenchmarkReport, InstanceRecord, ProtocolConfig, Solver, SolverSummary};

pub const SCHEMA_VERSION: &str = "maxcut-results/1";

/// JSON Schema (draft 2020-12) for the document.
pub const RESULTS_SCHEMA: &str = include_str!("../schema/results.schema.json");

/// Keys whose values vary between otherwise identical runs.
pub const VOLATILE_KEYS: [&str; 2] = ["timestamp", "wall_clock_seconds"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunMetadata {
    pub base_seed: u64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub tool_version: String,
    pub protocol: ProtocolConfig,
    pub solvers: Vec<Solver>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultsDocument {
    pub schema_version: String,
    pub metadata: RunMetadata,
    pub records: Vec<InstanceRecord>,
    pub summaries: Vec<SolverSummary>,
}

impl ResultsDocument {
    pub fn new(report: BenchmarkReport, protocol: ProtocolConfig, solvers: Vec<Solver>, timestamp: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            metadata: RunMetadata {
                base_seed: protocol.base_seed,
                timestamp,
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                protocol,
                solvers,
            },
            records: report.records,
            summaries: report.summaries,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let doc: ResultsDocument = serde_json::from_str(text).map_err(|e| format!("invalid results document: {e}"))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("results serialize");
        s.push('\n');
        s
    }

    /// Checks the schema version and that every ratio follows from its record.
    pub fn validate(&self) -> Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema_version '{}' (expected '{SCHEMA_VERSION}')",
                self.schema_version
            ));
        }
        for r in &self.records {
            let expected = approx_ratio(r.best_value, r.best_known);
            let consistent = match (expected, r.ratio) {
                (None, None) => true,
                (Some(a), Some(b)) => (a - b).abs() <= 1e-12,
                _ => false,
            };
            if !consistent {
                return Err(format!("record {} / {}: ratio does not match best_value / best_known", r.instance, r.solver));
            }
        }
        Ok(())
    }
}

/// Drops every [`VOLATILE_KEYS`] entry, recursively.
pub fn strip_volatile(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            for key in VOLATILE_KEYS {
                map.remove(key);
            }
            map.values_mut().for_each(strip_volatile);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_volatile),
        _ => {}
    }
}
