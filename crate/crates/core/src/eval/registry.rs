use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where a best-known value came from. Higher variants take precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    BestFound,
    BruteForce,
    External,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::BestFound => "BEST_FOUND",
            Provenance::BruteForce => "BRUTE_FORCE",
            Provenance::External => "EXTERNAL",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "BEST_FOUND" => Ok(Provenance::BestFound),
            "BRUTE_FORCE" => Ok(Provenance::BruteForce),
            "EXTERNAL" => Ok(Provenance::External),
            _ => Err(Error::InvalidInput(format!("unknown provenance '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub value: i64,
    pub provenance: Provenance,
}

/// Best-known cut values keyed by instance name.
///
/// When `best_found_fallback` is set, instances without an entry are
/// normalized by the best value any benchmarked solver reached on them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BestKnownRegistry {
    entries: BTreeMap<String, RegistryEntry>,
    pub best_found_fallback: bool,
}

impl BestKnownRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Empty registry that falls back to best-found normalization.
    pub fn best_found() -> Self {
        Self {
            entries: BTreeMap::new(),
            best_found_fallback: true,
        }
    }

    pub fn get(&self, name: &str) -> Option<RegistryEntry> {
        self.entries.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, RegistryEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Records a value. Higher provenance replaces lower; equal provenance
    /// keeps the larger value; lower provenance is ignored.
    pub fn record(&mut self, name: impl Into<String>, value: i64, provenance: Provenance) {
        let incoming = RegistryEntry { value, provenance };
        self.entries
            .entry(name.into())
            .and_modify(|e| {
                if provenance > e.provenance || (provenance == e.provenance && value > e.value) {
                    *e = incoming;
                }
            })
            .or_insert(incoming);
    }

    pub fn merge(&mut self, other: &BestKnownRegistry) {
        for (name, e) in other.iter() {
            self.record(name, e.value, e.provenance);
        }
        self.best_found_fallback |= other.best_found_fallback;
    }

    /// `name <TAB> value <TAB> provenance` per line, sorted by name.
    pub fn to_tsv(&self) -> String {
        self.entries
            .iter()
            .map(|(name, e)| format!("{name}\t{}\t{}\n", e.value, e.provenance))
            .collect()
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut reg = BestKnownRegistry::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [name, value, provenance] = fields[..] else {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected 3 tab-separated fields, got {}", fields.len()),
                });
            };
            let value = value.trim().parse::<i64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad value '{value}'"),
            })?;
            let provenance = provenance.trim().parse::<Provenance>().map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            reg.record(name, value, provenance);
        }
        Ok(reg)
    }
}
