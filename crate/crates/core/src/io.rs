//! Gset instance text and SoftTabu policy checkpoints.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::DistributionSpec;
use crate::graph::Graph;
use crate::softtabu::{LinearPolicy, TrainConfig};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses Gset text: a `n m` header followed by `m` lines of 1-indexed
/// `u v w` with integer weights. Blank lines are ignored.
pub fn parse_gset(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = fields[..] else {
        return Err(parse_err(header_line, "header must be 'n m'"));
    };
    let n: usize = n.parse().map_err(|_| parse_err(header_line, format!("bad vertex count '{n}'")))?;
    let m: usize = m.parse().map_err(|_| parse_err(header_line, format!("bad edge count '{m}'")))?;

    let mut seen = BTreeSet::new();
    let mut edges = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [u, v, w] = fields[..] else {
            return Err(parse_err(line_no, format!("expected 'u v w', got '{line}'")));
        };
        let endpoint = |t: &str| -> Result<usize> {
            let x: usize = t.parse().map_err(|_| parse_err(line_no, format!("bad vertex '{t}'")))?;
            if x == 0 || x > n {
                return Err(parse_err(line_no, format!("vertex {x} outside 1..={n}")));
            }
            Ok(x - 1)
        };
        let (u, v) = (endpoint(u)?, endpoint(v)?);
        let w: i64 = w
            .parse()
            .map_err(|_| parse_err(line_no, format!("weight '{w}' is not an integer")))?;
        if u == v {
            return Err(parse_err(line_no, format!("self-loop on vertex {}", u + 1)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(line_no, format!("duplicate edge {} {}", u + 1, v + 1)));
        }
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(Error::Structure(format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges)
}

/// Canonical Gset text: header, then edges sorted by `(u, v)`, 1-indexed.
pub fn serialize_gset(graph: &Graph) -> String {
    let mut out = String::with_capacity(16 * (graph.edge_count() + 1));
    let _ = writeln!(out, "{} {}", graph.n(), graph.edge_count());
    for e in graph.edges() {
        let _ = writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.w);
    }
    out
}

/// One line of `'0'`/`'1'` characters, `'1'` meaning the vertex is in S.
pub fn format_assignment(side: &[bool]) -> String {
    side.iter().map(|&s| if s { '1' } else { '0' }).collect()
}

pub fn parse_assignment(text: &str) -> Result<Vec<bool>> {
    text.trim()
        .chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(parse_err(1, format!("column {}: expected 0 or 1, got '{other}'", i + 1))),
        })
        .collect()
}

pub const POLICY_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureNormalization {
    /// Gain feature divisor: `max(1, max |gain|)` over the episode's initial state.
    pub gain: String,
    /// Time feature horizon as a multiple of n.
    pub time_horizon_steps_factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainMetadata {
    pub distribution: DistributionSpec,
    pub config: TrainConfig,
    pub validation_ratio: f64,
    pub env_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyCheckpoint {
    pub version: u32,
    pub weights: [f64; 2],
    pub bias: f64,
    pub normalization: FeatureNormalization,
    pub train: Option<TrainMetadata>,
}

impl PolicyCheckpoint {
    pub fn new(policy: LinearPolicy, steps_factor: f64, train: Option<TrainMetadata>) -> Self {
        Self {
            version: POLICY_VERSION,
            weights: policy.weights,
            bias: policy.bias,
            normalization: FeatureNormalization {
                gain: "initial_max_abs_gain".into(),
                time_horizon_steps_factor: steps_factor,
            },
            train,
        }
    }

    pub fn policy(&self) -> LinearPolicy {
        LinearPolicy::new(self.weights, self.bias)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cp: PolicyCheckpoint = serde_json::from_str(text)?;
        if cp.version != POLICY_VERSION {
            return Err(Error::InvalidInput(format!(
                "policy version {} is not supported (expected {POLICY_VERSION})",
                cp.version
            )));
        }
        if !cp.policy().is_finite() {
            return Err(Error::InvalidInput("policy parameters are not finite".into()));
        }
        Ok(cp)
    }
}
