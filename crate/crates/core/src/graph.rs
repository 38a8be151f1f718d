//! Immutable weighted undirected graphs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub type Vertex = usize;

/// An undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub w: i64,
}

/// Weighted undirected graph with integer weights.
///
/// Edges are kept sorted by `(u, v)` and mirrored into per-vertex adjacency
/// lists. Zero-weight edges are dropped when the graph is built, so every
/// stored edge carries a non-zero weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(Vertex, i64)>>,
    name: String,
}

impl Graph {
    /// Builds a graph from `(u, v, w)` triples in any orientation.
    ///
    /// Self-loops, out-of-range endpoints and repeated pairs are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, i64)>,
    {
        let mut seen: BTreeMap<(Vertex, Vertex), i64> = BTreeMap::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return Err(invalid(format!("edge ({a}, {b}) out of range for n = {n}")));
            }
            if a == b {
                return Err(invalid(format!("self-loop on vertex {a}")));
            }
            let key = (a.min(b), a.max(b));
            if seen.insert(key, w).is_some() {
                return Err(invalid(format!("duplicate edge ({}, {})", key.0, key.1)));
            }
        }

        let edges: Vec<Edge> = seen
            .into_iter()
            .filter(|&(_, w)| w != 0)
            .map(|((u, v), w)| Edge { u, v, w })
            .collect();

        let mut adjacency = vec![Vec::new(); n];
        for e in &edges {
            adjacency[e.u].push((e.v, e.w));
            adjacency[e.v].push((e.u, e.w));
        }

        Ok(Self {
            n,
            edges,
            adjacency,
            name: String::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, i64)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<i64> {
        self.adjacency
            .get(u)?
            .iter()
            .find_map(|&(x, w)| (x == v).then_some(w))
    }
}
